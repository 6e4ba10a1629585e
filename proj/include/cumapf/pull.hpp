#pragma once

#include <memory>
#include <span>
#include <vector>

#include "cumapf/core.hpp"
#include "cumapf/graph.hpp"

namespace cumapf {

// optional per-vertex override of the chain-start selection key; the search
// layer pins vertices that must be vacated to `sentinel` (strictly above any
// hop distance), everything else falls back to distance-to-target
struct PriorityField {
  std::vector<Vertex> forced_sorted;
  int sentinel = 0;

  int value(Vertex v, const DistanceField& dist_to_T) const;
};

namespace detail {
struct PullScratch;
}

// goal components of G[Q ∩ T], largest first
struct GoalComponents {
  std::vector<std::vector<Vertex>> parts;
  int p_max() const { return parts.empty() ? 0 : static_cast<int>(parts[0].size()); }
};

GoalComponents goal_components(const Graph& g, const Configuration& q,
                               std::span<const Vertex> targets_sorted);

// working data of one one-step sweep; chains commit into q_cur
struct StepState {
  const Graph* graph = nullptr;
  const DistanceField* dist_to_T = nullptr;
  std::vector<Vertex> targets;  // sorted
  Configuration q_from;
  Configuration q_cur;
  std::vector<char> reserved;  // per agent; reserved agents are final for this step
  BfsTree last_tree;           // F and next(.,.) of the most recent chain call
  std::vector<Vertex> cut_set;     // B of the most recent call
  std::vector<Vertex> candidates;  // V_S of the most recent call
  Vertex chain_start = -1;         // selected start of the most recent call, -1 if failed
  const PriorityField* pri = nullptr;

  std::shared_ptr<detail::PullScratch> scratch;
};

StepState make_step_state(const Graph& g, const DistanceField& dist_to_T,
                          const Configuration& q_from, std::vector<Vertex> targets);

// one chain call toward the unoccupied vertex t, never starting inside `avoid`.
// Returns false (state untouched apart from the inspection fields) when no
// start vertex is available.
bool pull_chain(StepState& state, Vertex t, std::span<const Vertex> avoid);

// one-step configuration generators; both require a connected q_from
Configuration pull_step(const Graph& g, const DistanceField& dist_to_T,
                        const Configuration& q_from, std::span<const Vertex> targets);
Configuration single_step(const Graph& g, const DistanceField& dist_to_T,
                          const Configuration& q_from, std::span<const Vertex> targets);

enum class StepAlgo { pull, single };

// iterates the chosen step function from S until the configuration equals T as
// a set. The step budget min_pair_distance(S,T) + n can only be exceeded by an
// implementation bug, hence the throw.
Plan plan(const Instance& instance, StepAlgo algo,
          const DistanceField* dist_to_T = nullptr);

namespace detail {

struct ChainMove {
  int agent;
  Vertex from;
  Vertex to;
};

// shared buffers of the one-step sweep; occupancy is maintained as counts so
// the constrained variant can pass through transient double occupations
struct PullScratch {
  GraphScratch gs;
  std::vector<int> occ_count;   // per vertex
  std::vector<int> unres_at;    // per vertex: unreserved agent sitting there, -1 if none
  StampSet in_T;
  StampSet seen;
  StampSet excluded;
  std::vector<Vertex> domain_buf;
  std::vector<Vertex> occupied_buf;
  std::vector<Vertex> nbr_buf;
  std::vector<std::vector<Vertex>> buckets;
  std::vector<ChainMove> moves;  // of the most recent chain call
  BfsTree tree;

  void ensure(int vertex_count);
};

struct SweepIO {
  const Graph* g = nullptr;
  const DistanceField* dist = nullptr;
  std::span<const Vertex> targets_sorted;
  const std::vector<Vertex>* from_pos = nullptr;
  std::vector<Vertex>* pos = nullptr;
  std::vector<char>* reserved = nullptr;
  PullScratch* scratch = nullptr;
  const PriorityField* pri = nullptr;
  bool stop_after_first_success = false;

  // optional inspection hooks (may be null)
  BfsTree* last_tree = nullptr;
  std::vector<Vertex>* cut_set = nullptr;
  std::vector<Vertex>* candidates = nullptr;
  Vertex* chain_start = nullptr;
};

// scratch occupancy (occ_count/unres_at) must reflect *pos before the call and
// is kept up to date by it
bool chain_call(SweepIO& io, Vertex t, std::span<const Vertex> avoid);
void run_sweep(SweepIO& io);

void init_occupancy(PullScratch& s, const std::vector<Vertex>& pos,
                    const std::vector<char>& reserved, int vertex_count);
void clear_occupancy(PullScratch& s, const std::vector<Vertex>& from_pos,
                     const std::vector<Vertex>& pos);

}  // namespace detail

}  // namespace cumapf
