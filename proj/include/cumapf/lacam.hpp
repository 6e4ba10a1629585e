#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cumapf/core.hpp"
#include "cumapf/graph.hpp"
#include "cumapf/pull.hpp"

namespace cumapf {

// per-agent forced moves for one step; at most one entry per agent, each
// target inside the closed neighborhood of the agent's current vertex
struct ConstraintSet {
  std::vector<std::pair<int, Vertex>> entries;
};

// constraint-aware one-step generator. Constrained agents are placed first and
// reserved; the sweep then runs with chain starts picked by priority, where
// vertices that must be vacated outrank every distance. Returns nothing when
// the result is disconnected or keeps a vertex conflict.
std::optional<Configuration> constrained_step(const Graph& g,
                                              const DistanceField& dist_to_T,
                                              const Configuration& q_from,
                                              std::span<const Vertex> targets,
                                              const ConstraintSet& constraints);

enum class SearchStatus { optimal_proved, best_known, none };
std::string to_string(SearchStatus status);

struct RefineEvent {
  std::int64_t iteration = 0;
  double elapsed_ms = 0;
  int best_makespan = -1;
  SearchStatus status = SearchStatus::none;
};

struct SearchStats {
  std::int64_t iterations = 0;      // low-level expansions
  std::int64_t node_count = 0;      // distinct configurations
  std::int64_t generated = 0;       // successful generator calls
  double elapsed_ms = 0;
  std::vector<RefineEvent> refine_log;
};

struct SearchResult {
  Plan plan;  // empty when status == none
  int makespan = -1;
  SearchStatus status = SearchStatus::none;
  SearchStats stats;
};

// anytime DFS over configurations with lazily added per-agent constraints and
// cost rewiring; exhausting the space proves the reported plan optimal
SearchResult lacam_search(const Instance& instance, std::chrono::milliseconds budget,
                          std::uint64_t seed);

}  // namespace cumapf
