#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cumapf/graph.hpp"

namespace cumapf {

// ordered assignment of agents to vertices (index = agent id)
struct Configuration {
  std::vector<Vertex> positions;
  std::vector<int> agent_at;  // vertex -> agent, -1 if free; first agent wins on
                              // duplicates (the validator reports those)
  bool has_duplicate = false;

  Configuration() = default;
  Configuration(std::vector<Vertex> pos, int vertex_count);

  int size() const { return static_cast<int>(positions.size()); }
  bool occupied(Vertex v) const { return agent_at[v] >= 0; }
  bool set_equals(std::span<const Vertex> sorted_vertices) const;
  std::vector<Vertex> sorted_vertices() const;
};

struct Instance {
  std::shared_ptr<const Graph> graph;
  std::vector<Vertex> starts;   // sorted, duplicate-free, induces a connected subgraph
  std::vector<Vertex> targets;  // same
  int n = 0;
  std::string map_ref;       // source map path, empty for inline graphs
  std::uint64_t seed = 0;    // provenance of generated instances

  const Graph& g() const { return *graph; }
  Configuration start_config() const;  // agent i on the i-th smallest start vertex
};

// validates the instance invariants (sizes, duplicates, connectivity of G[S], G[T])
Instance make_instance(std::shared_ptr<const Graph> graph, std::vector<Vertex> starts,
                       std::vector<Vertex> targets);

struct Plan {
  std::vector<Configuration> steps;
  int makespan() const { return static_cast<int>(steps.size()) - 1; }
};

struct Violation {
  int step = 0;       // index of the configuration (for moves: the arriving one)
  int condition = 0;  // 1..5
  std::vector<int> agents;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

bool is_connected_config(const Graph& g, const Configuration& config);

// conditions 2 (reachability), 3 (vertex conflict, on `next`) and 4 (swap)
ValidationReport validate_transition(const Graph& g, const Configuration& prev,
                                     const Configuration& next);

// all five conditions over the whole plan; collects every violation
ValidationReport validate_plan(const Instance& instance, const Plan& plan);

}  // namespace cumapf
