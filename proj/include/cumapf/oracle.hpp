#pragma once

#include <cstdint>
#include <span>

#include "cumapf/core.hpp"
#include "cumapf/graph.hpp"

namespace cumapf {

// true iff `to` is reachable from `from` in one step, set-wise: a perfect
// matching where every vertex maps to itself or a neighbor. Swaps do not
// constrain feasibility at the set level (a matched 2-cycle collapses to two
// identity moves over the same sets).
bool valid_set_transition(const Graph& g, std::span<const Vertex> from,
                          std::span<const Vertex> to);

struct OracleCaps {
  int max_agents = 4;
  int max_vertices = 25;
  std::int64_t max_states = 1000000;
};

struct OracleResult {
  int makespan = -1;
  Plan plan;  // swap-free agent-level witness
  std::int64_t states = 0;
};

// exact optimum by BFS over connected n-subsets keyed by sorted vertex tuple;
// agent labels are reconstructed afterwards by chaining the step matchings
OracleResult optimal_makespan(const Instance& instance, OracleCaps caps = {});

}  // namespace cumapf
