#pragma once

#include <span>
#include <vector>

#include "cumapf/graph.hpp"

namespace cumapf {

// pairwise hop distances between two equally sized vertex sets
struct BipartiteDistanceTable {
  std::vector<Vertex> rows;  // S
  std::vector<Vertex> cols;  // T
  std::vector<std::vector<int>> d;  // d[i][j] = dist(rows[i], cols[j])
};

BipartiteDistanceTable distance_table(const Graph& g, std::span<const Vertex> S,
                                      std::span<const Vertex> T);

// min over perfect matchings of the max matched distance. Binary search over
// the distinct distance values, feasibility by augmenting-path matching.
int bottleneck_lb(const BipartiteDistanceTable& table);
int bottleneck_lb(const Graph& g, std::span<const Vertex> S, std::span<const Vertex> T);

}  // namespace cumapf
