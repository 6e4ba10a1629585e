#include "cumapf/lowerbound.hpp"

#include <algorithm>
#include <stdexcept>

namespace cumapf {

BipartiteDistanceTable distance_table(const Graph& g, std::span<const Vertex> S,
                                      std::span<const Vertex> T) {
  if (S.size() != T.size())
    throw std::invalid_argument("distance_table: |S| != |T|");
  BipartiteDistanceTable table;
  table.rows.assign(S.begin(), S.end());
  table.cols.assign(T.begin(), T.end());
  const std::size_t n = S.size();
  table.d.assign(n, std::vector<int>(n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    DistanceField f = multi_source_distance(g, std::span<const Vertex>(&table.cols[j], 1));
    for (std::size_t i = 0; i < n; ++i) table.d[i][j] = f.dist[table.rows[i]];
  }
  return table;
}

namespace {

// one augmenting-path pass of Kuhn's algorithm on the thresholded table
bool try_augment(const BipartiteDistanceTable& t, int threshold, int row,
                 std::vector<char>& visited, std::vector<int>& match_col) {
  const int n = static_cast<int>(t.rows.size());
  for (int j = 0; j < n; ++j) {
    if (t.d[row][j] > threshold || visited[j]) continue;
    visited[j] = 1;
    if (match_col[j] < 0 || try_augment(t, threshold, match_col[j], visited, match_col)) {
      match_col[j] = row;
      return true;
    }
  }
  return false;
}

bool feasible(const BipartiteDistanceTable& t, int threshold) {
  const int n = static_cast<int>(t.rows.size());
  std::vector<int> match_col(n, -1);
  std::vector<char> visited(n, 0);
  for (int i = 0; i < n; ++i) {
    std::fill(visited.begin(), visited.end(), 0);
    if (!try_augment(t, threshold, i, visited, match_col)) return false;
  }
  return true;
}

}  // namespace

int bottleneck_lb(const BipartiteDistanceTable& table) {
  if (table.rows.size() != table.cols.size())
    throw std::invalid_argument("bottleneck_lb: table is not square");
  if (table.rows.empty()) return 0;
  std::vector<int> values;
  values.reserve(table.rows.size() * table.cols.size());
  for (const auto& row : table.d) values.insert(values.end(), row.begin(), row.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  // smallest threshold admitting a perfect matching; the max entry always does
  std::size_t lo = 0, hi = values.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (feasible(table, values[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return values[lo];
}

int bottleneck_lb(const Graph& g, std::span<const Vertex> S, std::span<const Vertex> T) {
  return bottleneck_lb(distance_table(g, S, T));
}

}  // namespace cumapf
