#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cumapf {

using Vertex = int;

// grid info kept alongside graphs parsed from .map files
struct GridMeta {
  int height = 0;
  int width = 0;
  std::vector<uint8_t> passable;     // height*width mask of cells kept as vertices
  std::vector<int> cell_of_vertex;   // vertex -> row*width+col
  std::vector<Vertex> vertex_of_cell;  // row*width+col -> vertex, -1 if blocked/dropped
  bool dropped_cells = false;  // true if the map file had passable pockets outside
                               // the largest component (they were discarded)

  int row_of(Vertex v) const { return cell_of_vertex[v] / width; }
  int col_of(Vertex v) const { return cell_of_vertex[v] % width; }
  Vertex at(int row, int col) const { return vertex_of_cell[row * width + col]; }
};

// simple undirected connected graph; adjacency lists sorted ascending
struct Graph {
  int vertex_count = 0;
  std::vector<std::vector<Vertex>> adj;
  std::optional<GridMeta> grid;

  const std::vector<Vertex>& neighbors(Vertex v) const { return adj[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj[v].size()); }
  bool has_edge(Vertex u, Vertex v) const;
  std::size_t edge_count() const;
};

// builds from an edge list; checks simplicity and connectivity
Graph make_graph(int vertex_count, const std::vector<std::pair<Vertex, Vertex>>& edges);

// 4-connected open grid helper (used by generators and tests)
Graph make_open_grid(int height, int width);

// MovingAI .map text ('.' and 'G' passable). Keeps the largest passable
// component if the passable region is disconnected and flags it in grid meta.
Graph parse_map(const std::string& text);
std::string load_text_file(const std::string& path);

// re-emits the passable mask of a grid graph as .map text
std::string serialize_map(const Graph& g);

// hop distances from the nearest source vertex, over the whole graph
struct DistanceField {
  std::vector<Vertex> sources;
  std::vector<int> dist;  // per vertex; -1 would mean unreachable (cannot happen
                          // on a connected graph with nonempty sources)
  int at(Vertex v) const { return dist[v]; }
};

DistanceField multi_source_distance(const Graph& g, std::span<const Vertex> sources);

// BFS tree of an induced subgraph. Neighbor expansion is ascending by vertex
// id, so parents (and everything built on them) are reproducible.
struct BfsTree {
  Vertex root = -1;
  std::vector<Vertex> reached;                   // visit order, root first
  std::vector<std::pair<Vertex, Vertex>> parent;  // (v, parent of v), sorted by v

  Vertex parent_of(Vertex v) const;  // -1 if v is the root or not reached
  bool is_reached(Vertex v) const;
  int depth_of(Vertex v) const;  // hops to root, -1 if not reached
};

BfsTree bfs_tree(const Graph& g, std::span<const Vertex> domain, Vertex root);

// cut vertices of G[domain], ascending. Empty domain gives an empty set.
std::vector<Vertex> articulation_points(const Graph& g, std::span<const Vertex> domain);

// connected components of G[domain], largest first, ties by smallest member;
// members sorted ascending
std::vector<std::vector<Vertex>> components_of(const Graph& g, std::span<const Vertex> domain);

struct PairDistance {
  int distance = 0;
  Vertex from = -1;  // in S
  Vertex to = -1;    // in T
};

// min_{(s,t) in SxT} dist(s,t) with the lexicographically smallest witness
PairDistance min_pair_distance(const Graph& g, std::span<const Vertex> S,
                               std::span<const Vertex> T);

namespace detail {

// membership/value maps over vertices with O(1) reset, shared by the planner
// hot path so per-call cost stays independent of |V|
class StampSet {
 public:
  void reset(int n) {
    if (static_cast<int>(stamp_.size()) < n) stamp_.assign(n, 0);
    ++cur_;
  }
  void insert(int v) { stamp_[v] = cur_; }
  void erase(int v) { stamp_[v] = 0; }
  bool contains(int v) const { return stamp_[v] == cur_; }

 private:
  std::vector<uint64_t> stamp_;
  uint64_t cur_ = 0;
};

class StampMap {
 public:
  void reset(int n) {
    if (static_cast<int>(slot_.size()) < n) slot_.assign(n, {0, 0});
    ++cur_;
  }
  void set(int v, int x) { slot_[v] = {cur_, x}; }
  bool has(int v) const { return slot_[v].first == cur_; }
  int get(int v) const { return slot_[v].second; }
  int get_or(int v, int fallback) const { return has(v) ? slot_[v].second : fallback; }

 private:
  std::vector<std::pair<uint64_t, int>> slot_;
  uint64_t cur_ = 0;
};

struct GraphScratch {
  StampSet domain;
  StampSet visited;
  StampMap parent;
  StampMap disc;
  StampMap low;
  std::vector<Vertex> queue;
  std::vector<std::pair<Vertex, int>> dfs_stack;  // (vertex, next child index)
};

// workhorses behind the public wrappers; `domain` entries must be unique
void bfs_tree_run(const Graph& g, std::span<const Vertex> domain, Vertex root,
                  GraphScratch& s, BfsTree& out);
void articulation_run(const Graph& g, std::span<const Vertex> domain, GraphScratch& s,
                      std::vector<Vertex>& out);

}  // namespace detail

}  // namespace cumapf
