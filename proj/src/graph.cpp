#include "cumapf/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cumapf {

bool Graph::has_edge(Vertex u, Vertex v) const {
  const auto& a = adj[u];
  return std::binary_search(a.begin(), a.end(), v);
}

std::size_t Graph::edge_count() const {
  std::size_t deg_sum = 0;
  for (const auto& a : adj) deg_sum += a.size();
  return deg_sum / 2;
}

namespace {

void check_connected(const Graph& g) {
  if (g.vertex_count == 0) throw std::invalid_argument("graph has no vertices");
  std::vector<char> seen(g.vertex_count, 0);
  std::vector<Vertex> queue{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (Vertex w : g.adj[queue[head]]) {
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  if (queue.size() != static_cast<std::size_t>(g.vertex_count))
    throw std::invalid_argument("graph is not connected");
}

}  // namespace

Graph make_graph(int vertex_count, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  Graph g;
  g.vertex_count = vertex_count;
  g.adj.assign(vertex_count, {});
  for (auto [u, v] : edges) {
    if (u < 0 || u >= vertex_count || v < 0 || v >= vertex_count)
      throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop");
    g.adj[u].push_back(v);
    g.adj[v].push_back(u);
  }
  for (auto& a : g.adj) {
    std::sort(a.begin(), a.end());
    if (std::adjacent_find(a.begin(), a.end()) != a.end())
      throw std::invalid_argument("duplicate edge");
  }
  check_connected(g);
  return g;
}

Graph make_open_grid(int height, int width) {
  std::string text = "type octile\nheight " + std::to_string(height) + "\nwidth " +
                     std::to_string(width) + "\nmap\n";
  for (int r = 0; r < height; ++r) text += std::string(width, '.') + "\n";
  return parse_map(text);
}

std::string load_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Graph parse_map(const std::string& text) {
  std::istringstream in(text);
  std::string line, key;
  int height = -1, width = -1;

  // header: "type octile", "height H", "width W", "map"
  if (!std::getline(in, line) || line.rfind("type", 0) != 0)
    throw std::runtime_error("map header: missing 'type' line");
  for (int i = 0; i < 2; ++i) {
    if (!std::getline(in, line)) throw std::runtime_error("map header: truncated");
    std::istringstream ls(line);
    int value = -1;
    ls >> key >> value;
    if (key == "height")
      height = value;
    else if (key == "width")
      width = value;
    else
      throw std::runtime_error("map header: unexpected line '" + line + "'");
  }
  if (height <= 0 || width <= 0) throw std::runtime_error("map header: bad dimensions");
  if (!std::getline(in, line) || line.rfind("map", 0) != 0)
    throw std::runtime_error("map header: missing 'map' line");

  std::vector<uint8_t> passable(static_cast<std::size_t>(height) * width, 0);
  for (int r = 0; r < height; ++r) {
    if (!std::getline(in, line)) throw std::runtime_error("map body: missing rows");
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (static_cast<int>(line.size()) != width)
      throw std::runtime_error("map body: row " + std::to_string(r) + " has length " +
                               std::to_string(line.size()) + ", expected " +
                               std::to_string(width));
    for (int c = 0; c < width; ++c)
      passable[r * width + c] = (line[c] == '.' || line[c] == 'G') ? 1 : 0;
  }

  // label passable components (4-connected), keep the largest
  const int cells = height * width;
  std::vector<int> comp(cells, -1);
  int comp_count = 0;
  std::vector<int> comp_size;
  std::vector<int> queue;
  for (int start = 0; start < cells; ++start) {
    if (!passable[start] || comp[start] >= 0) continue;
    comp[start] = comp_count;
    queue.assign(1, start);
    int size = 0;
    while (!queue.empty()) {
      int cell = queue.back();
      queue.pop_back();
      ++size;
      int r = cell / width, c = cell % width;
      const int drc[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
      for (auto [dr, dc] : drc) {
        int nr = r + dr, nc = c + dc;
        if (nr < 0 || nr >= height || nc < 0 || nc >= width) continue;
        int ncell = nr * width + nc;
        if (passable[ncell] && comp[ncell] < 0) {
          comp[ncell] = comp_count;
          queue.push_back(ncell);
        }
      }
    }
    comp_size.push_back(size);
    ++comp_count;
  }
  if (comp_count == 0) throw std::runtime_error("map has no passable cells");
  int keep = 0;
  for (int i = 1; i < comp_count; ++i)
    if (comp_size[i] > comp_size[keep]) keep = i;

  Graph g;
  GridMeta meta;
  meta.height = height;
  meta.width = width;
  meta.passable.assign(cells, 0);
  meta.vertex_of_cell.assign(cells, -1);
  meta.dropped_cells = comp_count > 1;
  for (int cell = 0; cell < cells; ++cell) {
    if (passable[cell] && comp[cell] == keep) {
      meta.passable[cell] = 1;
      meta.vertex_of_cell[cell] = static_cast<Vertex>(meta.cell_of_vertex.size());
      meta.cell_of_vertex.push_back(cell);
    }
  }
  g.vertex_count = static_cast<int>(meta.cell_of_vertex.size());
  g.adj.assign(g.vertex_count, {});
  for (Vertex v = 0; v < g.vertex_count; ++v) {
    int cell = meta.cell_of_vertex[v];
    int r = cell / width, c = cell % width;
    // ascending id order on a row-major grid: up, left, right, down
    const int drc[4][2] = {{-1, 0}, {0, -1}, {0, 1}, {1, 0}};
    for (auto [dr, dc] : drc) {
      int nr = r + dr, nc = c + dc;
      if (nr < 0 || nr >= height || nc < 0 || nc >= width) continue;
      Vertex w = meta.vertex_of_cell[nr * width + nc];
      if (w >= 0) g.adj[v].push_back(w);
    }
  }
  g.grid = std::move(meta);
  return g;
}

std::string serialize_map(const Graph& g) {
  if (!g.grid) throw std::invalid_argument("graph has no grid metadata");
  const GridMeta& m = *g.grid;
  std::string out = "type octile\nheight " + std::to_string(m.height) + "\nwidth " +
                    std::to_string(m.width) + "\nmap\n";
  for (int r = 0; r < m.height; ++r) {
    for (int c = 0; c < m.width; ++c) out += m.passable[r * m.width + c] ? '.' : '@';
    out += '\n';
  }
  return out;
}

DistanceField multi_source_distance(const Graph& g, std::span<const Vertex> sources) {
  if (sources.empty()) throw std::invalid_argument("multi_source_distance: empty sources");
  DistanceField f;
  f.sources.assign(sources.begin(), sources.end());
  std::sort(f.sources.begin(), f.sources.end());
  f.dist.assign(g.vertex_count, -1);
  std::vector<Vertex> queue;
  queue.reserve(g.vertex_count);
  for (Vertex s : f.sources) {
    if (f.dist[s] != 0) {
      f.dist[s] = 0;
      queue.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex v = queue[head];
    for (Vertex w : g.adj[v]) {
      if (f.dist[w] < 0) {
        f.dist[w] = f.dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return f;
}

Vertex BfsTree::parent_of(Vertex v) const {
  auto it = std::lower_bound(parent.begin(), parent.end(), std::make_pair(v, -1));
  if (it != parent.end() && it->first == v) return it->second;
  return -1;
}

bool BfsTree::is_reached(Vertex v) const {
  if (v == root) return true;
  return parent_of(v) != -1;
}

int BfsTree::depth_of(Vertex v) const {
  if (!is_reached(v)) return -1;
  int d = 0;
  while (v != root) {
    v = parent_of(v);
    ++d;
  }
  return d;
}

namespace detail {

void bfs_tree_run(const Graph& g, std::span<const Vertex> domain, Vertex root,
                  GraphScratch& s, BfsTree& out) {
  s.domain.reset(g.vertex_count);
  for (Vertex v : domain) s.domain.insert(v);
  if (!s.domain.contains(root)) throw std::invalid_argument("bfs_tree: root not in domain");

  out.root = root;
  out.reached.clear();
  out.parent.clear();
  s.visited.reset(g.vertex_count);
  s.visited.insert(root);
  out.reached.push_back(root);
  for (std::size_t head = 0; head < out.reached.size(); ++head) {
    Vertex v = out.reached[head];
    for (Vertex w : g.adj[v]) {
      if (s.domain.contains(w) && !s.visited.contains(w)) {
        s.visited.insert(w);
        out.reached.push_back(w);
        out.parent.emplace_back(w, v);
      }
    }
  }
  std::sort(out.parent.begin(), out.parent.end());
}

void articulation_run(const Graph& g, std::span<const Vertex> domain, GraphScratch& s,
                      std::vector<Vertex>& out) {
  out.clear();
  s.domain.reset(g.vertex_count);
  for (Vertex v : domain) s.domain.insert(v);
  s.disc.reset(g.vertex_count);
  s.low.reset(g.vertex_count);

  int timer = 0;
  for (Vertex start : domain) {
    if (s.disc.has(start)) continue;
    // iterative lowlink DFS rooted at start
    s.dfs_stack.clear();
    s.disc.set(start, timer);
    s.low.set(start, timer);
    ++timer;
    s.dfs_stack.emplace_back(start, 0);
    s.parent.reset(g.vertex_count);  // DFS parent within this root's tree
    int root_children = 0;
    bool start_cut = false;
    while (!s.dfs_stack.empty()) {
      auto& [v, child_idx] = s.dfs_stack.back();
      const auto& nbrs = g.adj[v];
      if (child_idx < static_cast<int>(nbrs.size())) {
        Vertex w = nbrs[child_idx++];
        if (!s.domain.contains(w)) continue;
        if (!s.disc.has(w)) {
          s.parent.set(w, v);
          s.disc.set(w, timer);
          s.low.set(w, timer);
          ++timer;
          s.dfs_stack.emplace_back(w, 0);
        } else if (!s.parent.has(v) || s.parent.get(v) != w) {
          s.low.set(v, std::min(s.low.get(v), s.disc.get(w)));
        }
      } else {
        s.dfs_stack.pop_back();
        if (s.dfs_stack.empty()) break;
        Vertex p = s.dfs_stack.back().first;
        s.low.set(p, std::min(s.low.get(p), s.low.get(v)));
        if (p == start) {
          ++root_children;
          if (root_children >= 2) start_cut = true;
        } else if (s.low.get(v) >= s.disc.get(p)) {
          out.push_back(p);
        }
      }
    }
    if (start_cut) out.push_back(start);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

}  // namespace detail

BfsTree bfs_tree(const Graph& g, std::span<const Vertex> domain, Vertex root) {
  detail::GraphScratch s;
  BfsTree out;
  detail::bfs_tree_run(g, domain, root, s, out);
  return out;
}

std::vector<Vertex> articulation_points(const Graph& g, std::span<const Vertex> domain) {
  detail::GraphScratch s;
  std::vector<Vertex> out;
  detail::articulation_run(g, domain, s, out);
  return out;
}

std::vector<std::vector<Vertex>> components_of(const Graph& g,
                                               std::span<const Vertex> domain) {
  detail::GraphScratch s;
  s.domain.reset(g.vertex_count);
  s.visited.reset(g.vertex_count);
  for (Vertex v : domain) s.domain.insert(v);

  std::vector<Vertex> sorted(domain.begin(), domain.end());
  std::sort(sorted.begin(), sorted.end());

  std::vector<std::vector<Vertex>> parts;
  std::vector<Vertex> queue;
  for (Vertex start : sorted) {
    if (s.visited.contains(start)) continue;
    s.visited.insert(start);
    queue.assign(1, start);
    std::vector<Vertex> part;
    while (!queue.empty()) {
      Vertex v = queue.back();
      queue.pop_back();
      part.push_back(v);
      for (Vertex w : g.adj[v]) {
        if (s.domain.contains(w) && !s.visited.contains(w)) {
          s.visited.insert(w);
          queue.push_back(w);
        }
      }
    }
    std::sort(part.begin(), part.end());
    parts.push_back(std::move(part));
  }
  std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  return parts;
}

PairDistance min_pair_distance(const Graph& g, std::span<const Vertex> S,
                               std::span<const Vertex> T) {
  if (S.empty() || T.empty())
    throw std::invalid_argument("min_pair_distance: empty vertex set");
  DistanceField to_T = multi_source_distance(g, T);
  PairDistance best;
  best.distance = -1;
  for (Vertex s : S) {
    int d = to_T.dist[s];
    if (best.distance < 0 || d < best.distance ||
        (d == best.distance && s < best.from)) {
      best.distance = d;
      best.from = s;
    }
  }
  DistanceField from_x = multi_source_distance(g, std::span<const Vertex>(&best.from, 1));
  for (Vertex t : T) {
    if (from_x.dist[t] == best.distance && (best.to < 0 || t < best.to)) best.to = t;
  }
  return best;
}

}  // namespace cumapf
