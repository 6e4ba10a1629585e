#include "cumapf/instances.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace cumapf {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_stream(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  return splitmix(base ^ splitmix(a ^ splitmix(b)));
}

std::vector<Vertex> random_connected_subset(const Graph& g, int n, Rng& rng) {
  if (n < 1 || n > g.vertex_count)
    throw std::invalid_argument("random_connected_subset: bad size");
  std::vector<char> in_set(g.vertex_count, 0), queued(g.vertex_count, 0);
  std::vector<Vertex> set, frontier;
  Vertex start = rng.bounded(g.vertex_count);
  in_set[start] = 1;
  set.push_back(start);
  for (Vertex w : g.adj[start]) {
    queued[w] = 1;
    frontier.push_back(w);
  }
  while (static_cast<int>(set.size()) < n) {
    if (frontier.empty())
      throw std::logic_error("random_connected_subset: frontier exhausted");
    int idx = rng.bounded(static_cast<int>(frontier.size()));
    Vertex v = frontier[idx];
    frontier[idx] = frontier.back();
    frontier.pop_back();
    in_set[v] = 1;
    set.push_back(v);
    for (Vertex w : g.adj[v]) {
      if (!in_set[w] && !queued[w]) {
        queued[w] = 1;
        frontier.push_back(w);
      }
    }
  }
  std::sort(set.begin(), set.end());
  return set;
}

Instance gen_random_instance(std::shared_ptr<const Graph> graph, int n,
                             std::uint64_t seed) {
  Rng rng_s(derive_stream(seed, 0));
  Rng rng_t(derive_stream(seed, 1));
  std::vector<Vertex> S = random_connected_subset(*graph, n, rng_s);
  std::vector<Vertex> T = random_connected_subset(*graph, n, rng_t);
  Instance inst = make_instance(std::move(graph), std::move(S), std::move(T));
  inst.seed = seed;
  return inst;
}

Instance gen_tight(int k, int l) {
  if (k < 1 || l < 1) throw std::invalid_argument("gen_tight: k and l must be >= 1");
  const int top = 0, stem = k, bottom = k + l;
  const int total = 2 * k + l;
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int i = 0; i + 1 < k; ++i) edges.emplace_back(top + i, top + i + 1);
  for (int i = 0; i < k; ++i) edges.emplace_back(top + i, stem);
  for (int j = 0; j + 1 < l; ++j) edges.emplace_back(stem + j, stem + j + 1);
  for (int i = 0; i < k; ++i) edges.emplace_back(stem + l - 1, bottom + i);
  for (int i = 0; i + 1 < k; ++i) edges.emplace_back(bottom + i, bottom + i + 1);
  auto g = std::make_shared<Graph>(make_graph(total, edges));
  std::vector<Vertex> S(k), T(k);
  for (int i = 0; i < k; ++i) {
    S[i] = top + i;
    T[i] = bottom + i;
  }
  return make_instance(std::move(g), std::move(S), std::move(T));
}

Instance gen_grid3(int k) {
  if (k < 2) throw std::invalid_argument("gen_grid3: k must be >= 2");
  auto g = std::make_shared<Graph>(make_open_grid(k, 3));
  std::vector<Vertex> S(k), T(k);
  for (int r = 0; r < k; ++r) {
    S[r] = r * 3;
    T[r] = r * 3 + 2;
  }
  return make_instance(std::move(g), std::move(S), std::move(T));
}

namespace {

std::vector<Vertex> parse_vertex_list(const nlohmann::json& arr, const Graph& g,
                                      const char* what) {
  std::vector<Vertex> out;
  for (const auto& item : arr) {
    Vertex v;
    if (item.is_number_integer()) {
      v = item.get<Vertex>();
    } else if (item.is_array() && item.size() == 2) {
      if (!g.grid)
        throw std::runtime_error(std::string(what) +
                                 ": [row,col] entries need a grid map");
      int row = item[0].get<int>(), col = item[1].get<int>();
      if (row < 0 || row >= g.grid->height || col < 0 || col >= g.grid->width)
        throw std::runtime_error(std::string(what) + ": cell out of bounds");
      v = g.grid->at(row, col);
      if (v < 0)
        throw std::runtime_error(std::string(what) + ": cell is not passable");
    } else {
      throw std::runtime_error(std::string(what) + ": bad vertex entry");
    }
    if (v < 0 || v >= g.vertex_count)
      throw std::runtime_error(std::string(what) + ": vertex id out of range");
    out.push_back(v);
  }
  return out;
}

}  // namespace

Instance parse_instance_json(const std::string& text, const std::string& base_dir) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::string map_ref = j.at("map").get<std::string>();
  std::shared_ptr<const Graph> graph;
  if (map_ref == "inline") {
    const auto& adj = j.at("inline_graph");
    int total = static_cast<int>(adj.size());
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int u = 0; u < total; ++u)
      for (const auto& w : adj[u])
        if (u < w.get<Vertex>()) edges.emplace_back(u, w.get<Vertex>());
    graph = std::make_shared<Graph>(make_graph(total, edges));
  } else {
    namespace fs = std::filesystem;
    fs::path p = map_ref;
    if (!base_dir.empty() && fs::exists(fs::path(base_dir) / p))
      p = fs::path(base_dir) / p;
    graph = std::make_shared<Graph>(parse_map(load_text_file(p.string())));
  }
  std::vector<Vertex> starts = parse_vertex_list(j.at("starts"), *graph, "starts");
  std::vector<Vertex> targets = parse_vertex_list(j.at("targets"), *graph, "targets");
  Instance inst = make_instance(std::move(graph), std::move(starts), std::move(targets));
  inst.map_ref = map_ref == "inline" ? "" : map_ref;
  if (j.contains("seed")) inst.seed = j.at("seed").get<std::uint64_t>();
  return inst;
}

std::string instance_to_json(const Instance& instance) {
  nlohmann::json j;
  if (instance.map_ref.empty()) {
    j["map"] = "inline";
    nlohmann::json adj = nlohmann::json::array();
    for (const auto& nbrs : instance.g().adj) adj.push_back(nbrs);
    j["inline_graph"] = adj;
  } else {
    j["map"] = instance.map_ref;
  }
  j["starts"] = instance.starts;
  j["targets"] = instance.targets;
  j["seed"] = instance.seed;
  return j.dump(2) + "\n";
}

void save_instance(const Instance& instance, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << instance_to_json(instance);
}

Instance load_instance(const std::string& path) {
  std::string text = load_text_file(path);
  std::string base_dir = std::filesystem::path(path).parent_path().string();
  return parse_instance_json(text, base_dir);
}

}  // namespace cumapf
