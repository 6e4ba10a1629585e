#include "cumapf/oracle.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace cumapf {

namespace {

bool augment(const std::vector<std::vector<int>>& adj, int u, std::vector<char>& visited,
             std::vector<int>& match) {
  for (int v : adj[u]) {
    if (visited[v]) continue;
    visited[v] = 1;
    if (match[v] < 0 || augment(adj, match[v], visited, match)) {
      match[v] = u;
      return true;
    }
  }
  return false;
}

struct TupleHash {
  std::size_t operator()(const std::vector<Vertex>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (Vertex x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

bool valid_set_transition(const Graph& g, std::span<const Vertex> from,
                          std::span<const Vertex> to) {
  if (from.size() != to.size())
    throw std::invalid_argument("valid_set_transition: size mismatch");
  const int n = static_cast<int>(from.size());
  std::unordered_map<Vertex, int> to_index;
  for (int j = 0; j < n; ++j) to_index.emplace(to[j], j);
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i) {
    auto self = to_index.find(from[i]);
    if (self != to_index.end()) adj[i].push_back(self->second);
    for (Vertex w : g.adj[from[i]]) {
      auto it = to_index.find(w);
      if (it != to_index.end()) adj[i].push_back(it->second);
    }
  }
  std::vector<int> match(n, -1);
  std::vector<char> visited(n, 0);
  for (int i = 0; i < n; ++i) {
    std::fill(visited.begin(), visited.end(), 0);
    if (!augment(adj, i, visited, match)) return false;
  }
  return true;
}

namespace {

using Matching = std::vector<std::pair<Vertex, Vertex>>;  // (from, to) per agent slot

// enumerates every set reachable in one step, together with one witness
// matching per set; per-vertex move choices with used-target pruning
void enumerate_successors(
    const Graph& g, const std::vector<Vertex>& from,
    const std::function<void(const std::vector<Vertex>&, const Matching&)>& emit) {
  const int n = static_cast<int>(from.size());
  Matching chosen(n);
  std::unordered_set<Vertex> used;
  std::unordered_set<std::vector<Vertex>, TupleHash> emitted;
  std::vector<Vertex> key;

  auto rec = [&](auto&& self, int idx) -> void {
    if (idx == n) {
      key.clear();
      for (const auto& m : chosen) key.push_back(m.second);
      std::sort(key.begin(), key.end());
      if (emitted.insert(key).second) emit(key, chosen);
      return;
    }
    Vertex u = from[idx];
    auto try_move = [&](Vertex v) {
      if (used.count(v)) return;
      used.insert(v);
      chosen[idx] = {u, v};
      self(self, idx + 1);
      used.erase(v);
    };
    try_move(u);
    for (Vertex w : g.adj[u]) try_move(w);
  };
  rec(rec, 0);
}

bool induces_connected(const Graph& g, const std::vector<Vertex>& sorted_set) {
  return components_of(g, sorted_set).size() == 1;
}

}  // namespace

OracleResult optimal_makespan(const Instance& instance, OracleCaps caps) {
  const Graph& g = instance.g();
  if (instance.n > caps.max_agents)
    throw std::invalid_argument("oracle: too many agents for the configured cap");
  if (g.vertex_count > caps.max_vertices)
    throw std::invalid_argument("oracle: graph too large for the configured cap");

  struct StateInfo {
    int depth = 0;
    int parent = -1;  // index into states
    Matching arrival;
  };
  std::vector<std::vector<Vertex>> states;
  std::vector<StateInfo> info;
  std::unordered_map<std::vector<Vertex>, int, TupleHash> index;

  auto add_state = [&](std::vector<Vertex> key, int depth, int parent,
                       Matching arrival) {
    index.emplace(key, static_cast<int>(states.size()));
    states.push_back(std::move(key));
    info.push_back({depth, parent, std::move(arrival)});
  };

  add_state(instance.starts, 0, -1, {});
  int goal_index = instance.starts == instance.targets ? 0 : -1;

  for (std::size_t head = 0; head < states.size() && goal_index < 0; ++head) {
    const std::vector<Vertex> current = states[head];
    const int depth = info[head].depth;
    enumerate_successors(g, current, [&](const std::vector<Vertex>& key,
                                         const Matching& matching) {
      if (goal_index >= 0 || index.count(key)) return;
      if (!induces_connected(g, key)) return;
      if (static_cast<std::int64_t>(states.size()) >= caps.max_states)
        throw std::runtime_error("oracle: state cap exceeded");
      add_state(key, depth + 1, static_cast<int>(head), matching);
      if (key == instance.targets) goal_index = static_cast<int>(states.size()) - 1;
    });
  }
  if (goal_index < 0) throw std::logic_error("oracle: target unreachable");

  OracleResult result;
  result.states = static_cast<std::int64_t>(states.size());
  result.makespan = info[goal_index].depth;

  // chain the matchings backwards, then replay them with agent labels;
  // matched 2-cycles become identity moves so the witness is swap-free
  std::vector<Matching> matchings;
  for (int at = goal_index; info[at].parent >= 0; at = info[at].parent)
    matchings.push_back(info[at].arrival);
  std::reverse(matchings.begin(), matchings.end());

  Configuration config = instance.start_config();
  result.plan.steps.push_back(config);
  for (Matching step : matchings) {
    std::unordered_map<Vertex, Vertex> move;
    for (const auto& [u, v] : step) move[u] = v;
    for (auto& [u, v] : move) {
      auto back = move.find(v);
      if (u != v && back != move.end() && back->second == u) {
        move[v] = v;
        v = u;  // both stay
      }
    }
    std::vector<Vertex> next(config.size());
    for (int i = 0; i < config.size(); ++i) next[i] = move.at(config.positions[i]);
    config = Configuration(std::move(next), g.vertex_count);
    result.plan.steps.push_back(config);
  }
  return result;
}

}  // namespace cumapf
