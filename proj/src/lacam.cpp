#include "cumapf/lacam.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

#include "cumapf/lowerbound.hpp"

namespace cumapf {

namespace {

void check_constraints(const Graph& g, const Configuration& q_from,
                       const ConstraintSet& constraints) {
  std::vector<char> seen(q_from.size(), 0);
  for (auto [i, v] : constraints.entries) {
    if (i < 0 || i >= q_from.size())
      throw std::invalid_argument("constraint: agent id out of range");
    if (seen[i]) throw std::invalid_argument("constraint: duplicate agent");
    seen[i] = 1;
    Vertex u = q_from.positions[i];
    if (v != u && !g.has_edge(u, v))
      throw std::invalid_argument("constraint: target outside closed neighborhood");
  }
}

std::optional<Configuration> constrained_step_impl(const Graph& g,
                                                   const DistanceField& dist_to_T,
                                                   const Configuration& q_from,
                                                   std::span<const Vertex> targets_sorted,
                                                   const ConstraintSet& constraints,
                                                   detail::PullScratch& scratch) {
  check_constraints(g, q_from, constraints);
  const int n = q_from.size();
  std::vector<Vertex> pos = q_from.positions;
  std::vector<char> reserved(n, 0);
  detail::init_occupancy(scratch, pos, reserved, g.vertex_count);

  for (auto [i, v] : constraints.entries) {
    if (scratch.unres_at[pos[i]] == i) scratch.unres_at[pos[i]] = -1;
    --scratch.occ_count[pos[i]];
    reserved[i] = 1;
    pos[i] = v;
    ++scratch.occ_count[v];
  }

  // an unreserved agent whose vertex was claimed by a constrained one must be
  // pulled away first, so its vertex outranks every distance
  PriorityField pri;
  pri.sentinel = g.vertex_count;
  for (int i = 0; i < n; ++i)
    if (!reserved[i] && scratch.occ_count[pos[i]] >= 2)
      pri.forced_sorted.push_back(pos[i]);
  std::sort(pri.forced_sorted.begin(), pri.forced_sorted.end());
  pri.forced_sorted.erase(
      std::unique(pri.forced_sorted.begin(), pri.forced_sorted.end()),
      pri.forced_sorted.end());

  detail::SweepIO io;
  io.g = &g;
  io.dist = &dist_to_T;
  io.targets_sorted = targets_sorted;
  io.from_pos = &q_from.positions;
  io.pos = &pos;
  io.reserved = &reserved;
  io.scratch = &scratch;
  io.pri = &pri;
  detail::run_sweep(io);
  detail::clear_occupancy(scratch, q_from.positions, pos);

  Configuration out(std::move(pos), g.vertex_count);
  if (!is_connected_config(g, out)) return std::nullopt;
  if (out.has_duplicate) return std::nullopt;

  // swap conflicts are undone pairwise (both agents end up staying)
  bool changed = true;
  int rounds = 0;
  bool any_swap = false;
  while (changed && rounds++ <= n) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      Vertex to_i = out.positions[i], from_i = q_from.positions[i];
      if (to_i == from_i) continue;
      int j = q_from.agent_at[to_i];
      if (j >= 0 && j > i && out.positions[j] == from_i) {
        std::swap(out.positions[i], out.positions[j]);
        changed = true;
        any_swap = true;
      }
    }
  }
  if (any_swap) out = Configuration(std::move(out.positions), g.vertex_count);
  return out;
}

}  // namespace

std::optional<Configuration> constrained_step(const Graph& g,
                                              const DistanceField& dist_to_T,
                                              const Configuration& q_from,
                                              std::span<const Vertex> targets,
                                              const ConstraintSet& constraints) {
  std::vector<Vertex> targets_sorted(targets.begin(), targets.end());
  std::sort(targets_sorted.begin(), targets_sorted.end());
  detail::PullScratch scratch;
  return constrained_step_impl(g, dist_to_T, q_from, targets_sorted, constraints,
                               scratch);
}

std::string to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::optimal_proved: return "optimal-proved";
    case SearchStatus::best_known: return "best-known";
    case SearchStatus::none: return "none";
  }
  return "unknown";
}

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<Vertex>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (Vertex x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

struct LowNode {
  std::vector<std::pair<int, Vertex>> constraints;
};

struct HNode {
  std::vector<Vertex> config;
  int g = 0;
  int h = 0;
  HNode* parent = nullptr;
  std::deque<LowNode> tree;
  std::vector<HNode*> neighbors;
  std::uint64_t id = 0;
  bool goal = false;
};

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

SearchResult lacam_search(const Instance& instance, std::chrono::milliseconds budget,
                          std::uint64_t seed) {
  if (budget.count() <= 0) throw std::invalid_argument("lacam_search: budget <= 0");
  const Graph& g = instance.g();
  const int n = instance.n;
  const auto t_start = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     t_start)
        .count();
  };

  DistanceField dist_to_T = multi_source_distance(g, instance.targets);
  // one field per target vertex; rows of the heuristic tables come from these
  std::vector<DistanceField> target_fields;
  target_fields.reserve(n);
  for (Vertex t : instance.targets)
    target_fields.push_back(multi_source_distance(g, std::span<const Vertex>(&t, 1)));

  auto heuristic = [&](const std::vector<Vertex>& config) {
    BipartiteDistanceTable table;
    table.rows = config;
    table.cols = instance.targets;
    table.d.assign(n, std::vector<int>(n, 0));
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) table.d[i][j] = target_fields[j].dist[config[i]];
    return bottleneck_lb(table);
  };

  // candidate vertices per position, ordered by distance-to-target then id
  std::vector<std::vector<Vertex>> candidate_cache(g.vertex_count);
  auto candidates_at = [&](Vertex u) -> const std::vector<Vertex>& {
    auto& c = candidate_cache[u];
    if (c.empty()) {
      c.push_back(u);
      c.insert(c.end(), g.adj[u].begin(), g.adj[u].end());
      std::sort(c.begin(), c.end(), [&](Vertex a, Vertex b) {
        if (dist_to_T.dist[a] != dist_to_T.dist[b])
          return dist_to_T.dist[a] < dist_to_T.dist[b];
        return a < b;
      });
    }
    return c;
  };

  std::deque<HNode> arena;
  std::unordered_map<std::vector<Vertex>, HNode*, VecHash> explored;
  std::vector<HNode*> open;
  std::vector<HNode*> goals;
  detail::PullScratch scratch;

  SearchResult result;
  SearchStats& stats = result.stats;
  int best = -1;
  auto note_best = [&] {
    int cur = -1;
    for (HNode* goal : goals)
      if (cur < 0 || goal->g < cur) cur = goal->g;
    if (cur >= 0 && (best < 0 || cur < best)) {
      best = cur;
      stats.refine_log.push_back(
          {stats.iterations, elapsed_ms(), best, SearchStatus::best_known});
    }
  };

  auto make_node = [&](std::vector<Vertex> config, int gv, HNode* parent) {
    arena.push_back({});
    HNode* node = &arena.back();
    node->config = std::move(config);
    node->g = gv;
    node->h = heuristic(node->config);
    node->parent = parent;
    node->tree.push_back(LowNode{});
    node->id = arena.size() - 1;
    std::vector<Vertex> sorted = node->config;
    std::sort(sorted.begin(), sorted.end());
    node->goal = sorted == instance.targets;
    explored.emplace(node->config, node);
    open.push_back(node);
    if (node->goal) goals.push_back(node);
    ++stats.node_count;
    return node;
  };

  make_node(instance.starts, 0, nullptr);
  note_best();

  bool out_of_time = false;
  while (!open.empty()) {
    if (elapsed_ms() >= static_cast<double>(budget.count())) {
      out_of_time = true;
      break;
    }
    HNode* node = open.back();
    if (node->tree.empty()) {
      open.pop_back();
      continue;
    }
    ++stats.iterations;
    LowNode low = std::move(node->tree.front());
    node->tree.pop_front();
    const int depth = static_cast<int>(low.constraints.size());
    if (depth < n) {
      for (Vertex v : candidates_at(node->config[depth])) {
        node->tree.push_back(low);
        node->tree.back().constraints.emplace_back(depth, v);
      }
    }

    Configuration q_from(node->config, g.vertex_count);
    ConstraintSet cs{std::move(low.constraints)};
    auto next = constrained_step_impl(g, dist_to_T, q_from, instance.targets, cs, scratch);
    if (!next) continue;
    ++stats.generated;

    auto it = explored.find(next->positions);
    if (it == explored.end()) {
      HNode* fresh = make_node(next->positions, node->g + 1, node);
      node->neighbors.push_back(fresh);
      note_best();
    } else {
      HNode* known = it->second;
      node->neighbors.push_back(known);
      if (node->g + 1 < known->g) {
        // rewiring: relax and push the improvement through recorded edges
        known->g = node->g + 1;
        known->parent = node;
        std::vector<HNode*> stack{known};
        while (!stack.empty()) {
          HNode* x = stack.back();
          stack.pop_back();
          for (HNode* y : x->neighbors) {
            if (x->g + 1 < y->g) {
              y->g = x->g + 1;
              y->parent = x;
              stack.push_back(y);
            }
          }
        }
        note_best();
      } else if (node->g + 1 == known->g && known->parent != node &&
                 (mix64(seed ^ known->id) & 1)) {
        known->parent = node;  // seeded tie-break between equal-cost parents
      }
      if (!known->tree.empty()) open.push_back(known);
    }
  }

  stats.elapsed_ms = elapsed_ms();
  if (best < 0) {
    result.status = SearchStatus::none;
    stats.refine_log.push_back({stats.iterations, stats.elapsed_ms, -1, result.status});
    return result;
  }
  result.status = out_of_time ? SearchStatus::best_known : SearchStatus::optimal_proved;
  result.makespan = best;

  HNode* best_goal = nullptr;
  for (HNode* goal : goals)
    if (goal->g == best && (!best_goal || goal->id < best_goal->id)) best_goal = goal;
  std::vector<const HNode*> chain;
  for (const HNode* cur = best_goal; cur; cur = cur->parent) chain.push_back(cur);
  std::reverse(chain.begin(), chain.end());
  for (const HNode* cur : chain)
    result.plan.steps.emplace_back(cur->config, g.vertex_count);
  stats.refine_log.push_back({stats.iterations, stats.elapsed_ms, best, result.status});
  return result;
}

}  // namespace cumapf
