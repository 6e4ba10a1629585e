#include "cumapf/core.hpp"

#include <algorithm>
#include <stdexcept>

namespace cumapf {

Configuration::Configuration(std::vector<Vertex> pos, int vertex_count)
    : positions(std::move(pos)), agent_at(vertex_count, -1) {
  for (int i = 0; i < size(); ++i) {
    Vertex v = positions[i];
    if (v < 0 || v >= vertex_count) throw std::invalid_argument("position out of range");
    if (agent_at[v] >= 0)
      has_duplicate = true;
    else
      agent_at[v] = i;
  }
}

bool Configuration::set_equals(std::span<const Vertex> sorted_vertices) const {
  if (positions.size() != sorted_vertices.size()) return false;
  std::vector<Vertex> mine = this->sorted_vertices();
  return std::equal(mine.begin(), mine.end(), sorted_vertices.begin());
}

std::vector<Vertex> Configuration::sorted_vertices() const {
  std::vector<Vertex> out = positions;
  std::sort(out.begin(), out.end());
  return out;
}

Configuration Instance::start_config() const {
  return Configuration(starts, graph->vertex_count);
}

namespace {

bool connected_subset(const Graph& g, const std::vector<Vertex>& sorted_set) {
  if (sorted_set.empty()) return false;
  auto parts = components_of(g, sorted_set);
  return parts.size() == 1;
}

}  // namespace

Instance make_instance(std::shared_ptr<const Graph> graph, std::vector<Vertex> starts,
                       std::vector<Vertex> targets) {
  Instance inst;
  inst.graph = std::move(graph);
  inst.starts = std::move(starts);
  inst.targets = std::move(targets);
  std::sort(inst.starts.begin(), inst.starts.end());
  std::sort(inst.targets.begin(), inst.targets.end());
  if (inst.starts.size() != inst.targets.size())
    throw std::invalid_argument("instance: |S| != |T|");
  if (inst.starts.empty()) throw std::invalid_argument("instance: empty start set");
  for (const auto* set : {&inst.starts, &inst.targets}) {
    for (Vertex v : *set)
      if (v < 0 || v >= inst.graph->vertex_count)
        throw std::invalid_argument("instance: vertex id out of range");
    if (std::adjacent_find(set->begin(), set->end()) != set->end())
      throw std::invalid_argument("instance: duplicate vertex in start/target set");
  }
  if (!connected_subset(*inst.graph, inst.starts))
    throw std::invalid_argument("instance: G[S] is not connected");
  if (!connected_subset(*inst.graph, inst.targets))
    throw std::invalid_argument("instance: G[T] is not connected");
  inst.n = static_cast<int>(inst.starts.size());
  return inst;
}

bool is_connected_config(const Graph& g, const Configuration& config) {
  if (config.size() == 0) throw std::invalid_argument("empty configuration");
  if (config.has_duplicate) {
    // treat as a set of occupied vertices
    std::vector<Vertex> set = config.sorted_vertices();
    set.erase(std::unique(set.begin(), set.end()), set.end());
    return components_of(g, set).size() == 1;
  }
  BfsTree tree = bfs_tree(g, config.positions, config.positions.front());
  return tree.reached.size() == config.positions.size();
}

namespace {

void check_duplicates(const Configuration& q, int step, ValidationReport& report) {
  std::vector<int> order(q.size());
  for (int i = 0; i < q.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return q.positions[a] < q.positions[b]; });
  for (int k = 1; k < q.size(); ++k) {
    int a = order[k - 1], b = order[k];
    if (q.positions[a] == q.positions[b]) {
      report.violations.push_back({step, 3, {a, b},
                                   "agents " + std::to_string(a) + " and " +
                                       std::to_string(b) + " share vertex " +
                                       std::to_string(q.positions[a])});
    }
  }
}

}  // namespace

ValidationReport validate_transition(const Graph& g, const Configuration& prev,
                                     const Configuration& next) {
  if (prev.size() != next.size())
    throw std::invalid_argument("validate_transition: agent count mismatch");
  ValidationReport report;
  for (int i = 0; i < prev.size(); ++i) {
    Vertex a = prev.positions[i], b = next.positions[i];
    if (a != b && !g.has_edge(a, b)) {
      report.violations.push_back({1, 2, {i},
                                   "agent " + std::to_string(i) + " jumps " +
                                       std::to_string(a) + " -> " + std::to_string(b)});
    }
  }
  check_duplicates(next, 1, report);
  for (int i = 0; i < prev.size(); ++i) {
    Vertex from_i = prev.positions[i], to_i = next.positions[i];
    if (to_i == from_i) continue;
    if (to_i < 0 || to_i >= g.vertex_count) continue;
    int j = prev.agent_at[to_i];
    if (j >= 0 && j != i && j > i && next.positions[j] == from_i) {
      report.violations.push_back({1, 4, {i, j},
                                   "agents " + std::to_string(i) + " and " +
                                       std::to_string(j) + " swap " +
                                       std::to_string(from_i) + " <-> " +
                                       std::to_string(to_i)});
    }
  }
  return report;
}

ValidationReport validate_plan(const Instance& instance, const Plan& plan) {
  ValidationReport report;
  const Graph& g = instance.g();
  if (plan.steps.empty()) {
    report.violations.push_back({0, 1, {}, "plan has no configurations"});
    return report;
  }
  if (!plan.steps.front().set_equals(instance.starts))
    report.violations.push_back({0, 1, {}, "first configuration differs from S"});
  if (!plan.steps.back().set_equals(instance.targets))
    report.violations.push_back(
        {plan.makespan(), 1, {}, "last configuration differs from T"});

  check_duplicates(plan.steps.front(), 0, report);
  for (std::size_t k = 1; k < plan.steps.size(); ++k) {
    ValidationReport step = validate_transition(g, plan.steps[k - 1], plan.steps[k]);
    for (Violation v : step.violations) {
      v.step = static_cast<int>(k);
      report.violations.push_back(std::move(v));
    }
  }
  for (std::size_t k = 0; k < plan.steps.size(); ++k) {
    if (!is_connected_config(g, plan.steps[k]))
      report.violations.push_back({static_cast<int>(k), 5, {},
                                   "configuration at step " + std::to_string(k) +
                                       " is disconnected"});
  }
  return report;
}

}  // namespace cumapf
