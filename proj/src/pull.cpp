#include "cumapf/pull.hpp"

#include <algorithm>
#include <stdexcept>

namespace cumapf {

int PriorityField::value(Vertex v, const DistanceField& dist_to_T) const {
  if (std::binary_search(forced_sorted.begin(), forced_sorted.end(), v)) return sentinel;
  return dist_to_T.at(v);
}

GoalComponents goal_components(const Graph& g, const Configuration& q,
                               std::span<const Vertex> targets_sorted) {
  std::vector<Vertex> inter;
  for (Vertex v : q.positions)
    if (std::binary_search(targets_sorted.begin(), targets_sorted.end(), v))
      inter.push_back(v);
  GoalComponents out;
  if (!inter.empty()) out.parts = components_of(g, inter);
  return out;
}

namespace detail {

void PullScratch::ensure(int vertex_count) {
  if (static_cast<int>(occ_count.size()) < vertex_count) {
    occ_count.assign(vertex_count, 0);
    unres_at.assign(vertex_count, -1);
  }
}

void init_occupancy(PullScratch& s, const std::vector<Vertex>& pos,
                    const std::vector<char>& reserved, int vertex_count) {
  s.ensure(vertex_count);
  for (std::size_t i = 0; i < pos.size(); ++i) {
    ++s.occ_count[pos[i]];
    if (!reserved[i]) s.unres_at[pos[i]] = static_cast<int>(i);
  }
}

void clear_occupancy(PullScratch& s, const std::vector<Vertex>& from_pos,
                     const std::vector<Vertex>& pos) {
  for (Vertex v : from_pos) {
    s.occ_count[v] = 0;
    s.unres_at[v] = -1;
  }
  for (Vertex v : pos) {
    s.occ_count[v] = 0;
    s.unres_at[v] = -1;
  }
}

bool chain_call(SweepIO& io, Vertex t, std::span<const Vertex> avoid) {
  const Graph& g = *io.g;
  PullScratch& s = *io.scratch;
  const int n = static_cast<int>(io.pos->size());

  // F: vertices that can reach t inside the configuration without crossing a
  // reserved agent; its BFS tree also provides next(.,.) for the chain walk
  s.domain_buf.clear();
  for (int i = 0; i < n; ++i)
    if (!(*io.reserved)[i]) s.domain_buf.push_back((*io.pos)[i]);
  s.domain_buf.push_back(t);
  BfsTree* tree = io.last_tree ? io.last_tree : &s.tree;
  bfs_tree_run(g, s.domain_buf, t, s.gs, *tree);

  // B: cut vertices of the occupied set plus t
  s.occupied_buf.clear();
  s.seen.reset(g.vertex_count);
  for (int i = 0; i < n; ++i) {
    Vertex v = (*io.pos)[i];
    if (!s.seen.contains(v)) {
      s.seen.insert(v);
      s.occupied_buf.push_back(v);
    }
  }
  s.occupied_buf.push_back(t);
  std::vector<Vertex> local_cuts;
  std::vector<Vertex>* cuts = io.cut_set ? io.cut_set : &local_cuts;
  articulation_run(g, s.occupied_buf, s.gs, *cuts);

  // V_S = (F \ B) \ (avoid ∪ {t})
  s.excluded.reset(g.vertex_count);
  for (Vertex v : *cuts) s.excluded.insert(v);
  for (Vertex v : avoid) s.excluded.insert(v);
  s.excluded.insert(t);
  std::vector<Vertex> local_candidates;
  std::vector<Vertex>* cand = io.candidates ? io.candidates : &local_candidates;
  cand->clear();
  for (Vertex v : tree->reached)
    if (!s.excluded.contains(v)) cand->push_back(v);
  std::sort(cand->begin(), cand->end());

  s.moves.clear();
  if (cand->empty()) {
    if (io.chain_start) *io.chain_start = -1;
    return false;
  }

  // start the chain at the candidate farthest from the targets (or of highest
  // priority when the search layer overrides), smallest id on ties
  Vertex cur = -1;
  int best_key = -1;
  for (Vertex v : *cand) {
    int key = io.pri ? io.pri->value(v, *io.dist) : io.dist->at(v);
    if (cur < 0 || key > best_key) {
      cur = v;
      best_key = key;
    }
  }
  if (io.chain_start) *io.chain_start = cur;

  // shift every agent on the cur -> t tree path one hop toward t
  while (cur != t) {
    int agent = s.unres_at[cur];
    Vertex nxt = tree->parent_of(cur);
    s.moves.push_back({agent, cur, nxt});
    (*io.reserved)[agent] = 1;
    s.unres_at[cur] = -1;
    --s.occ_count[cur];
    (*io.pos)[agent] = nxt;
    ++s.occ_count[nxt];
    cur = nxt;
  }
  return true;
}

void run_sweep(SweepIO& io) {
  const Graph& g = *io.g;
  PullScratch& s = *io.scratch;
  const int n = static_cast<int>(io.pos->size());
  const std::vector<Vertex>& from = *io.from_pos;

  s.in_T.reset(g.vertex_count);
  for (Vertex v : io.targets_sorted) s.in_T.insert(v);

  // goal phase: grow the components of G[Q_from ∩ T], largest first
  std::vector<Vertex> inter;
  for (Vertex v : from)
    if (s.in_T.contains(v)) inter.push_back(v);
  if (!inter.empty()) {
    std::sort(inter.begin(), inter.end());
    auto parts = components_of(g, inter);
    for (const auto& part : parts) {
      s.seen.reset(g.vertex_count);
      for (Vertex v : part) s.seen.insert(v);
      s.nbr_buf.clear();
      for (Vertex v : part) {
        for (Vertex w : g.adj[v]) {
          if (!s.seen.contains(w) && s.in_T.contains(w)) {
            s.seen.insert(w);
            s.nbr_buf.push_back(w);
          }
        }
      }
      std::sort(s.nbr_buf.begin(), s.nbr_buf.end());
      for (Vertex v : s.nbr_buf) {
        if (s.occ_count[v] != 0) continue;
        if (chain_call(io, v, part) && io.stop_after_first_success) return;
      }
      // agents still sitting on their start vertex inside this component are
      // pinned there for the rest of the step
      for (Vertex v : part) {
        int agent = s.unres_at[v];
        if (agent >= 0 && (*io.pos)[agent] == from[agent]) {
          (*io.reserved)[agent] = 1;
          s.unres_at[v] = -1;
        }
      }
    }
  }

  // frontier phase: N(Q_from) in ascending distance-to-target order, bucket
  // sorted over the window [d0-1, d0+n]
  int d0 = io.dist->at(from[0]);
  for (Vertex v : from) d0 = std::min(d0, io.dist->at(v));
  s.seen.reset(g.vertex_count);
  for (Vertex v : from) s.seen.insert(v);
  s.nbr_buf.clear();
  for (Vertex v : from) {
    for (Vertex w : g.adj[v]) {
      if (!s.seen.contains(w)) {
        s.seen.insert(w);
        s.nbr_buf.push_back(w);
      }
    }
  }
  std::sort(s.nbr_buf.begin(), s.nbr_buf.end());
  if (static_cast<int>(s.buckets.size()) < n + 2) s.buckets.resize(n + 2);
  for (int b = 0; b < n + 2; ++b) s.buckets[b].clear();
  for (Vertex w : s.nbr_buf) {
    int slot = io.dist->at(w) - (d0 - 1);
    if (slot < 0 || slot > n + 1)
      throw std::logic_error("frontier distance outside the bucket window");
    s.buckets[slot].push_back(w);
  }
  for (int b = 0; b < n + 2; ++b) {
    for (Vertex u : s.buckets[b]) {
      if (s.occ_count[u] != 0) continue;
      if (chain_call(io, u, {}) && io.stop_after_first_success) return;
    }
  }
}

}  // namespace detail

StepState make_step_state(const Graph& g, const DistanceField& dist_to_T,
                          const Configuration& q_from, std::vector<Vertex> targets) {
  StepState st;
  st.graph = &g;
  st.dist_to_T = &dist_to_T;
  std::sort(targets.begin(), targets.end());
  st.targets = std::move(targets);
  st.q_from = q_from;
  st.q_cur = q_from;
  st.reserved.assign(q_from.size(), 0);
  st.scratch = std::make_shared<detail::PullScratch>();
  detail::init_occupancy(*st.scratch, st.q_cur.positions, st.reserved, g.vertex_count);
  return st;
}

namespace {

detail::SweepIO bind_state(StepState& st) {
  detail::SweepIO io;
  io.g = st.graph;
  io.dist = st.dist_to_T;
  io.targets_sorted = st.targets;
  io.from_pos = &st.q_from.positions;
  io.pos = &st.q_cur.positions;
  io.reserved = &st.reserved;
  io.scratch = st.scratch.get();
  io.pri = st.pri;
  io.last_tree = &st.last_tree;
  io.cut_set = &st.cut_set;
  io.candidates = &st.candidates;
  io.chain_start = &st.chain_start;
  return io;
}

void apply_moves_to_config(Configuration& q, const std::vector<detail::ChainMove>& moves) {
  for (const auto& m : moves) q.agent_at[m.from] = -1;
  for (const auto& m : moves) {
    q.positions[m.agent] = m.to;
    q.agent_at[m.to] = m.agent;
  }
}

}  // namespace

bool pull_chain(StepState& state, Vertex t, std::span<const Vertex> avoid) {
  const Graph& g = *state.graph;
  if (t < 0 || t >= g.vertex_count) throw std::invalid_argument("pull_chain: bad target");
  if (state.scratch->occ_count[t] != 0)
    throw std::invalid_argument("pull_chain: target vertex is occupied");
  bool adjacent = false;
  for (Vertex w : g.adj[t]) adjacent = adjacent || state.scratch->occ_count[w] != 0;
  if (!adjacent)
    throw std::invalid_argument("pull_chain: target not adjacent to the configuration");
  if (!avoid.empty() && components_of(g, avoid).size() != 1)
    throw std::invalid_argument("pull_chain: avoid set is not connected");

  detail::SweepIO io = bind_state(state);
  bool moved = detail::chain_call(io, t, avoid);
  if (moved) apply_moves_to_config(state.q_cur, state.scratch->moves);
  return moved;
}

namespace {

Configuration run_step(const Graph& g, const DistanceField& dist_to_T,
                       const Configuration& q_from, std::span<const Vertex> targets,
                       bool single, detail::PullScratch& scratch,
                       const PriorityField* pri = nullptr) {
  if (!is_connected_config(g, q_from))
    throw std::invalid_argument("step: q_from is disconnected");
  std::vector<Vertex> pos = q_from.positions;
  std::vector<char> reserved(pos.size(), 0);
  std::vector<Vertex> targets_sorted(targets.begin(), targets.end());
  std::sort(targets_sorted.begin(), targets_sorted.end());

  detail::init_occupancy(scratch, pos, reserved, g.vertex_count);
  detail::SweepIO io;
  io.g = &g;
  io.dist = &dist_to_T;
  io.targets_sorted = targets_sorted;
  io.from_pos = &q_from.positions;
  io.pos = &pos;
  io.reserved = &reserved;
  io.scratch = &scratch;
  io.pri = pri;
  io.stop_after_first_success = single;
  detail::run_sweep(io);
  detail::clear_occupancy(scratch, q_from.positions, pos);
  return Configuration(std::move(pos), g.vertex_count);
}

}  // namespace

Configuration pull_step(const Graph& g, const DistanceField& dist_to_T,
                        const Configuration& q_from, std::span<const Vertex> targets) {
  detail::PullScratch scratch;
  return run_step(g, dist_to_T, q_from, targets, false, scratch);
}

Configuration single_step(const Graph& g, const DistanceField& dist_to_T,
                          const Configuration& q_from, std::span<const Vertex> targets) {
  detail::PullScratch scratch;
  return run_step(g, dist_to_T, q_from, targets, true, scratch);
}

Plan plan(const Instance& instance, StepAlgo algo, const DistanceField* dist_to_T) {
  const Graph& g = instance.g();
  DistanceField local;
  if (!dist_to_T) {
    local = multi_source_distance(g, instance.targets);
    dist_to_T = &local;
  }
  int d0 = dist_to_T->at(instance.starts[0]);
  for (Vertex v : instance.starts) d0 = std::min(d0, dist_to_T->at(v));
  const int budget = d0 + instance.n;

  Plan out;
  out.steps.push_back(instance.start_config());
  detail::PullScratch scratch;
  while (!out.steps.back().set_equals(instance.targets)) {
    if (out.makespan() >= budget)
      throw std::logic_error("plan: step budget exceeded, generator failed to converge");
    out.steps.push_back(run_step(g, *dist_to_T, out.steps.back(), instance.targets,
                                 algo == StepAlgo::single, scratch));
  }
  return out;
}

}  // namespace cumapf
