#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <memory>
#include <set>

#include "cumapf/core.hpp"
#include "cumapf/instances.hpp"
#include "cumapf/pull.hpp"
#include "doctest.h"

using namespace cumapf;

namespace {

int vid(int r, int c) { return (r - 1) * 3 + (c - 1); }

struct Worked53 {
  Graph g = make_open_grid(5, 3);
  Configuration q_from{{vid(1, 2), vid(2, 1), vid(2, 2), vid(2, 3), vid(3, 2),
                        vid(4, 1), vid(4, 2)},
                       15};
  std::vector<Vertex> targets{vid(3, 2), vid(4, 1), vid(4, 2), vid(4, 3),
                              vid(5, 1), vid(5, 2), vid(5, 3)};
  DistanceField dist;
  Worked53() { dist = multi_source_distance(g, targets); }
};

int min_dist_to_targets(const Configuration& q, const DistanceField& dist) {
  int best = dist.at(q.positions[0]);
  for (Vertex v : q.positions) best = std::min(best, dist.at(v));
  return best;
}

}  // namespace

TEST_CASE("pull_chain: first call of the worked example") {
  Worked53 w;
  StepState st = make_step_state(w.g, w.dist, w.q_from, w.targets);
  std::vector<Vertex> avoid = {vid(3, 2), vid(4, 1), vid(4, 2)};

  REQUIRE(pull_chain(st, vid(4, 3), avoid));
  // candidates exclude the cut vertex v2-2 of the occupied set plus target
  CHECK(st.candidates == std::vector<Vertex>{vid(1, 2), vid(2, 1), vid(2, 3)});
  CHECK(st.chain_start == vid(1, 2));
  CHECK(st.cut_set == std::vector<Vertex>{vid(2, 2), vid(3, 2), vid(4, 2)});
  std::vector<int> reserved;
  for (int i = 0; i < 7; ++i)
    if (st.reserved[i]) reserved.push_back(i);
  CHECK(reserved == std::vector<int>{0, 2, 4, 6});
  CHECK(st.q_cur.positions ==
        std::vector<Vertex>{vid(2, 2), vid(2, 1), vid(3, 2), vid(2, 3), vid(4, 2),
                            vid(4, 1), vid(4, 3)});

  // second call fails: everything reachable is reserved or cut
  REQUIRE_FALSE(pull_chain(st, vid(5, 1), avoid));
  CHECK(st.candidates.empty());
  CHECK(st.chain_start == -1);
  CHECK(st.q_cur.positions ==
        std::vector<Vertex>{vid(2, 2), vid(2, 1), vid(3, 2), vid(2, 3), vid(4, 2),
                            vid(4, 1), vid(4, 3)});
}

TEST_CASE("pull_chain: single agent, adjacent target") {
  Graph g = make_graph(2, {{0, 1}});
  std::vector<Vertex> targets = {1};
  DistanceField dist = multi_source_distance(g, targets);
  StepState st = make_step_state(g, dist, Configuration({0}, 2), targets);
  REQUIRE(pull_chain(st, 1, {}));
  CHECK(st.candidates == std::vector<Vertex>{0});
  CHECK(st.q_cur.positions == std::vector<Vertex>{1});
}

TEST_CASE("pull_chain: preconditions") {
  Worked53 w;
  StepState st = make_step_state(w.g, w.dist, w.q_from, w.targets);
  CHECK_THROWS(pull_chain(st, vid(2, 2), {}));  // occupied
  CHECK_THROWS(pull_chain(st, vid(5, 3), {}));  // not adjacent to any agent
}

TEST_CASE("pull_step: golden one-step output") {
  Worked53 w;
  Configuration q_to = pull_step(w.g, w.dist, w.q_from, w.targets);
  CHECK(q_to.positions ==
        std::vector<Vertex>{vid(2, 2), vid(3, 1), vid(3, 2), vid(3, 3), vid(4, 2),
                            vid(4, 1), vid(4, 3)});
}

TEST_CASE("single_step: only the first chain executes") {
  Worked53 w;
  Configuration q_to = single_step(w.g, w.dist, w.q_from, w.targets);
  CHECK(q_to.positions ==
        std::vector<Vertex>{vid(2, 2), vid(2, 1), vid(3, 2), vid(2, 3), vid(4, 2),
                            vid(4, 1), vid(4, 3)});
}

TEST_CASE("fixed point at the target set") {
  Graph g = make_open_grid(2, 3);
  std::vector<Vertex> T = {0, 1, 2};
  DistanceField dist = multi_source_distance(g, T);
  Configuration at_goal({0, 1, 2}, g.vertex_count);
  CHECK(pull_step(g, dist, at_goal, T).positions == at_goal.positions);
  CHECK(single_step(g, dist, at_goal, T).positions == at_goal.positions);
}

TEST_CASE("one agent advances exactly one hop per step") {
  Graph g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  std::vector<Vertex> T = {3};
  DistanceField dist = multi_source_distance(g, T);
  Configuration q({0}, 4);
  q = pull_step(g, dist, q, T);
  CHECK(q.positions == std::vector<Vertex>{1});
  q = pull_step(g, dist, q, T);
  CHECK(q.positions == std::vector<Vertex>{2});
}

TEST_CASE("disconnected q_from is rejected") {
  Graph g = make_open_grid(3, 3);
  DistanceField dist = multi_source_distance(g, std::vector<Vertex>{0});
  CHECK_THROWS(pull_step(g, dist, Configuration({0, 8}, 9), std::vector<Vertex>{0, 1}));
}

TEST_CASE("plan: trivial and tight instances") {
  Instance same = gen_grid3(3);
  Instance fixed = make_instance(same.graph, same.starts, same.starts);
  CHECK(plan(fixed, StepAlgo::pull).makespan() == 0);

  Instance tight = gen_tight(5, 4);
  Plan p = plan(tight, StepAlgo::pull);
  CHECK(p.makespan() == 9);
  CHECK(validate_plan(tight, p).ok());

  Instance tiny = gen_tight(1, 1);
  CHECK(plan(tiny, StepAlgo::pull).makespan() == 2);
}

TEST_CASE("plan: adversarial k x 3 instances stay hard for the rule") {
  for (int k : {4, 8}) {
    Instance inst = gen_grid3(k);
    Plan p = plan(inst, StepAlgo::pull);
    CHECK(validate_plan(inst, p).ok());
    CHECK(p.makespan() >= k / 2);
  }
}

TEST_CASE("plan: fan instances drive pull and single identically") {
  for (auto [k, l] : std::vector<std::pair<int, int>>{{2, 2}, {5, 4}, {3, 1}}) {
    Instance inst = gen_tight(k, l);
    Plan a = plan(inst, StepAlgo::pull);
    Plan b = plan(inst, StepAlgo::single);
    REQUIRE(a.steps.size() == b.steps.size());
    for (std::size_t i = 0; i < a.steps.size(); ++i)
      CHECK(a.steps[i].positions == b.steps[i].positions);
  }
}

TEST_CASE("lemma suite on random instances") {
  auto graph = std::make_shared<Graph>(make_open_grid(8, 8));
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Instance inst = gen_random_instance(graph, 6 + seed % 11, seed * 977 + 1);
    DistanceField dist = multi_source_distance(inst.g(), inst.targets);
    int d0 = min_dist_to_targets(inst.start_config(), dist);
    for (StepAlgo algo : {StepAlgo::pull, StepAlgo::single}) {
      Plan p = plan(inst, algo, &dist);
      CHECK(validate_plan(inst, p).ok());
      CHECK(p.makespan() <= d0 + inst.n - 1);
      for (std::size_t k = 0; k + 1 < p.steps.size(); ++k) {
        GoalComponents before = goal_components(inst.g(), p.steps[k], inst.targets);
        GoalComponents after = goal_components(inst.g(), p.steps[k + 1], inst.targets);
        if (before.parts.empty()) {
          // exact one-hop progress while no agent stands on a target
          CHECK(min_dist_to_targets(p.steps[k + 1], dist) ==
                min_dist_to_targets(p.steps[k], dist) - 1);
        } else {
          CHECK(after.p_max() >= before.p_max() + 1);
          // the largest goal component never loses a vertex
          std::set<Vertex> next_set(p.steps[k + 1].positions.begin(),
                                    p.steps[k + 1].positions.end());
          for (Vertex v : before.parts[0]) CHECK(next_set.count(v) == 1);
        }
      }
    }
  }
}

TEST_CASE("plans are deterministic") {
  auto graph = std::make_shared<Graph>(make_open_grid(6, 6));
  Instance inst = gen_random_instance(graph, 9, 4242);
  Plan a = plan(inst, StepAlgo::pull);
  Plan b = plan(inst, StepAlgo::pull);
  REQUIRE(a.steps.size() == b.steps.size());
  for (std::size_t i = 0; i < a.steps.size(); ++i)
    CHECK(a.steps[i].positions == b.steps[i].positions);
}

TEST_CASE("pull never loses to single on the fan family") {
  for (auto [k, l] : std::vector<std::pair<int, int>>{{2, 3}, {4, 2}}) {
    Instance inst = gen_tight(k, l);
    CHECK(plan(inst, StepAlgo::pull).makespan() <=
          plan(inst, StepAlgo::single).makespan());
  }
}
