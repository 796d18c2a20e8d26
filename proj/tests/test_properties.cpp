#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "aqsp/baseline.hpp"
#include "aqsp/bench.hpp"
#include "aqsp/solvers.hpp"
#include "support.hpp"

using namespace aqsp;

TEST_CASE("walk cost splits into linear plus lambda times quadratic") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> lambda_dist(0.0, 50.0);
  int checked = 0;
  while (checked < 200) {
    const QuadGraph g = testing::random_stored(rng, 6, 0.5);
    const Walk w = testing::random_walk(g, rng, 0, 12);
    if (w.size() < 2) continue;
    const double lambda = lambda_dist(rng);
    const auto parts = walk_cost_parts(g, w);
    const Cost scaled = walk_cost(g.scale_quadratic(lambda), w);
    CHECK(costs_agree(scaled, parts.linear + lambda * parts.quadratic));
    ++checked;
  }
}

TEST_CASE("concatenated walks pay one joining turn") {
  std::mt19937_64 rng(202);
  int checked = 0;
  while (checked < 200) {
    const QuadGraph g = testing::random_stored(rng, 6, 0.6);
    const Walk first = testing::random_walk(g, rng, 0, 5);
    if (first.size() < 2) continue;
    const Walk second = testing::random_walk(g, rng, first.back(), 5);
    if (second.size() < 2) continue;
    Walk joined = first;
    joined.insert(joined.end(), second.begin() + 1, second.end());
    const Cost turn = g.quad_cost(first[first.size() - 2], first.back(), second[1]);
    CHECK(costs_agree(walk_cost(g, joined), walk_cost(g, first) + walk_cost(g, second) + turn));
    ++checked;
  }
}

TEST_CASE("returned walk cost equals its label and no solver beats brute force") {
  std::mt19937_64 rng(303);
  for (int i = 0; i < 150; ++i) {
    const NodeId n = 4 + static_cast<NodeId>(i % 4);
    const QuadGraph g = testing::random_stored(rng, n, 0.3 + 0.1 * (i % 5), i % 3 == 0 ? 20.0 : 1.0);
    const BruteForceResult bf = brute_force(g, 0, n - 1, 2 * n);
    const PathResult d = solve(g, 0, n - 1, Algorithm::kAqDijkstra);
    const PathResult a = solve(g, 0, n - 1, Algorithm::kAqAStar);
    const PathResult l = solve(g, 0, n - 1, Algorithm::kLin);
    CHECK(costs_agree(d.cost, bf.cost));
    CHECK(costs_agree(a.cost, bf.cost));
    CHECK(costs_agree(l.cost, bf.cost));
    if (d.found()) {
      CHECK(walk_cost(g, d.walk) == d.cost);
      CHECK(d.walk.front() == 0);
      CHECK(d.walk.back() == n - 1);
      const SearchResult r = aq_dijkstra(g, 0);
      Cost best = kInfinity;
      for (ArcId in : g.in_arcs(n - 1)) best = std::min(best, r.labels.dist[in]);
      CHECK(d.cost == best);
      if (auto ub = linear_path_upper_bound(g, 0, n - 1)) CHECK(ub->cost >= d.cost);
    }
  }
}

TEST_CASE("cost-to-go bounds are admissible and consistent") {
  std::mt19937_64 rng(404);
  for (int i = 0; i < 100; ++i) {
    const QuadGraph g = testing::random_stored(rng, 7, 0.4);
    const CostToGo b = backward_cost_to_go(g, 6);
    CHECK(b.bound[6] == 0.0);
    for (ArcId a = 0; a < g.arc_count(); ++a) {
      if (b.bound[g.head(a)] == kInfinity) continue;
      CHECK(b.bound[g.tail(a)] <= g.cost(a) + b.bound[g.head(a)]);
    }
    for (NodeId u = 0; u < 6; ++u) {
      const Cost exact = brute_force(g, u, 6, 14).cost;
      CHECK(b.bound[u] <= exact + 1e-12);
      CHECK((b.bound[u] == kInfinity) == (exact == kInfinity));
    }
  }
}

TEST_CASE("extraction is monotone and each arc is settled at most once") {
  std::mt19937_64 rng(505);
  for (int i = 0; i < 100; ++i) {
    const QuadGraph g = testing::random_stored(rng, 9, 0.4, i % 2 ? 10.0 : 0.1);
    for (bool astar : {false, true}) {
      ExtractionTrace trace;
      if (astar) {
        (void)aq_astar(g, 0, 8, AStarOptions{.run_to_exhaustion = true, .trace = &trace});
      } else {
        (void)aq_dijkstra(g, 0, &trace);
      }
      std::vector<int> seen(g.arc_count() + 1, 0);
      for (std::size_t k = 0; k < trace.size(); ++k) {
        REQUIRE(++seen[trace[k].arc] == 1);
        if (k) REQUIRE(trace[k - 1].key <= trace[k].key);
      }
    }
  }
}

TEST_CASE("stored and functional models give identical answers") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const QuadGraph f = gen_grid(synthetic_elevation(12, 12, seed), GridOptions{.turn_weight = 3.0});
    const QuadGraph s = f.materialize();
    const NodeId t = f.node_count() - 1;
    for (Algorithm algo : {Algorithm::kAqDijkstra, Algorithm::kAqAStar}) {
      const PathResult a = solve(f, 0, t, algo);
      const PathResult b = solve(s, 0, t, algo);
      CHECK(a.cost == b.cost);
      CHECK(a.walk == b.walk);
      CHECK(a.stats.popped == b.stats.popped);
    }
  }
}

TEST_CASE("cost agreement tolerance") {
  CHECK(costs_agree(1.0, 1.0 + 1e-12));
  CHECK_FALSE(costs_agree(1.0, 1.0 + 1e-6));
  CHECK(costs_agree(1e9, 1e9 + 0.5));
  CHECK(costs_agree(kInfinity, kInfinity));
  CHECK_FALSE(costs_agree(kInfinity, 1.0));
}
