#include <doctest.h>

#include <random>

#include "aqsp/baseline.hpp"
#include "aqsp/linear_dijkstra.hpp"
#include "aqsp/solvers.hpp"
#include "support.hpp"

using namespace aqsp;

TEST_CASE("diamond: arc labels, bounds and every solver") {
  const QuadGraph g = testing::small_diamond();
  const SearchResult r = aq_dijkstra(g, 0);
  const ArcId at = *g.find_arc(1, 3);
  const ArcId bt = *g.find_arc(2, 3);
  CHECK(r.labels.dist[at] == 12.0);
  CHECK(r.labels.dist[bt] == 11.0);
  CHECK(r.labels.dist[r.labels.start_arc()] == 0.0);
  CHECK(extract_walk(g, r.labels, 3) == Walk{0, 2, 3});

  const CostToGo b = backward_cost_to_go(g, 3);
  CHECK(b.bound == std::vector<Cost>{2.0, 1.0, 10.0, 0.0});

  for (Algorithm algo : {Algorithm::kAqDijkstra, Algorithm::kAqAStar, Algorithm::kLin}) {
    CAPTURE(algorithm_name(algo));
    const PathResult p = solve(g, 0, 3, algo);
    CHECK(p.cost == 11.0);
    CHECK(p.walk == Walk{0, 2, 3});
    CHECK(p.is_simple);
  }

  const auto ub = linear_path_upper_bound(g, 0, 3);
  REQUIRE(ub);
  CHECK(ub->linear_cost == 2.0);
  CHECK(ub->cost == 12.0);
  CHECK(ub->walk == Walk{0, 1, 3});

  CHECK(solve(g.scale_quadratic(0.0), 0, 3, Algorithm::kAqDijkstra).cost == 2.0);
}

TEST_CASE("the optimum may revisit a node") {
  const QuadGraph g = testing::loop_graph(100.0);
  for (Algorithm algo : {Algorithm::kAqDijkstra, Algorithm::kAqAStar, Algorithm::kLin}) {
    CAPTURE(algorithm_name(algo));
    const PathResult p = solve(g, 1, 5, algo);
    CHECK(p.cost == 5.0);
    CHECK(p.walk == Walk{1, 2, 3, 4, 2, 5});
    CHECK_FALSE(p.is_simple);
    REQUIRE(p.alpha_report);
    CHECK(p.alpha_report->simplified == Walk{1, 2, 5});
    CHECK(p.alpha_report->simplified_cost == 102.0);
    CHECK(p.alpha_report->improving);
  }
  CHECK(brute_force(g, 1, 5, 12).cost == 5.0);

  const PathResult cheap = solve(testing::loop_graph(0.0), 1, 5, Algorithm::kAqDijkstra);
  CHECK(cheap.cost == 2.0);
  CHECK(cheap.walk == Walk{1, 2, 5});
  CHECK(cheap.is_simple);
}

TEST_CASE("unreachable target and bad queries") {
  const QuadGraph g = testing::loop_graph(0.0);
  const PathResult p = solve(g, 1, 0, Algorithm::kAqAStar);
  CHECK_FALSE(p.found());
  CHECK(p.cost == kInfinity);
  CHECK_FALSE(solve(g, 5, 1, Algorithm::kLin).found());
  CHECK_FALSE(brute_force(g, 1, 0, 12).walk);
  CHECK_THROWS_AS((void)solve(g, 1, 1, Algorithm::kAqDijkstra), std::invalid_argument);
  CHECK_THROWS_AS((void)solve(g, 1, 9, Algorithm::kAqDijkstra), std::out_of_range);
}

TEST_CASE("lambda zero reduces to linear shortest paths") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const QuadGraph g = testing::random_stored(rng, 7, 0.4).scale_quadratic(0.0);
    auto tree = linear_dijkstra(g.node_count(), 0, [&](std::uint32_t u, auto&& relax) {
      for (ArcId a : g.out_arcs(u)) relax(g.head(a), g.cost(a), a);
    });
    for (Algorithm algo : {Algorithm::kAqDijkstra, Algorithm::kAqAStar, Algorithm::kLin}) {
      CHECK(solve(g, 0, 6, algo).cost == tree.dist[6]);
    }
  }
}

TEST_CASE("linearization shape") {
  const QuadGraph g = testing::small_diamond();
  const LinearizedGraph lin = linearize(g, 0, 3);
  CHECK(lin.node_count() == g.arc_count() + 2);
  CHECK(lin.core->target.size() == g.quad_arc_count());
  CHECK(lin.source_edges.size() == 2);
  CHECK(lin.sink_arcs.size() == 2);
  CHECK(lin.edge_count() == 6);
  CHECK(estimate_linearization_bytes(g) > 0);
}

TEST_CASE("A* stops early, exhaustive mode matches aqD labels") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    const QuadGraph g = testing::random_stored(rng, 8, 0.5);
    const SearchResult d = aq_dijkstra(g, 0);
    const SearchResult early = aq_astar(g, 0, 7, AStarOptions{});
    const SearchResult full = aq_astar(g, 0, 7, AStarOptions{.run_to_exhaustion = true});
    CHECK(early.stats.popped <= full.stats.popped);
    CHECK(full.stats.popped <= d.stats.popped);
    const auto wd = extract_walk(g, d.labels, 7);
    const auto we = extract_walk(g, early.labels, 7);
    REQUIRE(wd.has_value() == we.has_value());
    if (wd) CHECK(walk_cost(g, *wd) == walk_cost(g, *we));
    // every arc the full A* settles that can still reach t has the aqD label
    const CostToGo b = backward_cost_to_go(g, 7);
    for (ArcId a = 0; a < g.arc_count(); ++a) {
      if (b.bound[g.head(a)] != kInfinity) CHECK(full.labels.dist[a] == d.labels.dist[a]);
    }
  }
}
