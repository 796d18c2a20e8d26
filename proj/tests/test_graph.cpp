#include <doctest.h>

#include <cmath>
#include <vector>

#include "aqsp/quad_graph.hpp"
#include "aqsp/walk.hpp"
#include "support.hpp"

using namespace aqsp;

namespace {

GraphError::Kind build_error(NodeId n, const std::vector<ArcSpec>& arcs, QuadSpec quad = StoredQuad{}) {
  try {
    (void)QuadGraph::build(n, arcs, std::move(quad));
  } catch (const GraphError& e) {
    return e.kind();
  }
  FAIL("expected GraphError");
  return GraphError::Kind::kMissingArc;
}

}  // namespace

TEST_CASE("diamond: walk costs and quadratic arc count") {
  const QuadGraph g = testing::small_diamond();
  CHECK(g.node_count() == 4);
  CHECK(g.arc_count() == 4);
  CHECK(g.quad_arc_count() == 2);
  CHECK(walk_cost(g, {0, 1, 3}) == 12.0);
  CHECK(walk_cost(g, {0, 2, 3}) == 11.0);
  CHECK(walk_cost(g, {0, 1}) == 1.0);
  const auto parts = walk_cost_parts(g, {0, 1, 3});
  CHECK(parts.linear == 2.0);
  CHECK(parts.quadratic == 10.0);
}

TEST_CASE("missing triples default to zero") {
  const QuadGraph g = testing::loop_graph(100.0);
  CHECK(g.quad_cost(1, 2, 3) == 0.0);
  CHECK(g.quad_cost(4, 2, 5) == 0.0);
  CHECK(g.quad_cost(1, 2, 5) == 100.0);
  CHECK_THROWS_AS((void)g.quad_cost(1, 2, 4), GraphError);
}

TEST_CASE("build rejects malformed input") {
  CHECK(build_error(3, {{0, 3, 1.0}}) == GraphError::Kind::kNodeOutOfRange);
  CHECK(build_error(3, {{1, 1, 1.0}}) == GraphError::Kind::kSelfLoop);
  CHECK(build_error(3, {{0, 1, 1.0}, {0, 1, 2.0}}) == GraphError::Kind::kDuplicateArc);
  CHECK(build_error(3, {{0, 1, -1.0}}) == GraphError::Kind::kNegativeCost);
  CHECK(build_error(3, {{0, 1, std::nan("")}}) == GraphError::Kind::kNonFiniteCost);
  CHECK(build_error(3, {{0, 1, 1.0}, {1, 2, 1.0}}, StoredQuad{{{0, 2, 1, 1.0}}}) ==
        GraphError::Kind::kNonConsecutiveTriple);
  CHECK(build_error(3, {{0, 1, 1.0}, {1, 2, 1.0}}, StoredQuad{{{0, 1, 2, -0.5}}}) ==
        GraphError::Kind::kNegativeCost);
}

TEST_CASE("adjacency is sorted and U-turns count as quadratic arcs") {
  const std::vector<ArcSpec> arcs{{0, 2, 1.0}, {0, 1, 1.0}, {1, 0, 1.0}, {2, 0, 1.0}};
  const QuadGraph g = QuadGraph::build(3, arcs);
  auto out = g.out_arcs(0);
  REQUIRE(out.size() == 2);
  CHECK(g.head(out[0]) == 1);
  CHECK(g.head(out[1]) == 2);
  // node 0: in 2, out 2; nodes 1 and 2: in 1, out 1
  CHECK(g.quad_arc_count() == 2 * 2 + 1 + 1);
  CHECK(g.undirected_edge_count() == 2);
  CHECK(g.find_arc(1, 2) == std::nullopt);
}

TEST_CASE("scale_quadratic leaves linear costs alone") {
  const QuadGraph g = testing::small_diamond();
  const QuadGraph zero = g.scale_quadratic(0.0);
  CHECK(walk_cost(zero, {0, 1, 3}) == 2.0);
  const QuadGraph big = g.scale_quadratic(5.0);
  CHECK(walk_cost(big, {0, 1, 3}) == 52.0);
  CHECK_THROWS_AS((void)g.scale_quadratic(-1.0), GraphError);
}

TEST_CASE("functional model and its materialized copy agree") {
  const QuadGraph grid = gen_grid(synthetic_elevation(6, 7, 3), GridOptions{});
  REQUIRE(grid.is_functional());
  const QuadGraph stored = grid.materialize();
  CHECK_FALSE(stored.is_functional());
  for (ArcId a = 0; a < grid.arc_count(); ++a) {
    std::vector<Cost> lhs;
    std::vector<Cost> rhs;
    grid.for_each_extension(a, [&](ArcId, Cost, Cost q) { lhs.push_back(q); });
    stored.for_each_extension(a, [&](ArcId, Cost, Cost q) { rhs.push_back(q); });
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("with_stored_values validates size and sign") {
  const QuadGraph g = testing::small_diamond();
  CHECK_THROWS((void)g.with_stored_values({1.0}));
  CHECK_THROWS((void)g.with_stored_values({1.0, -1.0}));
  const QuadGraph h = g.with_stored_values({3.0, 4.0});
  CHECK(h.quad_cost(0, 1, 3) == 3.0);
  CHECK(h.quad_cost(0, 2, 3) == 4.0);
}

TEST_CASE("alpha cycle detection") {
  CHECK(find_alpha_cycle({0, 1, 2, 1, 3, 1, 4}) == std::make_pair<std::size_t, std::size_t>(1, 3));
  CHECK(find_alpha_cycle({1, 2, 3, 4, 2, 5}) == std::make_pair<std::size_t, std::size_t>(1, 4));
  CHECK_FALSE(find_alpha_cycle({0, 1, 2, 3}));
  // repeats at the endpoints are not interior cycles
  CHECK_FALSE(find_alpha_cycle({0, 1, 0, 2}));
  CHECK(is_simple_path({0, 1, 2}));
  CHECK_FALSE(is_simple_path({0, 1, 0, 2}));
}

TEST_CASE("simplifying a walk through a cheap loop") {
  const QuadGraph g = testing::loop_graph(100.0);
  const Walk w{1, 2, 3, 4, 2, 5};
  CHECK(walk_cost(g, w) == 5.0);
  const SimplifiedWalk simple = simplify_walk(g, w);
  CHECK(simple.walk == Walk{1, 2, 5});
  CHECK(simple.cost == 102.0);
  CHECK_FALSE(simple.improved);

  const QuadGraph cheap = testing::loop_graph(0.0);
  const SimplifiedWalk better = simplify_walk(cheap, w);
  CHECK(better.cost == 2.0);
  CHECK(better.improved);
}

TEST_CASE("walk_cost rejects bad walks") {
  const QuadGraph g = testing::small_diamond();
  CHECK_THROWS((void)walk_cost(g, {0}));
  CHECK_THROWS_AS((void)walk_cost(g, {0, 3}), GraphError);
}
