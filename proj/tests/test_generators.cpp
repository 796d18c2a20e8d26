#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "aqsp/generators.hpp"
#include "aqsp/walk.hpp"

using namespace aqsp;

namespace {

// Independent count: enumerate the neighbourhood offsets per cell.
std::pair<std::uint64_t, std::uint64_t> count_grid(std::size_t rows, std::size_t cols, int neighbors) {
  std::vector<std::pair<int, int>> offsets{{0, 1}, {1, 0}, {0, -1}, {-1, 0}};
  if (neighbors == 8) offsets.insert(offsets.end(), {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}});
  std::uint64_t arcs = 0;
  std::uint64_t quad = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      std::uint64_t degree = 0;
      for (auto [dr, dc] : offsets) {
        const long rr = static_cast<long>(r) + dr;
        const long cc = static_cast<long>(c) + dc;
        if (rr >= 0 && cc >= 0 && rr < static_cast<long>(rows) && cc < static_cast<long>(cols)) ++degree;
      }
      arcs += degree;
      quad += degree * degree;
    }
  }
  return {arcs / 2, quad};
}

}  // namespace

TEST_CASE("grid counts match an independent enumeration") {
  for (auto [rows, cols] : {std::pair<std::size_t, std::size_t>{2, 2}, {3, 5}, {10, 10}, {17, 4}}) {
    for (int n : {4, 8}) {
      CAPTURE(rows);
      CAPTURE(cols);
      CAPTURE(n);
      const auto [edges, quad] = count_grid(rows, cols, n);
      CHECK(grid_undirected_edges(rows, cols, n, false) == edges);
      CHECK(grid_quad_arcs(rows, cols, n, false) == quad);
      const QuadGraph g = gen_grid(flat_elevation(rows, cols), GridOptions{.neighbors = n});
      CHECK(g.undirected_edge_count() == edges);
      CHECK(g.quad_arc_count() == quad);
    }
  }
  const auto [e100, q100] = count_grid(100, 100, 8);
  CHECK(e100 == 39402);
  CHECK(q100 == 624492);
  CHECK(grid_undirected_edges(100, 100, 8, false) == 39402);
  CHECK(grid_quad_arcs(100, 100, 8, false) == 624492);
  const QuadGraph g22 = gen_grid(flat_elevation(2, 2), GridOptions{.neighbors = 4});
  CHECK(g22.arc_count() == 8);
  CHECK(g22.quad_arc_count() == 16);
}

TEST_CASE("torus grids are regular") {
  const QuadGraph g = gen_grid(flat_elevation(5, 6), GridOptions{.neighbors = 8, .wrap = true});
  for (NodeId u = 0; u < g.node_count(); ++u) {
    CHECK(g.out_degree(u) == 8);
    CHECK(g.in_degree(u) == 8);
  }
  CHECK(grid_undirected_edges(1500, 1500, 8, true) == 9000000ULL);
  CHECK(grid_quad_arcs(1500, 1500, 8, true) == 144000000ULL);
  CHECK_THROWS((void)gen_grid(flat_elevation(2, 2), GridOptions{.wrap = true}));
}

TEST_CASE("two-neighbour grids only go east and south") {
  const QuadGraph g = gen_grid(flat_elevation(3, 3), GridOptions{.neighbors = 2});
  CHECK(g.arc_count() == 12);
  for (ArcId a = 0; a < g.arc_count(); ++a) CHECK(g.head(a) > g.tail(a));
}

TEST_CASE("turn penalty on a flat grid") {
  const QuadGraph g = gen_grid(flat_elevation(3, 3, 2.0), GridOptions{.turn_weight = 2.0});
  // node r*3 + c
  CHECK(g.quad_cost(3, 4, 5) == doctest::Approx(0.0));
  CHECK(g.quad_cost(3, 4, 3) == doctest::Approx(2.0));
  CHECK(g.quad_cost(3, 4, 7) == doctest::Approx(1.0));
  CHECK(g.quad_cost(3, 4, 8) == doctest::Approx(0.5));
  CHECK(g.cost(*g.find_arc(3, 4)) == doctest::Approx(2.0));
  CHECK(g.cost(*g.find_arc(0, 4)) == doctest::Approx(2.0 * std::numbers::sqrt2));
}

TEST_CASE("elevation enters the linear cost") {
  std::istringstream csv("0,3\n0,0\n");
  const ElevationGrid e = read_elevation_csv(csv, 4.0);
  CHECK(e.rows == 2);
  CHECK(e.cols == 2);
  const QuadGraph g = gen_grid(e, GridOptions{.neighbors = 4});
  CHECK(g.cost(*g.find_arc(0, 1)) == doctest::Approx(5.0));
  CHECK(g.cost(*g.find_arc(1, 0)) == doctest::Approx(5.0));
  std::istringstream ragged("0,1\n2\n");
  CHECK_THROWS(read_elevation_csv(ragged));
}

TEST_CASE("Erdos-Renyi arc counts") {
  CHECK(gen_erdos_renyi(5, 0.0, 1).arc_count() == 0);
  CHECK(gen_erdos_renyi(3, 1.0, 1).arc_count() == 6);
  const QuadGraph g = gen_erdos_renyi(100, 0.8, 7);
  const double mean = 100.0 * 99.0 * 0.8;
  const double sd = std::sqrt(100.0 * 99.0 * 0.8 * 0.2);
  CHECK(std::abs(static_cast<double>(g.arc_count()) - mean) < 4.0 * sd);
}

TEST_CASE("configuration model degrees") {
  CHECK(gen_configuration(4, 1, 3).arc_count() == 4);
  const QuadGraph g = gen_configuration(1000, 8, 9);
  CHECK(g.arc_count() == 8000);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    REQUIRE(g.out_degree(u) == 8);
    REQUIRE(g.in_degree(u) == 8);
  }
  CHECK(g.undirected_edge_count() == 4000);
  CHECK_THROWS(gen_configuration(5, 3, 1));
}

TEST_CASE("generation is deterministic per seed") {
  for (const GenSpec& spec : {GenSpec{ErdosRenyiSpec{30, 0.3}, 4, 1.0}, GenSpec{ConfigurationSpec{40, 4}, 4, 2.0},
                              GenSpec{GridSpec{synthetic_elevation(8, 8, 4), GridOptions{.quad = GridQuad::kTable}},
                                      4, 1.0}}) {
    const QuadGraph a = generate(spec);
    const QuadGraph b = generate(spec);
    REQUIRE(a.arc_count() == b.arc_count());
    for (ArcId x = 0; x < a.arc_count(); ++x) {
      CHECK(a.tail(x) == b.tail(x));
      CHECK(a.head(x) == b.head(x));
      CHECK(a.cost(x) == b.cost(x));
    }
    CHECK(a.stored_triples().size() == b.stored_triples().size());
  }
  const bool differs = gen_erdos_renyi(30, 0.3, 1).arc_count() != gen_erdos_renyi(30, 0.3, 2).arc_count() ||
                       gen_erdos_renyi(30, 0.3, 1).cost(0) != gen_erdos_renyi(30, 0.3, 2).cost(0);
  CHECK(differs);
}
