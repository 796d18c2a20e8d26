#include "aqsp/generators.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <type_traits>
#include <unordered_set>

#include "aqsp/graph_io.hpp"

namespace aqsp {

namespace {

struct Step {
  int dr;
  int dc;
};

// Emission order of a node's arcs; the first `neighbors` entries are used.
constexpr std::array<Step, 8> kSteps = {{
    {0, 1},    // east
    {1, 0},    // south
    {0, -1},   // west
    {-1, 0},   // north
    {1, 1},    // south-east
    {1, -1},   // south-west
    {-1, 1},   // north-east
    {-1, -1},  // north-west
}};

void check_neighbors(int neighbors) {
  if (neighbors != 2 && neighbors != 4 && neighbors != 8) {
    throw std::invalid_argument("neighbors must be 2, 4 or 8, got " + std::to_string(neighbors));
  }
}

// Per-triple Unif[0,1) draws in for_each_extension order.
QuadGraph with_uniform_quad(const QuadGraph& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Cost> values(g.quad_arc_count());
  for (Cost& v : values) v = unif(rng);
  return g.with_stored_values(std::move(values));
}

// Signed step between two cells along one axis, undoing torus wrap-around.
int wrapped_delta(std::size_t from, std::size_t to, std::size_t extent, bool wrap) {
  long d = static_cast<long>(to) - static_cast<long>(from);
  if (wrap) {
    const long n = static_cast<long>(extent);
    if (d > n / 2) d -= n;
    if (d < -n / 2) d += n;
  }
  return static_cast<int>(d);
}

double lattice_value(std::uint64_t seed, std::uint64_t x, std::uint64_t y) {
  // splitmix64 of the lattice coordinates.
  std::uint64_t z = seed ^ (x * 0x9E3779B97F4A7C15ULL) ^ (y * 0xC2B2AE3D27D4EB4FULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

double value_noise(std::uint64_t seed, double spacing, std::size_t r, std::size_t c) {
  const double fr = static_cast<double>(r) / spacing;
  const double fc = static_cast<double>(c) / spacing;
  const auto r0 = static_cast<std::uint64_t>(fr);
  const auto c0 = static_cast<std::uint64_t>(fc);
  const double tr = fr - static_cast<double>(r0);
  const double tc = fc - static_cast<double>(c0);
  const double v00 = lattice_value(seed, r0, c0);
  const double v01 = lattice_value(seed, r0, c0 + 1);
  const double v10 = lattice_value(seed, r0 + 1, c0);
  const double v11 = lattice_value(seed, r0 + 1, c0 + 1);
  return (v00 * (1 - tc) + v01 * tc) * (1 - tr) + (v10 * (1 - tc) + v11 * tc) * tr;
}

}  // namespace

void ElevationGrid::validate() const {
  if (rows < 2 || cols < 2) throw std::invalid_argument("elevation grid needs at least 2 rows and 2 columns");
  if (!(cell_size > 0.0) || std::isinf(cell_size)) throw std::invalid_argument("cell_size must be positive");
  if (values.size() != rows * cols) throw std::invalid_argument("elevation grid has the wrong number of values");
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("elevation grid contains a non-finite value");
  }
}

ElevationGrid flat_elevation(std::size_t rows, std::size_t cols, double cell_size) {
  ElevationGrid grid{rows, cols, std::vector<double>(rows * cols, 0.0), cell_size};
  grid.validate();
  return grid;
}

ElevationGrid synthetic_elevation(std::size_t rows, std::size_t cols, std::uint64_t seed, double relief,
                                  double cell_size) {
  ElevationGrid grid{rows, cols, std::vector<double>(rows * cols), cell_size};
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      grid.values[r * cols + c] =
          relief * (0.8 * value_noise(seed, 32.0, r, c) + 0.2 * value_noise(seed + 1, 8.0, r, c));
    }
  }
  grid.validate();
  return grid;
}

ElevationGrid read_elevation_csv(std::istream& in, double cell_size, double origin_x, double origin_y) {
  ElevationGrid grid;
  grid.cell_size = cell_size;
  grid.origin_x = origin_x;
  grid.origin_y = origin_y;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::size_t count = 0;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      const auto first = cell.find_first_not_of(" \t\r");
      const auto last = cell.find_last_not_of(" \t\r");
      if (first == std::string::npos) throw ParseError(line_no, "empty CSV cell");
      double value = 0.0;
      const char* begin = cell.data() + first;
      const char* end = cell.data() + last + 1;
      auto [ptr, ec] = std::from_chars(begin, end, value);
      if (ec != std::errc() || ptr != end) throw ParseError(line_no, "not a number: '" + cell + "'");
      grid.values.push_back(value);
      ++count;
    }
    if (grid.rows == 0) {
      grid.cols = count;
    } else if (count != grid.cols) {
      throw ParseError(line_no, "row has " + std::to_string(count) + " values, expected " + std::to_string(grid.cols));
    }
    ++grid.rows;
  }
  grid.validate();
  return grid;
}

ElevationGrid read_elevation_csv_file(const std::filesystem::path& path, double cell_size, double origin_x,
                                      double origin_y) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open elevation file " + path.string());
  return read_elevation_csv(in, cell_size, origin_x, origin_y);
}

QuadGraph gen_erdos_renyi(NodeId n, double p, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("Erdos-Renyi graphs need at least 2 nodes");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<ArcSpec> arcs;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      if (u == v) continue;
      if (unif(rng) < p) arcs.push_back({u, v, unif(rng)});
    }
  }
  return with_uniform_quad(QuadGraph::build(n, arcs), rng);
}

QuadGraph gen_configuration(NodeId n, std::uint32_t degree, std::uint64_t seed) {
  if (degree < 1) throw std::invalid_argument("degree must be at least 1");
  if (degree >= n) throw std::invalid_argument("degree must be below the node count");
  if ((static_cast<std::uint64_t>(n) * degree) % 2 != 0) {
    throw std::invalid_argument("node count times degree must be even");
  }
  std::mt19937_64 rng(seed);
  const std::uint64_t max_attempts = 100ULL * n;
  constexpr int kMaxRestarts = 50;

  std::vector<std::pair<NodeId, NodeId>> edges;
  bool realized = false;
  for (int restart = 0; restart < kMaxRestarts && !realized; ++restart) {
    std::vector<NodeId> stubs;
    stubs.reserve(static_cast<std::size_t>(n) * degree);
    for (NodeId u = 0; u < n; ++u) stubs.insert(stubs.end(), degree, u);
    edges.clear();
    std::unordered_set<std::uint64_t> present;
    std::uint64_t attempts = 0;
    realized = true;
    while (!stubs.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, stubs.size() - 1);
      std::size_t i = pick(rng);
      std::size_t j = pick(rng);
      const NodeId u = stubs[i];
      const NodeId v = stubs[j];
      const std::uint64_t key = (static_cast<std::uint64_t>(std::min(u, v)) << 32) | std::max(u, v);
      if (i == j || u == v || present.contains(key)) {
        if (++attempts > max_attempts) {
          realized = false;
          break;
        }
        continue;
      }
      present.insert(key);
      edges.emplace_back(u, v);
      if (i < j) std::swap(i, j);
      stubs[i] = stubs.back();
      stubs.pop_back();
      stubs[j] = stubs.back();
      stubs.pop_back();
    }
  }
  if (!realized) {
    throw std::runtime_error("could not realize the degree sequence without self-loops or multi-edges");
  }

  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<ArcSpec> arcs;
  arcs.reserve(edges.size() * 2);
  for (const auto& [u, v] : edges) {
    arcs.push_back({u, v, 0.0});
    arcs.push_back({v, u, 0.0});
  }
  for (ArcSpec& a : arcs) a.cost = unif(rng);
  return with_uniform_quad(QuadGraph::build(n, arcs), rng);
}

QuadFunction turn_penalty_gamma(const GridShape& shape, Cost weight) {
  if (!(weight >= 0.0) || std::isinf(weight)) throw std::invalid_argument("turn weight must be finite and >= 0");
  if (shape.rows < 2 || shape.cols < 2) throw std::invalid_argument("grid shape needs at least 2 x 2 cells");
  return [shape, weight](NodeId i, NodeId j, NodeId k) -> Cost {
    const std::size_t cols = shape.cols;
    const std::size_t ri = i / cols, ci = i % cols;
    const std::size_t rj = j / cols, cj = j % cols;
    const std::size_t rk = k / cols, ck = k % cols;
    const int ux = wrapped_delta(ci, cj, shape.cols, shape.wrap);
    const int uy = wrapped_delta(ri, rj, shape.rows, shape.wrap);
    const int vx = wrapped_delta(cj, ck, shape.cols, shape.wrap);
    const int vy = wrapped_delta(rj, rk, shape.rows, shape.wrap);
    if ((ux == 0 && uy == 0) || (vx == 0 && vy == 0)) throw std::domain_error("zero-length grid step");
    const double cross = static_cast<double>(ux * vy - uy * vx);
    const double dot = static_cast<double>(ux * vx + uy * vy);
    return weight * (std::atan2(std::abs(cross), dot) / std::numbers::pi);
  };
}

QuadFunction turn_penalty_gamma(const ElevationGrid& grid, Cost weight) {
  grid.validate();
  return turn_penalty_gamma(GridShape{grid.rows, grid.cols, false}, weight);
}

std::string grid_turn_tag(const GridShape& shape, Cost weight) {
  return "grid_turn " + std::to_string(shape.rows) + " " + std::to_string(shape.cols) + " " + format_cost(weight) +
         " " + (shape.wrap ? "1" : "0");
}

QuadGraph gen_grid(const ElevationGrid& grid, const GridOptions& options) {
  grid.validate();
  check_neighbors(options.neighbors);
  if (options.wrap && (grid.rows < 3 || grid.cols < 3)) {
    throw std::invalid_argument("wrap-around grids need at least 3 rows and 3 columns");
  }
  if (options.wrap && options.neighbors == 2) {
    throw std::invalid_argument("wrap-around is not supported for the acyclic 2-neighbour grid");
  }
  const std::size_t node_total = grid.rows * grid.cols;
  if (node_total >= std::numeric_limits<NodeId>::max()) throw std::length_error("grid too large");

  std::vector<ArcSpec> arcs;
  arcs.reserve(node_total * static_cast<std::size_t>(options.neighbors));
  const auto rows = static_cast<long>(grid.rows);
  const auto cols = static_cast<long>(grid.cols);
  for (long r = 0; r < rows; ++r) {
    for (long c = 0; c < cols; ++c) {
      for (int d = 0; d < options.neighbors; ++d) {
        long nr = r + kSteps[d].dr;
        long nc = c + kSteps[d].dc;
        if (options.wrap) {
          nr = (nr + rows) % rows;
          nc = (nc + cols) % cols;
        } else if (nr < 0 || nr >= rows || nc < 0 || nc >= cols) {
          continue;
        }
        const bool diagonal = kSteps[d].dr != 0 && kSteps[d].dc != 0;
        const double planar = diagonal ? grid.cell_size * std::numbers::sqrt2 : grid.cell_size;
        const double rise = grid.at(static_cast<std::size_t>(nr), static_cast<std::size_t>(nc)) -
                            grid.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
        arcs.push_back({static_cast<NodeId>(r * cols + c), static_cast<NodeId>(nr * cols + nc),
                        std::hypot(planar, rise)});
      }
    }
  }

  const auto n = static_cast<NodeId>(node_total);
  switch (options.quad) {
    case GridQuad::kZero:
      return QuadGraph::build(n, arcs);
    case GridQuad::kTurnPenalty: {
      const GridShape shape{grid.rows, grid.cols, options.wrap};
      return QuadGraph::build(
          n, arcs, FunctionalQuad{turn_penalty_gamma(shape, options.turn_weight), grid_turn_tag(shape, options.turn_weight)});
    }
    case GridQuad::kTable: {
      std::mt19937_64 rng(options.seed);
      return with_uniform_quad(QuadGraph::build(n, arcs), rng);
    }
  }
  throw std::invalid_argument("unknown grid quadratic model");
}

std::uint64_t grid_undirected_edges(std::size_t rows, std::size_t cols, int neighbors, bool wrap) {
  check_neighbors(neighbors);
  const std::uint64_t n = rows, m = cols;
  if (wrap) return n * m * static_cast<std::uint64_t>(neighbors / 2);
  std::uint64_t edges = n * (m - 1) + (n - 1) * m;
  if (neighbors == 8) edges += 2 * (n - 1) * (m - 1);
  return edges;
}

std::uint64_t grid_quad_arcs(std::size_t rows, std::size_t cols, int neighbors, bool wrap) {
  check_neighbors(neighbors);
  const std::uint64_t n = rows, m = cols;
  if (wrap) return n * m * static_cast<std::uint64_t>(neighbors) * static_cast<std::uint64_t>(neighbors);
  if (neighbors == 2) {
    // indeg * outdeg per cell: interior 2*2, first row/column lose one in-arc,
    // last row/column lose one out-arc.
    std::uint64_t total = 0;
    for (std::uint64_t r = 0; r < n; ++r) {
      for (std::uint64_t c = 0; c < m; ++c) {
        const std::uint64_t in = (r > 0) + (c > 0);
        const std::uint64_t out = (r + 1 < n) + (c + 1 < m);
        total += in * out;
      }
    }
    return total;
  }
  // Symmetric neighbourhoods: indeg = outdeg = degree, so sum of degree^2.
  const std::uint64_t corner = neighbors == 8 ? 3 : 2;
  const std::uint64_t side = neighbors == 8 ? 5 : 3;
  const std::uint64_t inner = neighbors == 8 ? 8 : 4;
  return 4 * corner * corner + 2 * ((n - 2) + (m - 2)) * side * side + (n - 2) * (m - 2) * inner * inner;
}

QuadGraph generate(const GenSpec& spec) {
  QuadGraph g = std::visit(
      [&](const auto& kind) -> QuadGraph {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, ErdosRenyiSpec>) {
          return gen_erdos_renyi(kind.nodes, kind.p, spec.cost_seed);
        } else if constexpr (std::is_same_v<T, ConfigurationSpec>) {
          return gen_configuration(kind.nodes, kind.degree, spec.cost_seed);
        } else {
          GridOptions options = kind.options;
          options.seed = spec.cost_seed;
          return gen_grid(kind.elevation, options);
        }
      },
      spec.kind);
  if (spec.lambda != 1.0) g = g.scale_quadratic(spec.lambda);
  return g;
}

}  // namespace aqsp
