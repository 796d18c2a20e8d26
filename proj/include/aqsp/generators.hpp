#pragma once

// Instance synthesis: Erdos-Renyi digraphs, constant-degree configuration
// model graphs and spatial grid graphs over an elevation matrix.
//
// Random costs are Unif[0, 1) from std::mt19937_64; for a fixed seed the
// output is identical across runs on the same standard library.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "aqsp/quad_graph.hpp"

namespace aqsp {

/// N x M elevations, row-major. Node (r, c) has id r * cols + c.
struct ElevationGrid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;
  double cell_size = 1.0;
  double origin_x = 0.0;
  double origin_y = 0.0;

  [[nodiscard]] double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
  /// Throws std::invalid_argument unless rows, cols >= 2, cell_size > 0 and
  /// values has rows * cols finite entries.
  void validate() const;
};

ElevationGrid flat_elevation(std::size_t rows, std::size_t cols, double cell_size = 1.0);

/// Smooth pseudo-random terrain (two octaves of bilinear value noise) with
/// peak-to-peak amplitude about `relief`.
ElevationGrid synthetic_elevation(std::size_t rows, std::size_t cols, std::uint64_t seed, double relief = 4.0,
                                  double cell_size = 1.0);

/// Plain CSV, one grid row per line.
ElevationGrid read_elevation_csv(std::istream& in, double cell_size = 1.0, double origin_x = 0.0,
                                 double origin_y = 0.0);
ElevationGrid read_elevation_csv_file(const std::filesystem::path& path, double cell_size = 1.0,
                                      double origin_x = 0.0, double origin_y = 0.0);

/// Each ordered pair (u, v), u != v, becomes an arc with probability p.
QuadGraph gen_erdos_renyi(NodeId n, double p, std::uint64_t seed);

/// Constant-degree configuration model: undirected stub matching without
/// self-loops or multi-edges, each edge then split into two opposing arcs.
QuadGraph gen_configuration(NodeId n, std::uint32_t degree, std::uint64_t seed);

struct GridShape {
  std::size_t rows = 0;
  std::size_t cols = 0;
  bool wrap = false;
};

/// Gamma(i, j, k) = weight * theta / pi, theta in [0, pi] the planar turning
/// angle between steps (i, j) and (j, k). Straight: 0, right angle:
/// weight / 2, U-turn: weight.
QuadFunction turn_penalty_gamma(const GridShape& shape, Cost weight);
QuadFunction turn_penalty_gamma(const ElevationGrid& grid, Cost weight);

/// Registry tag understood by resolve_quad_tag.
std::string grid_turn_tag(const GridShape& shape, Cost weight);

enum class GridQuad { kZero, kTurnPenalty, kTable };

struct GridOptions {
  /// 2: east and south only (acyclic); 4: the four axis moves; 8: adds diagonals.
  int neighbors = 8;
  /// Torus neighbourhood; needs rows, cols >= 3.
  bool wrap = false;
  GridQuad quad = GridQuad::kTurnPenalty;
  Cost turn_weight = 1.0;
  /// Draws for GridQuad::kTable.
  std::uint64_t seed = 0;
};

/// Arc cost is the ground distance: axis steps cell_size, diagonals
/// cell_size * sqrt(2), combined with the elevation difference.
QuadGraph gen_grid(const ElevationGrid& grid, const GridOptions& options);

/// Closed forms for the grid builder's counts.
std::uint64_t grid_undirected_edges(std::size_t rows, std::size_t cols, int neighbors, bool wrap);
std::uint64_t grid_quad_arcs(std::size_t rows, std::size_t cols, int neighbors, bool wrap);

struct ErdosRenyiSpec {
  NodeId nodes = 0;
  double p = 0.0;
};
struct ConfigurationSpec {
  NodeId nodes = 0;
  std::uint32_t degree = 0;
};
struct GridSpec {
  ElevationGrid elevation;
  GridOptions options;
};

struct GenSpec {
  std::variant<ErdosRenyiSpec, ConfigurationSpec, GridSpec> kind;
  std::uint64_t cost_seed = 0;
  double lambda = 1.0;
};

/// Dispatches to the generator and applies lambda scaling.
QuadGraph generate(const GenSpec& spec);

}  // namespace aqsp
