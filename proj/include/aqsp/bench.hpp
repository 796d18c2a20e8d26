#pragma once

// Experiment grid runner: generates instances per (size, repetition), solves
// each with the selected algorithms for every lambda and records one row per
// (instance, lambda, algorithm).

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "aqsp/generators.hpp"
#include "aqsp/solvers.hpp"

namespace aqsp {

enum class Family { kErdos, kConfigModel, kGrid, kGridStress };

const char* family_name(Family family);
std::optional<Family> parse_family(std::string_view name);

struct ExperimentConfig {
  Family family = Family::kErdos;
  /// Node counts for random families, side length N (N x N cells) for grids.
  std::vector<std::uint64_t> sizes;
  double p = 0.8;
  std::uint32_t degree = 8;
  int neighbors = 8;
  GridQuad grid_quad = GridQuad::kTurnPenalty;
  Cost turn_weight = 1.0;
  double relief = 4.0;
  /// Solve grids with a stored copy of the functional model.
  bool materialize = false;
  std::vector<double> lambdas{1.0};
  std::uint32_t repetitions = 1;
  std::vector<Algorithm> algorithms;
  std::uint64_t seed = 1;
  /// Instances whose estimated footprint for an algorithm exceeds this are
  /// recorded as OOM-skipped instead of being attempted.
  double memory_limit_gb = 4.0;

  /// Throws std::invalid_argument on empty sizes/algorithms/lambdas,
  /// repetitions < 1, negative lambdas or non-positive sizes.
  void validate() const;
};

enum class RowStatus { kOk, kNoWalk, kOomSkipped };

const char* status_name(RowStatus status);

struct ResultRow {
  std::string instance_id;
  Family family = Family::kErdos;
  std::uint64_t size = 0;
  double lambda = 1.0;
  std::uint32_t rep = 0;
  std::uint64_t nodes = 0;
  std::uint64_t arcs = 0;
  /// Undirected edge count when the arc set is symmetric, else 0.
  std::uint64_t undirected_edges = 0;
  std::uint64_t quad_arcs = 0;
  Algorithm algorithm = Algorithm::kAqDijkstra;
  RowStatus status = RowStatus::kOk;
  double build_time_s = 0.0;
  double search_time_s = 0.0;
  std::uint64_t popped = 0;
  Cost cost = kInfinity;
  /// All algorithms that ran on this (instance, lambda) cell agree.
  bool agreement = true;
};

/// Tolerance used for every cross-algorithm cost comparison.
inline constexpr double kAgreementTolerance = 1e-9;

/// |a - b| <= tol * max(1, |a|, |b|); two infinities agree.
bool costs_agree(Cost a, Cost b, double tol = kAgreementTolerance);

/// Deterministic per-instance seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t size_index, std::uint64_t rep);

/// Builds the instance for (size, rep) exactly as run_bench does.
QuadGraph make_instance(const ExperimentConfig& config, std::uint64_t size, std::uint32_t rep);

/// Query target: the last node, or the antipodal cell for torus grids.
/// The source is always node 0.
NodeId bench_target(const ExperimentConfig& config, std::uint64_t size, const QuadGraph& g);

std::vector<ResultRow> run_bench(const ExperimentConfig& config, std::ostream* progress = nullptr);

/// Header plus one line per row; stable column order.
void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows);

/// min/avg/max search time per (size, lambda, algorithm) over ok rows.
void write_summary_csv(std::ostream& out, const std::vector<ResultRow>& rows);

/// gnuplot script plotting the summary file named `summary_csv`.
void write_plot_script(std::ostream& out, const std::string& summary_csv, const ExperimentConfig& config);

}  // namespace aqsp
