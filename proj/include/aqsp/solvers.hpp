#pragma once

// Arc-label searches for the adjacent quadratic shortest path problem.
//
// Labels live on arcs, not nodes: dist[a] is the cheapest walk from the
// source whose last arc is a, so extending it by b = (j, k) costs
// c(j, k) + q(i, j, k). A virtual start arc (s, s) with zero label seeds the
// search; the first real arc carries no quadratic term.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "aqsp/quad_graph.hpp"
#include "aqsp/walk.hpp"

namespace aqsp {

struct SearchStats {
  std::uint64_t popped = 0;       // labels settled
  std::uint64_t stale = 0;        // outdated queue entries skipped
  std::uint64_t relaxations = 0;  // extension tests
  std::uint64_t updated = 0;      // successful label improvements
};

struct ArcLabels {
  NodeId source = 0;
  /// Size arc_count + 1; the last slot is the virtual start arc.
  std::vector<Cost> dist;
  /// Predecessor arc, start_arc() for first arcs, kNoArc when unreached.
  std::vector<ArcId> pred;

  [[nodiscard]] ArcId start_arc() const { return static_cast<ArcId>(dist.size() - 1); }
};

struct SearchResult {
  ArcLabels labels;
  SearchStats stats;
};

struct Extraction {
  ArcId arc;
  Cost key;
};

/// Optional per-extraction log, in extraction order (virtual start arc
/// included). Used to check monotone, at-most-once extraction.
using ExtractionTrace = std::vector<Extraction>;

/// Linear lower bound B_u on the cost from u to the target.
struct CostToGo {
  NodeId target = 0;
  std::vector<Cost> bound;
};

/// Single-source arc-label Dijkstra. Runs until the queue is empty.
/// Throws std::out_of_range for a bad source.
SearchResult aq_dijkstra(const QuadGraph& g, NodeId s, ExtractionTrace* trace = nullptr);

/// Linear shortest distance from every node to t, quadratic costs ignored.
CostToGo backward_cost_to_go(const QuadGraph& g, NodeId t);

struct AStarOptions {
  /// Keep extracting after the first arc into t, as in the plain
  /// loop-until-empty formulation.
  bool run_to_exhaustion = false;
  ExtractionTrace* trace = nullptr;
};

/// Arc-label search ordered by dist[a] + B[head(a)]. Arcs whose head cannot
/// reach t are never queued. Throws std::out_of_range for bad nodes and
/// std::invalid_argument when s == t.
SearchResult aq_astar(const QuadGraph& g, NodeId s, NodeId t, const AStarOptions& options = {});
SearchResult aq_astar(const QuadGraph& g, NodeId s, NodeId t, const CostToGo& bounds,
                      const AStarOptions& options = {});

/// Walk ending at the cheapest arc into t, rebuilt from predecessors.
/// nullopt when no arc into t was reached.
std::optional<Walk> extract_walk(const QuadGraph& g, const ArcLabels& labels, NodeId t);

struct UpperBound {
  Walk walk;
  Cost cost = 0.0;
  Cost linear_cost = 0.0;
};

/// A linear shortest s-t path evaluated under the full objective.
/// nullopt when t is unreachable.
std::optional<UpperBound> linear_path_upper_bound(const QuadGraph& g, NodeId s, NodeId t);

enum class Algorithm { kAqDijkstra, kAqAStar, kLin };

const char* algorithm_name(Algorithm algo);
std::optional<Algorithm> parse_algorithm(std::string_view name);

struct AlphaReport {
  Walk simplified;
  Cost simplified_cost = 0.0;
  /// The cycles removed were improving: the simple path costs strictly more.
  bool improving = false;
};

struct PathResult {
  /// Empty when t is unreachable.
  Walk walk;
  Cost cost = kInfinity;
  bool is_simple = false;
  std::optional<AlphaReport> alpha_report;
  SearchStats stats;
  double build_seconds = 0.0;
  double search_seconds = 0.0;

  [[nodiscard]] bool found() const { return !walk.empty(); }
};

struct SolveOptions {
  /// Early termination for aqA*; ignored by the other algorithms.
  bool exhaustive = false;
};

/// Runs one algorithm, rebuilds the walk and checks it for alpha-cycles.
/// Throws on negative costs or invalid endpoints; an unreachable target is a
/// normal result with found() == false.
PathResult solve(const QuadGraph& g, NodeId s, NodeId t, Algorithm algo, const SolveOptions& options = {});

/// Fills is_simple and alpha_report from the walk.
void annotate_alpha(const QuadGraph& g, PathResult& result);

}  // namespace aqsp
