#pragma once

// Reference methods: the arc-node linearization benchmark ("Lin") and an
// exhaustive walk enumerator used as a test oracle on small graphs.

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "aqsp/quad_graph.hpp"
#include "aqsp/solvers.hpp"
#include "aqsp/walk.hpp"

namespace aqsp {

/// Query-independent part of the linearized graph: one node per original
/// arc and an edge arc(i,j) -> arc(j,k) of weight c(j,k) + q(i,j,k) for every
/// consecutive pair. Reusable across (s, t) queries on the same graph.
struct LinearizedCore {
  ArcId arc_count = 0;
  std::vector<std::uint64_t> offset;  // arc_count + 1 entries
  std::vector<ArcId> target;
  std::vector<Cost> weight;
};

struct LinearizedGraph {
  std::shared_ptr<const LinearizedCore> core;
  NodeId source = 0;
  NodeId target = 0;
  /// Super-source edges S -> arc(s, j), weight c(s, j).
  std::vector<std::pair<ArcId, Cost>> source_edges;
  /// Arcs (u, t); each gets a zero-weight edge to the super-sink T.
  std::vector<ArcId> sink_arcs;

  [[nodiscard]] std::size_t node_count() const { return static_cast<std::size_t>(core->arc_count) + 2; }
  [[nodiscard]] std::uint32_t super_source() const { return core->arc_count; }
  [[nodiscard]] std::uint32_t super_sink() const { return core->arc_count + 1; }
  [[nodiscard]] std::uint64_t edge_count() const {
    return core->target.size() + source_edges.size() + sink_arcs.size();
  }
};

std::shared_ptr<const LinearizedCore> build_linearized_core(const QuadGraph& g);

/// Bytes the linearized core would occupy; lets callers skip instances that
/// cannot fit before allocating.
std::uint64_t estimate_linearization_bytes(const QuadGraph& g);

LinearizedGraph linearize(const QuadGraph& g, NodeId s, NodeId t,
                          std::shared_ptr<const LinearizedCore> core = nullptr);

/// Linear Dijkstra from S to T on the linearized graph, mapped back to a
/// walk of g. build_seconds covers linearization, search_seconds the rest.
PathResult solve_lin(const QuadGraph& g, NodeId s, NodeId t,
                     std::shared_ptr<const LinearizedCore> core = nullptr);

struct BruteForceResult {
  Cost cost = kInfinity;
  std::optional<Walk> walk;
  std::uint64_t expanded = 0;
};

/// Depth-first enumeration of every s-t walk with at most max_arcs arcs.
/// Partial walks already as expensive as the incumbent are cut (costs are
/// non-negative, so no extension can become cheaper), and nodes that cannot
/// reach t are skipped. Exponential: keep instances small.
BruteForceResult brute_force(const QuadGraph& g, NodeId s, NodeId t, std::size_t max_arcs);

}  // namespace aqsp
