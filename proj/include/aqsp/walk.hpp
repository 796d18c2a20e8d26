#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "aqsp/quad_graph.hpp"

namespace aqsp {

/// Node sequence (v0, ..., vk), k >= 1. Nodes may repeat.
using Walk = std::vector<NodeId>;

/// Linear and quadratic components of a walk's compound cost.
struct WalkCostParts {
  Cost linear = 0.0;
  Cost quadratic = 0.0;
};

/// Compound cost: arc costs plus q over every consecutive arc pair.
///
/// Accumulates left to right as ((acc + c(j,k)) + q(i,j,k)), the same order
/// the label-setting solvers use, so the cost of a reconstructed walk equals
/// its label bit for bit. Throws GraphError(kMissingArc) if a step is not an
/// arc and std::invalid_argument for walks shorter than one arc.
Cost walk_cost(const QuadGraph& g, const Walk& w);

WalkCostParts walk_cost_parts(const QuadGraph& g, const Walk& w);

/// Indices (l, k), 0 < l < k < |w| - 1, with w[l] == w[k]: smallest l, then
/// smallest k. nullopt when no interior node repeats.
std::optional<std::pair<std::size_t, std::size_t>> find_alpha_cycle(const Walk& w);

/// True iff no node appears twice.
bool is_simple_path(const Walk& w);

struct SimplifiedWalk {
  Walk walk;
  Cost cost = 0.0;
  /// Strictly cheaper than the input walk.
  bool improved = false;
};

/// Cuts cycles until the walk is a simple path with the same endpoints.
///
/// Interior alpha-cycles (w[l-1], ..., w[k+1]) are replaced by
/// (w[l-1], w[l], w[k+1]), leftmost first. Loops through the source are cut
/// by restarting at its last occurrence and loops through the target by
/// stopping at its first occurrence.
SimplifiedWalk simplify_walk(const QuadGraph& g, const Walk& w);

}  // namespace aqsp
