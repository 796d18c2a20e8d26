#pragma once

// Textbook node-label Dijkstra over any adjacency exposed as a callback.
// Used for the backward cost-to-go, the linear upper bound and the
// linearization baseline.

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "aqsp/quad_graph.hpp"

namespace aqsp {

struct LinearTree {
  std::vector<Cost> dist;
  // Edge id used to reach each node (caller-defined numbering).
  std::vector<std::uint32_t> pred_edge;
  std::vector<std::uint32_t> pred_node;
  std::uint64_t popped = 0;
};

inline constexpr std::uint32_t kNoPred = std::numeric_limits<std::uint32_t>::max();

/// `neighbors(u, relax)` must call relax(v, weight, edge_id) for each edge
/// leaving u. Weights must be non-negative. Stops once `target` is settled.
template <class Neighbors>
LinearTree linear_dijkstra(std::size_t node_count, std::uint32_t source, Neighbors&& neighbors,
                           std::optional<std::uint32_t> target = std::nullopt) {
  LinearTree tree;
  tree.dist.assign(node_count, kInfinity);
  tree.pred_edge.assign(node_count, kNoPred);
  tree.pred_node.assign(node_count, kNoPred);
  std::vector<bool> settled(node_count, false);

  using Entry = std::pair<Cost, std::uint32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  tree.dist[source] = 0.0;
  queue.emplace(0.0, source);
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (settled[u]) continue;
    settled[u] = true;
    ++tree.popped;
    if (target && u == *target) break;
    neighbors(u, [&](std::uint32_t v, Cost w, std::uint32_t edge) {
      if (settled[v]) return;
      const Cost candidate = d + w;
      if (candidate < tree.dist[v]) {
        tree.dist[v] = candidate;
        tree.pred_edge[v] = edge;
        tree.pred_node[v] = u;
        queue.emplace(candidate, v);
      }
    });
  }
  return tree;
}

}  // namespace aqsp
