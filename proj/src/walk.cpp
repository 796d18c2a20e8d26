#include "aqsp/walk.hpp"

#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace aqsp {

namespace {

ArcId require_arc(const QuadGraph& g, NodeId u, NodeId v) {
  if (auto a = g.find_arc(u, v)) return *a;
  throw GraphError(GraphError::Kind::kMissingArc,
                   "walk step (" + std::to_string(u) + "," + std::to_string(v) + ") is not an arc");
}

void require_length(const Walk& w) {
  if (w.size() < 2) throw std::invalid_argument("a walk needs at least two nodes");
}

}  // namespace

Cost walk_cost(const QuadGraph& g, const Walk& w) {
  require_length(w);
  Cost acc = g.cost(require_arc(g, w[0], w[1]));
  for (std::size_t i = 2; i < w.size(); ++i) {
    acc = acc + g.cost(require_arc(g, w[i - 1], w[i])) + g.quad_cost(w[i - 2], w[i - 1], w[i]);
  }
  return acc;
}

WalkCostParts walk_cost_parts(const QuadGraph& g, const Walk& w) {
  require_length(w);
  WalkCostParts parts;
  for (std::size_t i = 1; i < w.size(); ++i) {
    parts.linear += g.cost(require_arc(g, w[i - 1], w[i]));
    if (i >= 2) parts.quadratic += g.quad_cost(w[i - 2], w[i - 1], w[i]);
  }
  return parts;
}

std::optional<std::pair<std::size_t, std::size_t>> find_alpha_cycle(const Walk& w) {
  if (w.size() < 5) return std::nullopt;
  // For each interior node, the first later interior occurrence decides k.
  std::unordered_map<NodeId, std::size_t> first_seen;
  std::optional<std::pair<std::size_t, std::size_t>> best;
  for (std::size_t k = 1; k + 1 < w.size(); ++k) {
    auto [it, inserted] = first_seen.try_emplace(w[k], k);
    if (inserted) continue;
    const std::size_t l = it->second;
    if (!best || l < best->first) best = std::make_pair(l, k);
  }
  return best;
}

bool is_simple_path(const Walk& w) {
  std::unordered_set<NodeId> seen;
  for (NodeId v : w) {
    if (!seen.insert(v).second) return false;
  }
  return true;
}

SimplifiedWalk simplify_walk(const QuadGraph& g, const Walk& w) {
  const Cost input_cost = walk_cost(g, w);
  if (w.front() == w.back()) throw std::invalid_argument("cannot simplify a closed walk");
  Walk current = w;
  while (!is_simple_path(current)) {
    if (auto cycle = find_alpha_cycle(current)) {
      const auto [l, k] = *cycle;
      current.erase(current.begin() + static_cast<std::ptrdiff_t>(l) + 1,
                    current.begin() + static_cast<std::ptrdiff_t>(k) + 1);
      continue;
    }
    // Only the endpoints can still repeat.
    const NodeId source = current.front();
    std::size_t last_source = 0;
    for (std::size_t i = 1; i < current.size(); ++i) {
      if (current[i] == source) last_source = i;
    }
    if (last_source > 0) {
      current.erase(current.begin(), current.begin() + static_cast<std::ptrdiff_t>(last_source));
      continue;
    }
    const NodeId target = current.back();
    for (std::size_t i = 0; i + 1 < current.size(); ++i) {
      if (current[i] == target) {
        current.resize(i + 1);
        break;
      }
    }
  }
  SimplifiedWalk out;
  out.cost = walk_cost(g, current);
  out.improved = out.cost < input_cost;
  out.walk = std::move(current);
  return out;
}

}  // namespace aqsp
