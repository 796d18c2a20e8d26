#include "aqsp/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>

#include "aqsp/baseline.hpp"
#include "aqsp/linear_dijkstra.hpp"

namespace aqsp {

namespace {

void check_node(const QuadGraph& g, NodeId u, const char* role) {
  if (u >= g.node_count()) {
    throw std::out_of_range(std::string(role) + " node " + std::to_string(u) + " is outside [0, " +
                            std::to_string(g.node_count()) + ")");
  }
}

// Shared label-setting loop. `estimate(node)` is the cost-to-go lower bound
// (zero for plain aqD); arcs whose head has an infinite estimate are pruned.
// Queue keys are clamped to the key being extracted, which keeps the
// extraction sequence monotone under floating-point rounding of the bounds.
template <class Estimate>
SearchResult arc_label_search(const QuadGraph& g, NodeId s, std::optional<NodeId> stop_at, Estimate&& estimate,
                              ExtractionTrace* trace) {
  const ArcId arc_count = g.arc_count();
  SearchResult result;
  ArcLabels& labels = result.labels;
  SearchStats& stats = result.stats;
  labels.source = s;
  labels.dist.assign(static_cast<std::size_t>(arc_count) + 1, kInfinity);
  labels.pred.assign(static_cast<std::size_t>(arc_count) + 1, kNoArc);
  const ArcId start = arc_count;
  labels.dist[start] = 0.0;
  const NodeId stop_node = stop_at.value_or(g.node_count());

  std::vector<bool> settled(static_cast<std::size_t>(arc_count) + 1, false);
  using Entry = std::pair<Cost, ArcId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  if (estimate(s) == kInfinity) return result;
  queue.emplace(estimate(s), start);

  while (!queue.empty()) {
    const auto [key, a] = queue.top();
    queue.pop();
    if (settled[a]) {
      ++stats.stale;
      continue;
    }
    settled[a] = true;
    ++stats.popped;
    if (trace) trace->push_back({a, key});
    if (a != start && g.head(a) == stop_node) break;

    const Cost base = labels.dist[a];
    auto relax = [&](ArcId b, Cost c, Cost q) {
      ++stats.relaxations;
      if (q < 0.0) {
        throw std::domain_error("negative quadratic cost on triple through arc " + std::to_string(a));
      }
      if (settled[b]) return;
      const Cost remaining = estimate(g.head(b));
      if (remaining == kInfinity) return;
      const Cost candidate = base + c + q;
      if (candidate < labels.dist[b]) {
        labels.dist[b] = candidate;
        labels.pred[b] = a;
        ++stats.updated;
        queue.emplace(std::max(candidate + remaining, key), b);
      }
    };
    if (a == start) {
      g.for_each_start(s, relax);
    } else {
      g.for_each_extension(a, relax);
    }
  }
  return result;
}

}  // namespace

SearchResult aq_dijkstra(const QuadGraph& g, NodeId s, ExtractionTrace* trace) {
  check_node(g, s, "source");
  return arc_label_search(g, s, std::nullopt, [](NodeId) { return Cost{0}; }, trace);
}

CostToGo backward_cost_to_go(const QuadGraph& g, NodeId t) {
  check_node(g, t, "target");
  auto tree = linear_dijkstra(g.node_count(), t, [&](std::uint32_t u, auto&& relax) {
    for (ArcId a : g.in_arcs(u)) relax(g.tail(a), g.cost(a), a);
  });
  return CostToGo{t, std::move(tree.dist)};
}

SearchResult aq_astar(const QuadGraph& g, NodeId s, NodeId t, const AStarOptions& options) {
  check_node(g, s, "source");
  check_node(g, t, "target");
  if (s == t) throw std::invalid_argument("source and target must differ");
  return aq_astar(g, s, t, backward_cost_to_go(g, t), options);
}

SearchResult aq_astar(const QuadGraph& g, NodeId s, NodeId t, const CostToGo& bounds, const AStarOptions& options) {
  check_node(g, s, "source");
  check_node(g, t, "target");
  if (s == t) throw std::invalid_argument("source and target must differ");
  if (bounds.target != t || bounds.bound.size() != g.node_count()) {
    throw std::invalid_argument("cost-to-go bounds were computed for a different target or graph");
  }
  const Cost* bound = bounds.bound.data();
  auto estimate = [bound](NodeId u) { return bound[u]; };
  if (options.run_to_exhaustion) return arc_label_search(g, s, std::nullopt, estimate, options.trace);
  return arc_label_search(g, s, t, estimate, options.trace);
}

std::optional<Walk> extract_walk(const QuadGraph& g, const ArcLabels& labels, NodeId t) {
  check_node(g, t, "target");
  ArcId best = kNoArc;
  for (ArcId a : g.in_arcs(t)) {
    if (labels.dist[a] == kInfinity) continue;
    if (best == kNoArc || labels.dist[a] < labels.dist[best] || (labels.dist[a] == labels.dist[best] && a < best)) {
      best = a;
    }
  }
  if (best == kNoArc) return std::nullopt;

  std::vector<ArcId> arcs;
  for (ArcId a = best; a != labels.start_arc(); a = labels.pred[a]) {
    if (a == kNoArc || arcs.size() > g.arc_count()) {
      throw std::logic_error("broken predecessor chain while rebuilding the walk");
    }
    arcs.push_back(a);
  }
  Walk walk;
  walk.reserve(arcs.size() + 1);
  walk.push_back(g.tail(arcs.back()));
  for (auto it = arcs.rbegin(); it != arcs.rend(); ++it) walk.push_back(g.head(*it));
  return walk;
}

std::optional<UpperBound> linear_path_upper_bound(const QuadGraph& g, NodeId s, NodeId t) {
  check_node(g, s, "source");
  check_node(g, t, "target");
  if (s == t) throw std::invalid_argument("source and target must differ");
  auto tree = linear_dijkstra(
      g.node_count(), s,
      [&](std::uint32_t u, auto&& relax) {
        for (ArcId a : g.out_arcs(u)) relax(g.head(a), g.cost(a), a);
      },
      t);
  if (tree.dist[t] == kInfinity) return std::nullopt;
  UpperBound ub;
  for (NodeId v = t; v != s; v = tree.pred_node[v]) ub.walk.push_back(v);
  ub.walk.push_back(s);
  std::reverse(ub.walk.begin(), ub.walk.end());
  ub.linear_cost = tree.dist[t];
  ub.cost = walk_cost(g, ub.walk);
  return ub;
}

const char* algorithm_name(Algorithm algo) {
  switch (algo) {
    case Algorithm::kAqDijkstra:
      return "aqd";
    case Algorithm::kAqAStar:
      return "aqastar";
    case Algorithm::kLin:
      return "lin";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "aqd") return Algorithm::kAqDijkstra;
  if (name == "aqastar") return Algorithm::kAqAStar;
  if (name == "lin") return Algorithm::kLin;
  return std::nullopt;
}

void annotate_alpha(const QuadGraph& g, PathResult& result) {
  result.alpha_report.reset();
  if (!result.found()) {
    result.is_simple = false;
    return;
  }
  result.is_simple = is_simple_path(result.walk);
  if (result.is_simple) return;
  SimplifiedWalk simplified = simplify_walk(g, result.walk);
  AlphaReport report;
  report.simplified_cost = simplified.cost;
  report.improving = simplified.cost > result.cost;
  report.simplified = std::move(simplified.walk);
  result.alpha_report = std::move(report);
}

PathResult solve(const QuadGraph& g, NodeId s, NodeId t, Algorithm algo, const SolveOptions& options) {
  check_node(g, s, "source");
  check_node(g, t, "target");
  if (s == t) throw std::invalid_argument("source and target must differ");

  PathResult result;
  if (algo == Algorithm::kLin) {
    result = solve_lin(g, s, t);
  } else {
    using Clock = std::chrono::steady_clock;
    const auto started = Clock::now();
    SearchResult search = algo == Algorithm::kAqDijkstra
                              ? aq_dijkstra(g, s)
                              : aq_astar(g, s, t, AStarOptions{.run_to_exhaustion = options.exhaustive});
    auto walk = extract_walk(g, search.labels, t);
    result.search_seconds = std::chrono::duration<double>(Clock::now() - started).count();
    result.stats = search.stats;
    if (walk) {
      result.walk = std::move(*walk);
      result.cost = walk_cost(g, result.walk);
    }
  }
  annotate_alpha(g, result);
  return result;
}

}  // namespace aqsp
