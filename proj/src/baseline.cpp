#include "aqsp/baseline.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "aqsp/linear_dijkstra.hpp"

namespace aqsp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::uint64_t estimate_linearization_bytes(const QuadGraph& g) {
  return g.quad_arc_count() * (sizeof(ArcId) + sizeof(Cost)) +
         (static_cast<std::uint64_t>(g.arc_count()) + 1) * sizeof(std::uint64_t);
}

std::shared_ptr<const LinearizedCore> build_linearized_core(const QuadGraph& g) {
  auto core = std::make_shared<LinearizedCore>();
  core->arc_count = g.arc_count();
  core->offset.resize(static_cast<std::size_t>(g.arc_count()) + 1);
  core->target.reserve(g.quad_arc_count());
  core->weight.reserve(g.quad_arc_count());
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    core->offset[a] = core->target.size();
    g.for_each_extension(a, [&](ArcId b, Cost c, Cost q) {
      if (q < 0.0) throw std::domain_error("negative quadratic cost");
      core->target.push_back(b);
      core->weight.push_back(c + q);
    });
  }
  core->offset[g.arc_count()] = core->target.size();
  return core;
}

LinearizedGraph linearize(const QuadGraph& g, NodeId s, NodeId t, std::shared_ptr<const LinearizedCore> core) {
  if (s >= g.node_count() || t >= g.node_count()) throw std::out_of_range("query node outside the graph");
  if (!core) core = build_linearized_core(g);
  if (core->arc_count != g.arc_count()) throw std::invalid_argument("linearized core built for another graph");
  LinearizedGraph lg;
  lg.core = std::move(core);
  lg.source = s;
  lg.target = t;
  for (ArcId a : g.out_arcs(s)) lg.source_edges.emplace_back(a, g.cost(a));
  for (ArcId a : g.in_arcs(t)) lg.sink_arcs.push_back(a);
  return lg;
}

PathResult solve_lin(const QuadGraph& g, NodeId s, NodeId t, std::shared_ptr<const LinearizedCore> core) {
  if (s == t) throw std::invalid_argument("source and target must differ");
  PathResult result;
  const auto build_start = Clock::now();
  const LinearizedGraph lg = linearize(g, s, t, std::move(core));
  result.build_seconds = seconds_since(build_start);

  const auto search_start = Clock::now();
  const LinearizedCore& c = *lg.core;
  const std::uint32_t source = lg.super_source();
  const std::uint32_t sink = lg.super_sink();
  auto tree = linear_dijkstra(
      lg.node_count(), source,
      [&](std::uint32_t u, auto&& relax) {
        if (u == source) {
          for (const auto& [arc, w] : lg.source_edges) relax(arc, w, 0);
          return;
        }
        if (u == sink) return;
        for (std::uint64_t e = c.offset[u]; e < c.offset[u + 1]; ++e) relax(c.target[e], c.weight[e], 0);
        if (g.head(u) == t) relax(sink, 0.0, 0);
      },
      sink);
  result.stats.popped = tree.popped;

  if (tree.dist[sink] != kInfinity) {
    std::vector<ArcId> arcs;
    for (std::uint32_t u = tree.pred_node[sink]; u != source; u = tree.pred_node[u]) arcs.push_back(u);
    result.walk.push_back(g.tail(arcs.back()));
    for (auto it = arcs.rbegin(); it != arcs.rend(); ++it) result.walk.push_back(g.head(*it));
    result.cost = walk_cost(g, result.walk);
  }
  result.search_seconds = seconds_since(search_start);
  return result;
}

BruteForceResult brute_force(const QuadGraph& g, NodeId s, NodeId t, std::size_t max_arcs) {
  if (max_arcs < 1) throw std::invalid_argument("max_arcs must be at least 1");
  if (s >= g.node_count() || t >= g.node_count()) throw std::out_of_range("query node outside the graph");
  BruteForceResult result;

  // Nodes from which t is reachable (reverse graph search).
  std::vector<bool> reaches(g.node_count(), false);
  std::vector<NodeId> stack{t};
  reaches[t] = true;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (ArcId a : g.in_arcs(v)) {
      if (!reaches[g.tail(a)]) {
        reaches[g.tail(a)] = true;
        stack.push_back(g.tail(a));
      }
    }
  }
  if (!reaches[s]) return result;

  Walk current{s};
  auto dfs = [&](auto&& self, Cost so_far) -> void {
    ++result.expanded;
    const NodeId u = current.back();
    for (ArcId a : g.out_arcs(u)) {
      const NodeId v = g.head(a);
      if (!reaches[v]) continue;
      Cost next = current.size() == 1 ? g.cost(a) : so_far + g.cost(a) + g.quad_cost(current[current.size() - 2], u, v);
      if (next >= result.cost) continue;
      current.push_back(v);
      if (v == t) {
        result.cost = next;
        result.walk = current;
      }
      if (current.size() - 1 < max_arcs) self(self, next);
      current.pop_back();
    }
  };
  dfs(dfs, 0.0);
  return result;
}

}  // namespace aqsp
