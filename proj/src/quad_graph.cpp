#include "aqsp/quad_graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <string>

namespace aqsp {

namespace {

std::string node_pair(NodeId u, NodeId v) {
  return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace

QuadGraph QuadGraph::build(NodeId node_count, std::span<const ArcSpec> arcs, QuadSpec quad) {
  if (arcs.size() >= kNoArc) {
    throw std::length_error("arc count exceeds ArcId range");
  }
  auto topo = std::make_shared<Topology>();
  Topology& t = *topo;
  t.node_count = node_count;
  const std::size_t m = arcs.size();
  t.tail.resize(m);
  t.head.resize(m);
  t.cost.resize(m);

  std::vector<std::size_t> out_deg(node_count, 0);
  std::vector<std::size_t> in_deg(node_count, 0);
  for (std::size_t a = 0; a < m; ++a) {
    const ArcSpec& spec = arcs[a];
    if (spec.tail >= node_count || spec.head >= node_count) {
      throw GraphError(GraphError::Kind::kNodeOutOfRange,
                       "arc " + std::to_string(a) + " " + node_pair(spec.tail, spec.head) +
                           " references a node outside [0, " + std::to_string(node_count) + ")");
    }
    if (spec.tail == spec.head) {
      throw GraphError(GraphError::Kind::kSelfLoop,
                       "arc " + std::to_string(a) + " is a self-loop at node " + std::to_string(spec.tail));
    }
    if (std::isnan(spec.cost) || std::isinf(spec.cost)) {
      throw GraphError(GraphError::Kind::kNonFiniteCost,
                       "arc " + node_pair(spec.tail, spec.head) + " has a non-finite cost");
    }
    if (spec.cost < 0.0) {
      throw GraphError(GraphError::Kind::kNegativeCost,
                       "arc " + node_pair(spec.tail, spec.head) + " has negative cost " + format_double(spec.cost));
    }
    t.tail[a] = spec.tail;
    t.head[a] = spec.head;
    t.cost[a] = spec.cost;
    ++out_deg[spec.tail];
    ++in_deg[spec.head];
  }

  auto fill_csr = [&](const std::vector<std::size_t>& deg, std::vector<std::size_t>& offset,
                      std::vector<ArcId>& list, const std::vector<NodeId>& key, const std::vector<NodeId>& order) {
    offset.assign(static_cast<std::size_t>(node_count) + 1, 0);
    for (NodeId u = 0; u < node_count; ++u) offset[u + 1] = offset[u] + deg[u];
    list.resize(m);
    std::vector<std::size_t> cursor(offset.begin(), offset.end() - 1);
    for (std::size_t a = 0; a < m; ++a) list[cursor[key[a]]++] = static_cast<ArcId>(a);
    for (NodeId u = 0; u < node_count; ++u) {
      std::sort(list.begin() + static_cast<std::ptrdiff_t>(offset[u]),
                list.begin() + static_cast<std::ptrdiff_t>(offset[u + 1]),
                [&](ArcId x, ArcId y) { return order[x] < order[y]; });
    }
  };
  fill_csr(out_deg, t.out_offset, t.out_arcs, t.tail, t.head);
  fill_csr(in_deg, t.in_offset, t.in_arcs, t.head, t.tail);

  t.out_slot.resize(m);
  for (NodeId u = 0; u < node_count; ++u) {
    for (std::size_t p = t.out_offset[u]; p < t.out_offset[u + 1]; ++p) {
      if (p > t.out_offset[u] && t.head[t.out_arcs[p]] == t.head[t.out_arcs[p - 1]]) {
        throw GraphError(GraphError::Kind::kDuplicateArc,
                         "duplicate arc " + node_pair(u, t.head[t.out_arcs[p]]));
      }
      t.out_slot[t.out_arcs[p]] = static_cast<std::uint32_t>(p - t.out_offset[u]);
    }
  }
  for (NodeId u = 0; u < node_count; ++u) {
    t.quad_arc_count += static_cast<std::uint64_t>(in_deg[u]) * out_deg[u];
  }

  QuadGraph g;
  g.topo_ = std::move(topo);

  if (auto* fn = std::get_if<FunctionalQuad>(&quad)) {
    if (!fn->gamma) throw std::invalid_argument("functional quadratic model without an evaluator");
    g.gamma_ = std::move(fn->gamma);
    g.tag_ = std::move(fn->tag);
    return g;
  }

  const auto& triples = std::get<StoredQuad>(quad).triples;
  if (triples.empty()) return g;

  auto offsets = g.make_quad_offsets();
  std::vector<Cost> values(g.quad_arc_count(), 0.0);
  for (const QuadTriple& q : triples) {
    const auto first = (q.i < node_count && q.j < node_count) ? g.find_arc(q.i, q.j) : std::nullopt;
    const auto second = (q.j < node_count && q.k < node_count) ? g.find_arc(q.j, q.k) : std::nullopt;
    if (!first || !second) {
      throw GraphError(GraphError::Kind::kNonConsecutiveTriple,
                       "quadratic triple (" + std::to_string(q.i) + "," + std::to_string(q.j) + "," +
                           std::to_string(q.k) + ") does not lie on two consecutive arcs");
    }
    if (std::isnan(q.cost) || std::isinf(q.cost)) {
      throw GraphError(GraphError::Kind::kNonFiniteCost, "quadratic triple has a non-finite cost");
    }
    if (q.cost < 0.0) {
      throw GraphError(GraphError::Kind::kNegativeCost,
                       "quadratic triple (" + std::to_string(q.i) + "," + std::to_string(q.j) + "," +
                           std::to_string(q.k) + ") has negative cost " + format_double(q.cost));
    }
    values[(*offsets)[*first] + g.topo_->out_slot[*second]] = q.cost;
  }
  g.stored_offset_ = std::move(offsets);
  g.stored_ = std::make_shared<const std::vector<Cost>>(std::move(values));
  return g;
}

std::shared_ptr<const std::vector<std::uint64_t>> QuadGraph::make_quad_offsets() const {
  if (stored_offset_) return stored_offset_;
  const Topology& t = *topo_;
  auto offsets = std::make_shared<std::vector<std::uint64_t>>(t.tail.size());
  std::uint64_t running = 0;
  for (std::size_t a = 0; a < t.tail.size(); ++a) {
    (*offsets)[a] = running;
    running += t.out_offset[t.head[a] + 1] - t.out_offset[t.head[a]];
  }
  return offsets;
}

QuadGraph QuadGraph::with_stored_values(std::vector<Cost> values) const {
  if (values.size() != quad_arc_count()) {
    throw std::invalid_argument("expected " + std::to_string(quad_arc_count()) + " quadratic values, got " +
                                std::to_string(values.size()));
  }
  for (Cost v : values) {
    if (std::isnan(v) || std::isinf(v)) throw GraphError(GraphError::Kind::kNonFiniteCost, "non-finite quadratic cost");
    if (v < 0.0) throw GraphError(GraphError::Kind::kNegativeCost, "negative quadratic cost " + format_double(v));
  }
  QuadGraph g;
  g.topo_ = topo_;
  g.stored_offset_ = make_quad_offsets();
  g.stored_ = std::make_shared<const std::vector<Cost>>(std::move(values));
  return g;
}

std::optional<ArcId> QuadGraph::find_arc(NodeId u, NodeId v) const {
  if (u >= node_count() || v >= node_count()) return std::nullopt;
  const auto out = out_arcs(u);
  const Topology& t = *topo_;
  auto it = std::lower_bound(out.begin(), out.end(), v, [&](ArcId a, NodeId target) { return t.head[a] < target; });
  if (it == out.end() || t.head[*it] != v) return std::nullopt;
  return *it;
}

Cost QuadGraph::quad_cost(NodeId i, NodeId j, NodeId k) const {
  const auto first = find_arc(i, j);
  if (!first) throw GraphError(GraphError::Kind::kMissingArc, "no arc " + node_pair(i, j));
  const auto second = find_arc(j, k);
  if (!second) throw GraphError(GraphError::Kind::kMissingArc, "no arc " + node_pair(j, k));
  if (gamma_) return gamma_(i, j, k);
  if (!stored_ || stored_->empty()) return 0.0;
  return (*stored_)[(*stored_offset_)[*first] + topo_->out_slot[*second]];
}

QuadGraph QuadGraph::scale_quadratic(double lambda) const {
  if (!(lambda >= 0.0) || std::isinf(lambda)) {
    throw GraphError(GraphError::Kind::kNegativeLambda, "lambda must be finite and >= 0, got " + format_double(lambda));
  }
  if (gamma_) {
    QuadGraph g;
    g.topo_ = topo_;
    g.gamma_ = [inner = gamma_, lambda](NodeId i, NodeId j, NodeId k) { return lambda * inner(i, j, k); };
    if (!tag_.empty()) g.tag_ = "scaled " + format_double(lambda) + " " + tag_;
    return g;
  }
  if (!stored_ || stored_->empty()) return *this;
  std::vector<Cost> values(*stored_);
  for (Cost& v : values) v *= lambda;
  return with_stored_values(std::move(values));
}

QuadGraph QuadGraph::materialize() const {
  if (!gamma_) return *this;
  std::vector<Cost> values;
  values.reserve(quad_arc_count());
  for (ArcId a = 0; a < arc_count(); ++a) {
    for_each_extension(a, [&](ArcId, Cost, Cost q) { values.push_back(q); });
  }
  return with_stored_values(std::move(values));
}

std::vector<QuadTriple> QuadGraph::stored_triples() const {
  std::vector<QuadTriple> out;
  if (gamma_ || !stored_ || stored_->empty()) return out;
  for (ArcId a = 0; a < arc_count(); ++a) {
    for_each_extension(a, [&](ArcId b, Cost, Cost q) {
      if (q != 0.0) out.push_back({tail(a), head(a), head(b), q});
    });
  }
  return out;
}

std::optional<std::uint64_t> QuadGraph::undirected_edge_count() const {
  for (ArcId a = 0; a < arc_count(); ++a) {
    if (!find_arc(head(a), tail(a))) return std::nullopt;
  }
  return arc_count() / 2;
}

}  // namespace aqsp
