#pragma once

// QuadGraph: immutable digraph with linear arc costs and an adjacent quadratic
// cost model q(i, j, k) over consecutive arc pairs (i, j), (j, k).
//
// Topology is shared between graphs derived from one another (scaling,
// materialization), so lambda sweeps over a large instance do not copy the
// adjacency arrays.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace aqsp {

using NodeId = std::uint32_t;
using ArcId = std::uint32_t;
using Cost = double;

inline constexpr Cost kInfinity = std::numeric_limits<Cost>::infinity();
inline constexpr ArcId kNoArc = std::numeric_limits<ArcId>::max();

struct ArcSpec {
  NodeId tail;
  NodeId head;
  Cost cost;
};

struct QuadTriple {
  NodeId i;
  NodeId j;
  NodeId k;
  Cost cost;
};

/// Pure evaluator Gamma(i, j, k) for on-the-fly quadratic costs.
using QuadFunction = std::function<Cost(NodeId, NodeId, NodeId)>;

/// Sparse list of quadratic triples. Unlisted consecutive triples cost 0.
struct StoredQuad {
  std::vector<QuadTriple> triples;
};

/// Quadratic costs computed at query time. `tag` names a registered
/// evaluator so the model can be written to and read back from .aqg files;
/// an empty tag means the model is not serializable.
struct FunctionalQuad {
  QuadFunction gamma;
  std::string tag;
};

using QuadSpec = std::variant<StoredQuad, FunctionalQuad>;

/// Rejected graph input. `kind` distinguishes the diagnostic.
class GraphError : public std::invalid_argument {
 public:
  enum class Kind {
    kNodeOutOfRange,
    kSelfLoop,
    kDuplicateArc,
    kNegativeCost,
    kNonFiniteCost,
    kNonConsecutiveTriple,
    kMissingArc,
    kNegativeLambda,
  };

  GraphError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}

  [[nodiscard]] Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class QuadGraph {
 public:
  /// Validates and freezes the graph. Throws GraphError on self-loops,
  /// parallel arcs, negative or non-finite costs, out-of-range node ids and
  /// stored triples over arcs that do not exist.
  static QuadGraph build(NodeId node_count, std::span<const ArcSpec> arcs, QuadSpec quad = StoredQuad{});

  [[nodiscard]] NodeId node_count() const noexcept { return topo_->node_count; }
  [[nodiscard]] ArcId arc_count() const noexcept { return static_cast<ArcId>(topo_->tail.size()); }
  /// |A_Q| = sum over nodes of indeg * outdeg, U-turn triples included.
  [[nodiscard]] std::uint64_t quad_arc_count() const noexcept { return topo_->quad_arc_count; }

  [[nodiscard]] NodeId tail(ArcId a) const { return topo_->tail[a]; }
  [[nodiscard]] NodeId head(ArcId a) const { return topo_->head[a]; }
  [[nodiscard]] Cost cost(ArcId a) const { return topo_->cost[a]; }

  /// Outgoing arcs of u, ordered by head node.
  [[nodiscard]] std::span<const ArcId> out_arcs(NodeId u) const {
    const auto& t = *topo_;
    return {t.out_arcs.data() + t.out_offset[u], t.out_arcs.data() + t.out_offset[u + 1]};
  }
  /// Incoming arcs of u, ordered by tail node.
  [[nodiscard]] std::span<const ArcId> in_arcs(NodeId u) const {
    const auto& t = *topo_;
    return {t.in_arcs.data() + t.in_offset[u], t.in_arcs.data() + t.in_offset[u + 1]};
  }
  [[nodiscard]] std::size_t out_degree(NodeId u) const { return out_arcs(u).size(); }
  [[nodiscard]] std::size_t in_degree(NodeId u) const { return in_arcs(u).size(); }

  [[nodiscard]] std::optional<ArcId> find_arc(NodeId u, NodeId v) const;

  /// q(i, j, k). Throws GraphError(kMissingArc) if (i,j) or (j,k) is absent.
  [[nodiscard]] Cost quad_cost(NodeId i, NodeId j, NodeId k) const;

  /// Calls fn(next_arc, linear_cost, quad_cost) for every arc leaving head(a),
  /// U-turns included. This is the relaxation loop of the label-setting
  /// solvers, so the model dispatch happens once per call, not per triple.
  template <class Fn>
  void for_each_extension(ArcId a, Fn&& fn) const;

  /// Same loop for the first arcs out of a source: no quadratic term.
  template <class Fn>
  void for_each_start(NodeId s, Fn&& fn) const {
    for (ArcId b : out_arcs(s)) fn(b, cost(b), Cost{0});
  }

  [[nodiscard]] bool is_functional() const noexcept { return static_cast<bool>(gamma_); }
  /// Registered tag of a functional model (empty when stored or untagged).
  [[nodiscard]] const std::string& functional_tag() const noexcept { return tag_; }
  [[nodiscard]] const QuadFunction& functional() const noexcept { return gamma_; }

  /// New graph with every quadratic cost multiplied by lambda >= 0.
  [[nodiscard]] QuadGraph scale_quadratic(double lambda) const;

  /// Stored copy holding the value of every consecutive triple explicitly.
  [[nodiscard]] QuadGraph materialize() const;

  /// Stored model from one value per consecutive triple, listed in
  /// for_each_extension order (arc index, then out-arcs by head). Linear
  /// costs and topology are shared with this graph.
  [[nodiscard]] QuadGraph with_stored_values(std::vector<Cost> values) const;

  /// Explicit list of non-zero stored triples (empty for functional models).
  [[nodiscard]] std::vector<QuadTriple> stored_triples() const;

  /// Number of undirected edges when the arc set is symmetric, else nullopt.
  [[nodiscard]] std::optional<std::uint64_t> undirected_edge_count() const;

 private:
  struct Topology {
    NodeId node_count = 0;
    std::vector<NodeId> tail;
    std::vector<NodeId> head;
    std::vector<Cost> cost;
    std::vector<std::size_t> out_offset;
    std::vector<ArcId> out_arcs;
    std::vector<std::size_t> in_offset;
    std::vector<ArcId> in_arcs;
    // Slot of arc b inside out_arcs(tail(b)).
    std::vector<std::uint32_t> out_slot;
    std::uint64_t quad_arc_count = 0;
  };

  // Base index of each arc's extensions in a flat stored-quad array.
  std::shared_ptr<const std::vector<std::uint64_t>> make_quad_offsets() const;

  std::shared_ptr<const Topology> topo_;
  // Stored model: one value per consecutive triple, indexed by
  // quad_offset[a] + out_slot[b]. Empty means all zero.
  std::shared_ptr<const std::vector<Cost>> stored_;
  std::shared_ptr<const std::vector<std::uint64_t>> stored_offset_;
  QuadFunction gamma_;
  std::string tag_;
};

template <class Fn>
void QuadGraph::for_each_extension(ArcId a, Fn&& fn) const {
  const NodeId i = tail(a);
  const NodeId j = head(a);
  const auto next = out_arcs(j);
  if (gamma_) {
    for (ArcId b : next) fn(b, cost(b), gamma_(i, j, head(b)));
  } else if (stored_ && !stored_->empty()) {
    const Cost* q = stored_->data() + (*stored_offset_)[a];
    for (std::size_t slot = 0; slot < next.size(); ++slot) fn(next[slot], cost(next[slot]), q[slot]);
  } else {
    for (ArcId b : next) fn(b, cost(b), Cost{0});
  }
}

}  // namespace aqsp
