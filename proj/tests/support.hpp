#pragma once

#include <random>
#include <vector>

#include "aqsp/generators.hpp"
#include "aqsp/quad_graph.hpp"
#include "aqsp/walk.hpp"

namespace aqsp::testing {

// s=0, a=1, b=2, t=3
inline QuadGraph small_diamond() {
  const std::vector<ArcSpec> arcs{{0, 1, 1.0}, {1, 3, 1.0}, {0, 2, 1.0}, {2, 3, 10.0}};
  return QuadGraph::build(4, arcs, StoredQuad{{{0, 1, 3, 10.0}, {0, 2, 3, 0.0}}});
}

// 1 -> 2 -> 3 -> 4 -> 2 -> 5, plus the shortcut 2 -> 5; node 0 unused.
inline QuadGraph loop_graph(Cost shortcut_turn) {
  const std::vector<ArcSpec> arcs{{1, 2, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}, {4, 2, 1.0}, {2, 5, 1.0}};
  return QuadGraph::build(6, arcs, StoredQuad{{{1, 2, 5, shortcut_turn}}});
}

// Random digraph with random stored triples. Small and dense enough to have
// many alternative walks.
inline QuadGraph random_stored(std::mt19937_64& rng, NodeId n, double p, double q_scale = 1.0) {
  std::bernoulli_distribution keep(p);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<ArcSpec> arcs;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      if (u != v && keep(rng)) arcs.push_back({u, v, unit(rng)});
    }
  }
  std::vector<QuadTriple> triples;
  for (const ArcSpec& x : arcs) {
    for (const ArcSpec& y : arcs) {
      if (x.head == y.tail) triples.push_back({x.tail, x.head, y.head, q_scale * unit(rng)});
    }
  }
  return QuadGraph::build(n, arcs, StoredQuad{std::move(triples)});
}

// Random walk following out-arcs; may be shorter than `arcs` if it gets stuck.
inline Walk random_walk(const QuadGraph& g, std::mt19937_64& rng, NodeId start, std::size_t arcs) {
  Walk w{start};
  for (std::size_t i = 0; i < arcs; ++i) {
    auto out = g.out_arcs(w.back());
    if (out.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, out.size() - 1);
    w.push_back(g.head(out[pick(rng)]));
  }
  return w;
}

}  // namespace aqsp::testing
