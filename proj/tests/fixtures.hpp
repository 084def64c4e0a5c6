#pragma once

#include "ttcube/gmfile.hpp"
#include "ttcube/graph_map.hpp"

#include <random>

namespace ttc_test {

extern unsigned g_seed;

inline std::mt19937 &rng() {
  static std::mt19937 gen(g_seed);
  return gen;
}

// a -> b, b -> ba on the one-vertex rose; eigenvalue the golden ratio.
inline ttc::GraphMap golden_map() {
  return ttc::parse_graph_map(R"(
vertices: v
edges:
  a: v v
  b: v v
basepoint: v
map:
  v -> v
  a -> b
  b -> b a
)");
}

// a -> ab, b -> c, c -> a; eigenvalue the real root of x^3 - x^2 - 1.
inline ttc::GraphMap tribonacci_map() {
  return ttc::parse_graph_map(R"(
vertices: v
edges:
  a: v v
  b: v v
  c: v v
map:
  v -> v
  a -> a b
  b -> c
  c -> a
)");
}

// Golden map plus a fixed non-loop edge; collapses in one round.
inline ttc::GraphMap golden_plus_fixed_edge() {
  return ttc::parse_graph_map(R"(
vertices: v w
edges:
  a: v v
  b: v v
  c: v w
basepoint: v
map:
  v -> v
  w -> w
  a -> b
  b -> b a
  c -> c
)");
}

// a <-> b swap on a two-loop rose: invariant subgraph has a cycle.
inline ttc::GraphMap swap_map() {
  return ttc::parse_graph_map(R"(
vertices: v
edges:
  a: v v
  b: v v
map:
  v -> v
  a -> b
  b -> a
)");
}

// a -> b, b -> b a -a: integer eigenvalue 2 and a fold, so weighted-flow
// cancellations are exact in floating point.
inline ttc::GraphMap folding_map() {
  return ttc::parse_graph_map(R"(
vertices: v
edges:
  a: v v
  b: v v
map:
  v -> v
  a -> b
  b -> b a -a
)");
}

// Single loop doubling map a -> aa.
inline ttc::GraphMap doubling_map() {
  return ttc::parse_graph_map(R"(
vertices: v
edges:
  a: v v
map:
  v -> v
  a -> a a
)");
}

inline ttc::Rat rand_position(int max_den = 997) {
  std::uniform_int_distribution<int> den_dist(2, max_den);
  int q = den_dist(rng());
  std::uniform_int_distribution<int> num_dist(1, q - 1);
  return ttc::Rat(num_dist(rng()), q);
}

inline ttc::EdgeId rand_edge(const ttc::Graph &g) {
  std::uniform_int_distribution<ttc::EdgeId> dist(
      0, static_cast<ttc::EdgeId>(g.edge_count() - 1));
  return dist(rng());
}

// Random concatenable path of the given length starting anywhere.
inline ttc::EdgePath rand_path(const ttc::Graph &g, std::size_t len) {
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<ttc::VertexId> vdist(
      0, static_cast<ttc::VertexId>(g.vertex_count() - 1));
  ttc::EdgePath p;
  p.base = vdist(rng());
  ttc::VertexId at = p.base;
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<ttc::DirectedEdge> options;
    for (ttc::EdgeId e = 0; e < g.edge_count(); ++e)
      for (bool fwd : {true, false})
        if (src(g, ttc::DirectedEdge{e, fwd}) == at)
          options.push_back({e, fwd});
    if (options.empty())
      break;
    std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
    auto step = options[pick(rng())];
    p.steps.push_back(step);
    at = dst(g, step);
  }
  return p;
}

} // namespace ttc_test
