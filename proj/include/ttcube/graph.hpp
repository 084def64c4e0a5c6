#pragma once

#include "ttcube/error.hpp"
#include "ttcube/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace ttc {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Finite connected graph with named vertices and named undirected edges.
/// Each edge carries an ordered endpoint pair; loops are permitted.
class Graph {
public:
  struct EdgeRec {
    std::string name;
    VertexId init = 0;
    VertexId term = 0;
  };

  VertexId add_vertex(const std::string &name);
  EdgeId add_edge(const std::string &name, VertexId init, VertexId term);
  EdgeId add_edge(const std::string &name, const std::string &init,
                  const std::string &term);

  std::size_t vertex_count() const { return vertex_names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::string &vertex_name(VertexId v) const { return vertex_names_[v]; }
  const EdgeRec &edge(EdgeId e) const { return edges_[e]; }
  const std::string &edge_name(EdgeId e) const { return edges_[e].name; }

  VertexId vertex_id(const std::string &name) const;
  EdgeId edge_id(const std::string &name) const;
  bool has_vertex(const std::string &name) const {
    return vertex_ids_.count(name) > 0;
  }
  bool has_edge(const std::string &name) const {
    return edge_ids_.count(name) > 0;
  }

  bool connected() const;

private:
  std::vector<std::string> vertex_names_;
  std::vector<EdgeRec> edges_;
  std::map<std::string, VertexId> vertex_ids_;
  std::map<std::string, EdgeId> edge_ids_;
};

/// An oriented edge: the underlying edge plus a direction flag.
struct DirectedEdge {
  EdgeId edge = 0;
  bool forward = true;

  DirectedEdge reversed() const { return {edge, !forward}; }
  auto operator<=>(const DirectedEdge &) const = default;
};

inline VertexId src(const Graph &g, DirectedEdge d) {
  return d.forward ? g.edge(d.edge).init : g.edge(d.edge).term;
}
inline VertexId dst(const Graph &g, DirectedEdge d) {
  return d.forward ? g.edge(d.edge).term : g.edge(d.edge).init;
}

/// Combinatorial edge path. An empty path is anchored at `base`; for a
/// nonempty path `base` must equal the source of the first step.
struct EdgePath {
  std::vector<DirectedEdge> steps;
  VertexId base = 0;

  bool empty() const { return steps.empty(); }
  std::size_t size() const { return steps.size(); }
};

bool concatenable(const Graph &g, const EdgePath &p);
VertexId path_initial(const Graph &g, const EdgePath &p);
VertexId path_terminal(const Graph &g, const EdgePath &p);

EdgePath reverse(const Graph &g, const EdgePath &p);

/// Free reduction: removes every step immediately followed by its reversal,
/// cascading. Endpoint-preserving and idempotent.
EdgePath tighten(const Graph &g, const EdgePath &p);

/// Interior point of an edge at an exact position in (0,1), measured along
/// the edge's preferred orientation.
struct EdgePoint {
  EdgeId edge = 0;
  Rat pos;

  bool operator==(const EdgePoint &o) const {
    return edge == o.edge && pos == o.pos;
  }
  bool operator<(const EdgePoint &o) const {
    if (edge != o.edge)
      return edge < o.edge;
    return pos < o.pos;
  }
};

/// Either a vertex or an interior edge point. Positions 0 and 1 normalize
/// to vertices, so `EdgePoint` always means a genuinely interior point.
using Locus = std::variant<VertexId, EdgePoint>;

Locus make_locus(const Graph &g, EdgeId e, const Rat &pos);
inline bool is_vertex(const Locus &l) { return l.index() == 0; }
inline VertexId vertex_of(const Locus &l) { return std::get<VertexId>(l); }
inline const EdgePoint &point_of(const Locus &l) {
  return std::get<EdgePoint>(l);
}
std::string locus_str(const Graph &g, const Locus &l);

/// Strictly positive per-edge weights |e|.
struct Weighting {
  std::vector<double> w;

  double of(EdgeId e) const { return w[e]; }
};

double weighted_length(const Graph &g, const EdgePath &p, const Weighting &w);

/// Weight of the subinterval between two points of the same edge:
/// |pos(q) - pos(p)| * |e|.
double subpath_weight(const EdgePoint &p, const EdgePoint &q,
                      const Weighting &w);

} // namespace ttc
