#include "ttcube/graph.hpp"

#include <algorithm>

namespace ttc {

VertexId Graph::add_vertex(const std::string &name) {
  if (vertex_ids_.count(name))
    fail(ErrorKind::invalid, "duplicate vertex name: " + name);
  VertexId id = static_cast<VertexId>(vertex_names_.size());
  vertex_names_.push_back(name);
  vertex_ids_[name] = id;
  return id;
}

EdgeId Graph::add_edge(const std::string &name, VertexId init, VertexId term) {
  if (edge_ids_.count(name))
    fail(ErrorKind::invalid, "duplicate edge name: " + name);
  if (init >= vertex_count() || term >= vertex_count())
    fail(ErrorKind::invalid, "edge endpoint out of range: " + name);
  EdgeId id = static_cast<EdgeId>(edges_.size());
  edges_.push_back({name, init, term});
  edge_ids_[name] = id;
  return id;
}

EdgeId Graph::add_edge(const std::string &name, const std::string &init,
                       const std::string &term) {
  return add_edge(name, vertex_id(init), vertex_id(term));
}

VertexId Graph::vertex_id(const std::string &name) const {
  auto it = vertex_ids_.find(name);
  if (it == vertex_ids_.end())
    fail(ErrorKind::invalid, "unknown vertex: " + name);
  return it->second;
}

EdgeId Graph::edge_id(const std::string &name) const {
  auto it = edge_ids_.find(name);
  if (it == edge_ids_.end())
    fail(ErrorKind::invalid, "unknown edge: " + name);
  return it->second;
}

bool Graph::connected() const {
  if (vertex_count() == 0)
    return false;
  std::vector<char> seen(vertex_count(), 0);
  std::vector<VertexId> stack = {0};
  seen[0] = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (const auto &e : edges_) {
      if (e.init == v && !seen[e.term]) {
        seen[e.term] = 1;
        stack.push_back(e.term);
      }
      if (e.term == v && !seen[e.init]) {
        seen[e.init] = 1;
        stack.push_back(e.init);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

bool concatenable(const Graph &g, const EdgePath &p) {
  if (p.base >= g.vertex_count())
    return false;
  VertexId at = p.base;
  for (const auto &d : p.steps) {
    if (d.edge >= g.edge_count())
      return false;
    if (src(g, d) != at)
      return false;
    at = dst(g, d);
  }
  return true;
}

VertexId path_initial(const Graph &, const EdgePath &p) { return p.base; }

VertexId path_terminal(const Graph &g, const EdgePath &p) {
  if (p.empty())
    return p.base;
  return dst(g, p.steps.back());
}

EdgePath reverse(const Graph &g, const EdgePath &p) {
  EdgePath out;
  out.base = path_terminal(g, p);
  out.steps.reserve(p.size());
  for (auto it = p.steps.rbegin(); it != p.steps.rend(); ++it)
    out.steps.push_back(it->reversed());
  return out;
}

EdgePath tighten(const Graph &g, const EdgePath &p) {
  if (!concatenable(g, p))
    fail(ErrorKind::domain, "tighten: path is not concatenable");
  EdgePath out;
  out.base = p.base;
  for (const auto &d : p.steps) {
    if (!out.steps.empty() && out.steps.back() == d.reversed())
      out.steps.pop_back();
    else
      out.steps.push_back(d);
  }
  if (!out.steps.empty())
    out.base = src(g, out.steps.front());
  return out;
}

Locus make_locus(const Graph &g, EdgeId e, const Rat &pos) {
  if (pos < 0 || pos > 1)
    fail(ErrorKind::domain, "edge position outside [0,1] on " + g.edge_name(e));
  if (pos == 0)
    return g.edge(e).init;
  if (pos == 1)
    return g.edge(e).term;
  return EdgePoint{e, pos};
}

std::string locus_str(const Graph &g, const Locus &l) {
  if (is_vertex(l))
    return g.vertex_name(vertex_of(l));
  const auto &p = point_of(l);
  return g.edge_name(p.edge) + "(" + rat_str(p.pos) + ")";
}

double weighted_length(const Graph &g, const EdgePath &p, const Weighting &w) {
  if (w.w.size() < g.edge_count())
    fail(ErrorKind::domain, "weighting does not cover all edges");
  double total = 0.0;
  for (const auto &d : p.steps)
    total += w.of(d.edge);
  return total;
}

double subpath_weight(const EdgePoint &p, const EdgePoint &q,
                      const Weighting &w) {
  if (p.edge != q.edge)
    fail(ErrorKind::domain, "subpath_weight: points on different edges");
  Rat gap = q.pos - p.pos;
  if (gap < 0)
    gap = -gap;
  return to_double(gap) * w.of(p.edge);
}

} // namespace ttc
