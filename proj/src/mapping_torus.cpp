#include "ttcube/mapping_torus.hpp"

#include <algorithm>
#include <optional>
#include <queue>

namespace ttc {

TorusComplex build_torus(const GraphMap &m, int L) {
  require_valid(m);
  if (L < 1)
    fail(ErrorKind::domain, "build_torus: power must be >= 1");
  TorusComplex tc;
  tc.power = L;
  for (VertexId v = 0; v < m.graph.vertex_count(); ++v) {
    tc.cells0.push_back(m.graph.vertex_name(v));
    tc.horizontal1.push_back("t_" + m.graph.vertex_name(v));
  }
  for (EdgeId e = 0; e < m.graph.edge_count(); ++e)
    tc.vertical1.push_back(m.graph.edge_name(e));

  for (EdgeId e = 0; e < m.graph.edge_count(); ++e) {
    TorusComplex::TwoCell cell;
    cell.edge = e;
    VertexId a = m.graph.edge(e).init;
    VertexId b = m.graph.edge(e).term;
    cell.word.push_back({true, b, true});   // t_b^-1
    cell.word.push_back({false, e, true});  // e^-1
    cell.word.push_back({true, a, false});  // t_a
    EdgePath img = iterate_edge(m, e, L);
    for (const auto &d : img.steps)
      cell.word.push_back({false, d.edge, !d.forward});
    tc.cells2.push_back(std::move(cell));
  }
  return tc;
}

long euler_characteristic(const TorusComplex &tc) {
  return static_cast<long>(tc.cells0.size()) -
         static_cast<long>(tc.vertical1.size() + tc.horizontal1.size()) +
         static_cast<long>(tc.cells2.size());
}

std::string token_str(const GraphMap &m, const TorusComplex::Token &t) {
  std::string base = t.horizontal ? "t_" + m.graph.vertex_name(t.id)
                                  : m.graph.edge_name(t.id);
  return t.inverse ? base + "^-1" : base;
}

namespace {

struct TreeData {
  std::vector<std::optional<DirectedEdge>> parent_step; // child -> parent
  std::vector<int> depth;
  std::vector<char> in_tree; // per edge
};

TreeData spanning_tree_edges(const Graph &g, VertexId root) {
  TreeData t;
  t.parent_step.assign(g.vertex_count(), std::nullopt);
  t.depth.assign(g.vertex_count(), -1);
  t.in_tree.assign(g.edge_count(), 0);
  std::queue<VertexId> q;
  q.push(root);
  t.depth[root] = 0;
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop();
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      for (bool fwd : {true, false}) {
        DirectedEdge d{e, fwd};
        if (src(g, d) != v || t.depth[dst(g, d)] >= 0)
          continue;
        t.depth[dst(g, d)] = t.depth[v] + 1;
        t.parent_step[dst(g, d)] = d.reversed();
        t.in_tree[e] = 1;
        q.push(dst(g, d));
      }
    }
  }
  return t;
}

// Rewrites a reduced loop at the base as a word in the free basis dual to
// the spanning tree: each non-tree step contributes one letter.
std::vector<Presentation::Letter> loop_word(const Graph &g, const TreeData &t,
                                            const EdgePath &loop) {
  std::vector<Presentation::Letter> word;
  for (const auto &d : loop.steps) {
    if (t.in_tree[d.edge])
      continue;
    word.push_back({g.edge_name(d.edge), d.forward ? 1 : -1});
  }
  // Free reduction in the letters.
  std::vector<Presentation::Letter> reduced;
  for (const auto &l : word) {
    if (!reduced.empty() && reduced.back().generator == l.generator &&
        reduced.back().exponent == -l.exponent)
      reduced.pop_back();
    else
      reduced.push_back(l);
  }
  return reduced;
}

EdgePath tree_geodesic(const Graph &g, const TreeData &t, VertexId u,
                       VertexId v) {
  std::vector<DirectedEdge> up_u, up_v;
  VertexId a = u, b = v;
  while (t.depth[a] > t.depth[b]) {
    up_u.push_back(*t.parent_step[a]);
    a = dst(g, *t.parent_step[a]);
  }
  while (t.depth[b] > t.depth[a]) {
    up_v.push_back(*t.parent_step[b]);
    b = dst(g, *t.parent_step[b]);
  }
  while (a != b) {
    up_u.push_back(*t.parent_step[a]);
    a = dst(g, *t.parent_step[a]);
    up_v.push_back(*t.parent_step[b]);
    b = dst(g, *t.parent_step[b]);
  }
  EdgePath p;
  p.base = u;
  p.steps = up_u;
  for (auto it = up_v.rbegin(); it != up_v.rend(); ++it)
    p.steps.push_back(it->reversed());
  return p;
}

} // namespace

Presentation presentation(const GraphMap &m, int power) {
  require_valid(m);
  if (power < 1)
    fail(ErrorKind::domain, "presentation: power must be >= 1");
  const Graph &g = m.graph;
  TreeData tree = spanning_tree_edges(g, m.basepoint);

  Presentation pres;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (!tree.in_tree[e])
      pres.generators.push_back(g.edge_name(e));
  pres.generators.push_back("z");

  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (tree.in_tree[e])
      continue;
    // The basis loop: tree path to the edge, across, tree path back.
    EdgePath loop = tree_geodesic(g, tree, m.basepoint, g.edge(e).init);
    loop.steps.push_back(DirectedEdge{e, true});
    EdgePath back = tree_geodesic(g, tree, g.edge(e).term, m.basepoint);
    loop.steps.insert(loop.steps.end(), back.steps.begin(), back.steps.end());

    EdgePath image = loop;
    for (int i = 0; i < power; ++i)
      image = map_path(m, image);
    image = tighten(g, image);

    Presentation::Relation rel;
    rel.generator = g.edge_name(e);
    rel.image = loop_word(g, tree, image);
    pres.relations.push_back(std::move(rel));
  }
  return pres;
}

std::string presentation_text(const Presentation &p) {
  std::string out = "< ";
  for (std::size_t i = 0; i < p.generators.size(); ++i) {
    if (i)
      out += ", ";
    out += p.generators[i];
  }
  out += " | ";
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    if (i)
      out += ", ";
    out += "z " + p.relations[i].generator + " z^-1 = ";
    if (p.relations[i].image.empty())
      out += "1";
    for (std::size_t j = 0; j < p.relations[i].image.size(); ++j) {
      const auto &l = p.relations[i].image[j];
      if (j)
        out += " ";
      out += l.generator;
      if (l.exponent < 0)
        out += "^-1";
    }
  }
  out += " >";
  return out;
}

} // namespace ttc
