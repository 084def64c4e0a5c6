#include "ttcube/graph_map.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace ttc {

std::vector<std::string> validate(const GraphMap &m) {
  std::vector<std::string> bad;
  const Graph &g = m.graph;
  if (g.vertex_count() == 0) {
    bad.push_back("graph has no vertices");
    return bad;
  }
  if (!g.connected())
    bad.push_back("graph is not connected");
  if (m.vertex_image.size() != g.vertex_count())
    bad.push_back("vertex image is not total");
  if (m.edge_image.size() != g.edge_count())
    bad.push_back("edge image is not total");
  if (!bad.empty())
    return bad;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (m.vertex_image[v] >= g.vertex_count())
      bad.push_back("vertex image out of range: " + g.vertex_name(v));
  if (m.basepoint >= g.vertex_count())
    bad.push_back("basepoint out of range");
  else if (m.vertex_image[m.basepoint] != m.basepoint)
    bad.push_back("basepoint is not fixed: " + g.vertex_name(m.basepoint));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const EdgePath &img = m.edge_image[e];
    if (img.empty()) {
      bad.push_back("empty image: " + g.edge_name(e));
      continue;
    }
    if (!concatenable(g, img)) {
      bad.push_back("image not concatenable: " + g.edge_name(e));
      continue;
    }
    if (path_initial(g, img) != m.vertex_image[g.edge(e).init])
      bad.push_back("initial endpoint mismatch on image of " + g.edge_name(e));
    if (path_terminal(g, img) != m.vertex_image[g.edge(e).term])
      bad.push_back("terminal endpoint mismatch on image of " + g.edge_name(e));
  }
  return bad;
}

EdgePath step_image(const GraphMap &m, DirectedEdge d) {
  const EdgePath &img = m.edge_image[d.edge];
  return d.forward ? img : reverse(m.graph, img);
}

EdgePath map_path(const GraphMap &m, const EdgePath &p) {
  EdgePath out;
  out.base = m.vertex_image[p.base];
  for (const auto &d : p.steps) {
    EdgePath piece = step_image(m, d);
    out.steps.insert(out.steps.end(), piece.steps.begin(), piece.steps.end());
  }
  return out;
}

EdgePath iterate_edge(const GraphMap &m, EdgeId e, int n, bool tighten_result) {
  if (n < 0)
    fail(ErrorKind::domain, "iterate_edge: negative iterate");
  EdgePath p;
  p.base = m.graph.edge(e).init;
  p.steps = {DirectedEdge{e, true}};
  for (int i = 0; i < n; ++i)
    p = map_path(m, p);
  return tighten_result ? tighten(m.graph, p) : p;
}

std::size_t direction_index(DirectedEdge d) {
  return 2 * static_cast<std::size_t>(d.edge) + (d.forward ? 0 : 1);
}

DirectedEdge direction_of_index(std::size_t i) {
  return DirectedEdge{static_cast<EdgeId>(i / 2), i % 2 == 0};
}

DirectionMap direction_map(const GraphMap &m) {
  DirectionMap dm;
  dm.image.resize(2 * m.graph.edge_count());
  for (EdgeId e = 0; e < m.graph.edge_count(); ++e) {
    for (bool forward : {true, false}) {
      DirectedEdge d{e, forward};
      EdgePath img = step_image(m, d);
      if (img.empty())
        fail(ErrorKind::domain, "direction map undefined: empty image of " +
                                    m.graph.edge_name(e));
      dm.image[direction_index(d)] = img.steps.front();
    }
  }
  return dm;
}

namespace {

// Unordered pair of directions based at a common vertex.
using Turn = std::pair<std::size_t, std::size_t>;

Turn make_turn(DirectedEdge a, DirectedEdge b) {
  std::size_t i = direction_index(a), j = direction_index(b);
  return i <= j ? Turn{i, j} : Turn{j, i};
}

} // namespace

TrainTrackVerdict is_train_track(const GraphMap &m) {
  require_valid(m);
  DirectionMap dm = direction_map(m);

  // Each turn taken by some edge image, with its provenance for witnesses.
  struct Taken {
    Turn turn;
    EdgeId edge;
    std::size_t index;
  };
  std::vector<Taken> taken;
  for (EdgeId e = 0; e < m.graph.edge_count(); ++e) {
    const EdgePath &img = m.edge_image[e];
    for (std::size_t i = 0; i + 1 < img.steps.size(); ++i) {
      DirectedEdge in = img.steps[i].reversed();
      DirectedEdge out = img.steps[i + 1];
      if (in == out) // image itself is not immersed
        return {false, TrainTrackWitness{e, i, 1}};
      taken.push_back({make_turn(in, out), e, i});
    }
  }

  for (const Taken &t : taken) {
    std::set<Turn> seen;
    Turn cur = t.turn;
    int iter = 1;
    while (seen.insert(cur).second) {
      DirectedEdge a = dm(direction_of_index(cur.first));
      DirectedEdge b = dm(direction_of_index(cur.second));
      ++iter;
      if (a == b)
        return {false, TrainTrackWitness{t.edge, t.index, iter}};
      cur = make_turn(a, b);
    }
  }
  return {true, std::nullopt};
}

namespace {

// Arc e -> f whenever the image of e traverses f (either orientation).
std::vector<std::vector<EdgeId>> transition_arcs(const GraphMap &m) {
  std::vector<std::vector<EdgeId>> arcs(m.graph.edge_count());
  for (EdgeId e = 0; e < m.graph.edge_count(); ++e) {
    std::set<EdgeId> targets;
    for (const auto &d : m.edge_image[e].steps)
      targets.insert(d.edge);
    arcs[e].assign(targets.begin(), targets.end());
  }
  return arcs;
}

std::vector<char> reachable_from(const std::vector<std::vector<EdgeId>> &arcs,
                                 EdgeId start) {
  std::vector<char> seen(arcs.size(), 0);
  std::vector<EdgeId> stack = {start};
  // Proper reachability: the start itself counts only if re-reached.
  std::vector<char> visited(arcs.size(), 0);
  while (!stack.empty()) {
    EdgeId e = stack.back();
    stack.pop_back();
    for (EdgeId f : arcs[e]) {
      if (!seen[f]) {
        seen[f] = 1;
        if (!visited[f]) {
          visited[f] = 1;
          stack.push_back(f);
        }
      }
    }
  }
  return seen;
}

} // namespace

bool is_irreducible(const GraphMap &m) {
  require_valid(m);
  std::size_t n = m.graph.edge_count();
  if (n == 0)
    return false;
  auto arcs = transition_arcs(m);
  for (EdgeId e = 0; e < n; ++e) {
    auto seen = reachable_from(arcs, e);
    for (EdgeId f = 0; f < n; ++f)
      if (!seen[f])
        return false;
  }
  return true;
}

std::vector<bool> expanding_edges(const GraphMap &m) {
  require_valid(m);
  std::size_t n = m.graph.edge_count();
  std::vector<bool> expanding(n, true);
  // On the subgraph of edges whose image is a single edge, each node has
  // exactly one outgoing arc; an edge fails exactly when it lies on a
  // cycle there.
  for (EdgeId e = 0; e < n; ++e) {
    EdgeId cur = e;
    for (std::size_t step = 0; step <= n; ++step) {
      if (m.edge_image[cur].size() != 1)
        break;
      cur = m.edge_image[cur].steps.front().edge;
      if (cur == e) {
        expanding[e] = false;
        break;
      }
    }
  }
  return expanding;
}

namespace {

// Edges with bounded iterated image length: everything properly reachable
// from them in the transition digraph has single-edge image, including the
// degenerate case of an empty image.
std::vector<char> bounded_edges(const GraphMap &m) {
  std::size_t n = m.graph.edge_count();
  auto arcs = transition_arcs(m);
  std::vector<char> bounded(n, 0);
  for (EdgeId e = 0; e < n; ++e) {
    auto seen = reachable_from(arcs, e);
    bool ok = true;
    for (EdgeId f = 0; f < n; ++f)
      if (seen[f] && m.edge_image[f].size() > 1)
        ok = false;
    if (m.edge_image[e].empty())
      ok = true;
    bounded[e] = ok ? 1 : 0;
  }
  return bounded;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  }
  // Returns false when x and y were already joined (a cycle).
  bool join(int x, int y) {
    int a = find(x), b = find(y);
    if (a == b)
      return false;
    parent[a] = b;
    return true;
  }
};

} // namespace

CollapseReport collapse_invariant_forest(const GraphMap &m) {
  require_valid(m);
  CollapseReport report;
  report.result = m;

  for (;;) {
    GraphMap &cur = report.result;
    std::size_t n = cur.graph.edge_count();
    auto bounded = bounded_edges(cur);
    bool any_bounded = std::any_of(bounded.begin(), bounded.end(),
                                   [](char c) { return c != 0; });
    if (!any_bounded) {
      auto exp = expanding_edges(cur);
      bool all_exp = std::all_of(exp.begin(), exp.end(), [](bool b) { return b; });
      bool none_empty = true;
      for (EdgeId e = 0; e < n; ++e)
        if (cur.edge_image[e].empty())
          none_empty = false;
      if (all_exp && none_empty)
        return report;
      fail(ErrorKind::structure,
           "collapse: non-expanding edge with unbounded image length");
    }

    // The candidate forest: all vertices plus the bounded closed edges.
    UnionFind uf(cur.graph.vertex_count());
    for (EdgeId e = 0; e < n; ++e) {
      if (!bounded[e])
        continue;
      if (!uf.join(cur.graph.edge(e).init, cur.graph.edge(e).term))
        fail(ErrorKind::structure,
             "collapse: invariant subgraph component contains a cycle at edge " +
                 cur.graph.edge_name(e));
    }

    // Quotient graph: one vertex per forest component.
    Graph q;
    std::vector<VertexId> comp_of(cur.graph.vertex_count());
    std::map<int, VertexId> root_to_new;
    for (VertexId v = 0; v < cur.graph.vertex_count(); ++v) {
      int r = uf.find(v);
      auto it = root_to_new.find(r);
      if (it == root_to_new.end()) {
        // First member seen has the smallest index; its name survives.
        VertexId nv = q.add_vertex(cur.graph.vertex_name(v));
        root_to_new[r] = nv;
        comp_of[v] = nv;
      } else {
        comp_of[v] = it->second;
      }
    }

    std::vector<EdgeId> new_id(n, 0);
    std::vector<char> kept(n, 0);
    for (EdgeId e = 0; e < n; ++e) {
      if (bounded[e]) {
        report.collapsed_edges.push_back(cur.graph.edge_name(e));
        continue;
      }
      kept[e] = 1;
      new_id[e] = q.add_edge(cur.graph.edge_name(e),
                             comp_of[cur.graph.edge(e).init],
                             comp_of[cur.graph.edge(e).term]);
    }

    GraphMap next;
    next.graph = q;
    next.basepoint = comp_of[cur.basepoint];
    next.vertex_image.resize(q.vertex_count());
    for (VertexId v = 0; v < cur.graph.vertex_count(); ++v) {
      // Well-defined because the forest is invariant under the map.
      next.vertex_image[comp_of[v]] = comp_of[cur.vertex_image[v]];
    }
    next.edge_image.resize(q.edge_count());
    for (EdgeId e = 0; e < n; ++e) {
      if (!kept[e])
        continue;
      EdgePath img;
      img.base = comp_of[cur.edge_image[e].base];
      for (const auto &d : cur.edge_image[e].steps)
        if (kept[d.edge])
          img.steps.push_back(DirectedEdge{new_id[d.edge], d.forward});
      if (!img.steps.empty())
        img.base = src(q, img.steps.front());
      next.edge_image[new_id[e]] = tighten(q, img);
    }

    report.result = std::move(next);
    ++report.rounds;

    auto bad = validate(report.result);
    // A collapsed image may legitimately be empty mid-process; anything
    // else is a bug in the rewrite.
    for (const auto &s : bad)
      if (s.rfind("empty image", 0) != 0)
        fail(ErrorKind::structure, "collapse produced an invalid map: " + s);
  }
}

} // namespace ttc
