#include "ttcube/emit.hpp"

#include <json.hpp>

#include <sstream>

namespace ttc {

using ordered_json = nlohmann::ordered_json;

AnalysisReport analyze(const GraphMap &m) {
  AnalysisReport r;
  r.violations = validate(m);
  r.valid = r.violations.empty();
  if (!r.valid)
    return r;
  r.train_track = is_train_track(m);
  r.irreducible = is_irreducible(m);
  r.expanding = expanding_edges(m);
  r.matrix = transition_matrix(m);
  bool any_expanding = false;
  for (bool b : r.expanding)
    any_expanding = any_expanding || b;
  if (r.irreducible && any_expanding) {
    r.perron = perron_eigen(r.matrix);
    r.perron_available = true;
    r.expansion_residual =
        verify_expansion(m, r.perron, r.expansion_depth).max_residual;
  }
  return r;
}

namespace {

ordered_json locus_json(const GraphMap &m, const Locus &l) {
  ordered_json j;
  if (is_vertex(l)) {
    j["vertex"] = m.graph.vertex_name(vertex_of(l));
  } else {
    j["edge"] = m.graph.edge_name(point_of(l).edge);
    j["position"] = rat_str(point_of(l).pos);
  }
  return j;
}

std::string dot_escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\';
    out += c;
  }
  return out;
}

} // namespace

std::string analysis_json(const GraphMap &m, const AnalysisReport &r) {
  ordered_json j;
  j["valid"] = r.valid;
  j["violations"] = r.violations;
  if (!r.valid)
    return j.dump(2);
  j["train_track"] = r.train_track.is_train_track;
  if (r.train_track.witness) {
    const auto &w = *r.train_track.witness;
    j["train_track_witness"] = {{"edge", m.graph.edge_name(w.edge)},
                                {"index", w.index},
                                {"iterate", w.iterate}};
  }
  j["irreducible"] = r.irreducible;
  ordered_json exp;
  for (EdgeId e = 0; e < m.graph.edge_count(); ++e)
    exp[m.graph.edge_name(e)] = static_cast<bool>(r.expanding[e]);
  j["expanding"] = exp;
  ordered_json mat;
  mat["edges"] = ordered_json::array();
  for (EdgeId e = 0; e < m.graph.edge_count(); ++e)
    mat["edges"].push_back(m.graph.edge_name(e));
  mat["entries"] = r.matrix.entries;
  j["transition_matrix"] = mat;
  if (r.perron_available) {
    j["eigenvalue"] = r.perron.eigenvalue;
    ordered_json w;
    for (EdgeId e = 0; e < m.graph.edge_count(); ++e)
      w[m.graph.edge_name(e)] = r.perron.weights.of(e);
    j["weights"] = w;
    j["eigen_residual"] = r.perron.residual;
    j["expansion_residual"] = r.expansion_residual;
    j["expansion_depth"] = r.expansion_depth;
  }
  return j.dump(2);
}

std::string level_json(const GraphMap &m, const Level &lv) {
  ordered_json j;
  j["root"] = locus_json(m, lv.root);
  j["length"] = lv.length;
  j["nodes"] = ordered_json::array();
  for (std::size_t i = 0; i < lv.nodes.size(); ++i) {
    ordered_json n;
    n["id"] = i;
    n["at"] = locus_json(m, lv.nodes[i].at);
    n["depth"] = lv.nodes[i].depth;
    n["parent"] = lv.nodes[i].parent;
    j["nodes"].push_back(n);
  }
  return j.dump(2);
}

std::string level_dot(const GraphMap &m, const Level &lv) {
  std::ostringstream out;
  out << "digraph level {\n  rankdir=TB;\n";
  // One rank per depth, root on top.
  for (int d = 0; d <= lv.length; ++d) {
    out << "  { rank=same;";
    for (std::size_t i = 0; i < lv.nodes.size(); ++i)
      if (lv.nodes[i].depth == d)
        out << " n" << i << ";";
    out << " }\n";
  }
  for (std::size_t i = 0; i < lv.nodes.size(); ++i)
    out << "  n" << i << " [label=\""
        << dot_escape(locus_str(m.graph, lv.nodes[i].at)) << "\"];\n";
  for (std::size_t i = 0; i < lv.nodes.size(); ++i)
    if (lv.nodes[i].parent >= 0)
      out << "  n" << i << " -> n" << lv.nodes[i].parent << ";\n";
  out << "}\n";
  return out.str();
}

namespace {

ordered_json bust_json(const GraphMap &m, EdgeId e, const Rat &lo,
                       const Rat &hi) {
  ordered_json j;
  j["edge"] = m.graph.edge_name(e);
  j["lo"] = rat_str(lo);
  j["hi"] = rat_str(hi);
  return j;
}

} // namespace

std::string busts_json(const GraphMap &m, const BustSystem &bs) {
  ordered_json j;
  j["tunnel_length"] = bs.tunnel_length;
  j["primary"] = ordered_json::array();
  for (const Bust &b : bs.busts)
    j["primary"].push_back(bust_json(m, b.edge, b.lo, b.hi));
  j["secondary"] = ordered_json::array();
  for (const SecondaryBust &s : bs.secondary) {
    ordered_json sj = bust_json(m, s.edge, s.lo, s.hi);
    sj["primary"] = s.primary;
    sj["flipped"] = s.flip;
    j["secondary"].push_back(sj);
  }
  return j.dump(2);
}

std::string wall_json(const GraphMap &m, const WallGraph &w) {
  ordered_json j;
  j["tunnel_length"] = w.busts.tunnel_length;
  j["components"] = w.component_count;
  j["knockouts"] = knockout_count(w);
  j["fragments"] = ordered_json::array();
  for (std::size_t i = 0; i < w.fragments.size(); ++i) {
    ordered_json f =
        bust_json(m, w.fragments[i].edge, w.fragments[i].lo, w.fragments[i].hi);
    f["component"] = w.component[w.fragment_node(i)];
    j["fragments"].push_back(f);
  }
  j["level_nodes"] = ordered_json::array();
  for (std::size_t i = 0; i < w.level_nodes.size(); ++i) {
    const auto &ln = w.level_nodes[i];
    ordered_json n;
    n["bust"] = ln.bust;
    n["sign"] = ln.sign > 0 ? "+" : "-";
    n["at"] = locus_json(m, ln.at);
    n["depth"] = ln.depth;
    n["parent"] = ln.parent;
    j["level_nodes"].push_back(n);
  }
  j["arcs"] = ordered_json::array();
  for (const auto &arc : w.arcs) {
    ordered_json a;
    a["a"] = arc.a;
    a["b"] = arc.b;
    switch (arc.kind) {
    case WallGraph::Arc::Kind::nucleus:
      a["kind"] = "nucleus";
      break;
    case WallGraph::Arc::Kind::level:
      a["kind"] = "level";
      break;
    case WallGraph::Arc::Kind::attach:
      a["kind"] = "attach";
      break;
    case WallGraph::Arc::Kind::slope:
      a["kind"] = "slope";
      break;
    }
    j["arcs"].push_back(a);
  }
  return j.dump(2);
}

std::string wall_dot(const GraphMap &m, const WallGraph &w) {
  std::ostringstream out;
  out << "graph wall {\n";
  for (std::size_t i = 0; i < w.fragments.size(); ++i)
    out << "  f" << i << " [shape=box,label=\""
        << dot_escape(m.graph.edge_name(w.fragments[i].edge) + "[" +
                      rat_str(w.fragments[i].lo) + "," +
                      rat_str(w.fragments[i].hi) + "]")
        << "\"];\n";
  for (VertexId v = 0; v < w.vertex_count_hint; ++v)
    out << "  v" << v << " [shape=point,label=\""
        << dot_escape(m.graph.vertex_name(v)) << "\"];\n";
  for (std::size_t i = 0; i < w.level_nodes.size(); ++i)
    out << "  l" << i << " [shape=circle,label=\""
        << dot_escape(locus_str(m.graph, w.level_nodes[i].at)) << "\"];\n";
  for (std::size_t b = 0; b < w.busts.busts.size(); ++b)
    out << "  x" << b << " [shape=diamond,label=\"X" << b << "\"];\n";

  auto node_name = [&](std::size_t idx) -> std::string {
    if (idx < w.fragments.size())
      return "f" + std::to_string(idx);
    idx -= w.fragments.size();
    if (idx < w.vertex_count_hint)
      return "v" + std::to_string(idx);
    idx -= w.vertex_count_hint;
    if (idx < w.level_nodes.size())
      return "l" + std::to_string(idx);
    idx -= w.level_nodes.size();
    return "x" + std::to_string(idx);
  };
  for (const auto &arc : w.arcs) {
    out << "  " << node_name(arc.a) << " -- " << node_name(arc.b);
    if (arc.kind == WallGraph::Arc::Kind::slope)
      out << " [style=dashed]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string wall_check_json(const CheckReport &rep) {
  ordered_json j;
  j["all_pass"] = rep.all_pass;
  j["checks"] = ordered_json::array();
  for (const auto &item : rep.items) {
    ordered_json c;
    c["property"] = item.property;
    c["pass"] = item.pass;
    if (!item.witness.empty())
      c["witness"] = item.witness;
    j["checks"].push_back(c);
  }
  return j.dump(2);
}

std::string approximation_json(const GraphMap &m, const WallApproximation &a) {
  ordered_json j;
  j["nucleus_images"] = ordered_json::array();
  for (const auto &img : a.nucleus_images) {
    ordered_json n;
    n["component"] = img.component;
    n["intervals"] = ordered_json::array();
    for (const auto &iv : img.intervals)
      n["intervals"].push_back(bust_json(m, iv.edge, iv.lo, iv.hi));
    j["nucleus_images"].push_back(n);
  }
  j["slopes"] = ordered_json::array();
  for (const auto &s : a.slopes) {
    ordered_json sj;
    sj["bust"] = s.bust;
    sj["sign"] = s.sign > 0 ? "+" : "-";
    sj["interval"] = bust_json(m, s.interval.edge, s.interval.lo, s.interval.hi);
    sj["orbit"] = ordered_json::array();
    for (const auto &l : s.orbit)
      sj["orbit"].push_back(locus_json(m, l));
    j["slopes"].push_back(sj);
  }
  return j.dump(2);
}

std::string approximation_dot(const GraphMap &m, const WallApproximation &a) {
  std::ostringstream out;
  out << "digraph approximation {\n";
  for (std::size_t i = 0; i < a.nucleus_images.size(); ++i) {
    std::string label;
    for (const auto &iv : a.nucleus_images[i].intervals) {
      if (!label.empty())
        label += " ";
      label += m.graph.edge_name(iv.edge) + "[" + rat_str(iv.lo) + "," +
               rat_str(iv.hi) + "]";
    }
    out << "  n" << i << " [shape=box,label=\"" << dot_escape(label)
        << "\"];\n";
  }
  for (std::size_t i = 0; i < a.slopes.size(); ++i) {
    const auto &s = a.slopes[i];
    out << "  s" << i << " [shape=oval,label=\""
        << dot_escape(m.graph.edge_name(s.interval.edge) + " " +
                      (s.sign > 0 ? "+" : "-"))
        << "\"];\n";
    for (std::size_t k = 0; k + 1 < s.orbit.size(); ++k) {
      out << "  o" << i << "_" << k << " [shape=plaintext,label=\""
          << dot_escape(locus_str(m.graph, s.orbit[k])) << "\"];\n";
    }
  }
  for (std::size_t i = 0; i < a.slopes.size(); ++i) {
    out << "  s" << i;
    for (std::size_t k = 0; k + 1 < a.slopes[i].orbit.size(); ++k)
      out << " -> o" << i << "_" << k;
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string dmetric_json(const GraphMap &, const LeafDistanceEstimate &est) {
  ordered_json j;
  j["values"] = est.values;
  j["stabilized"] = est.stabilized;
  j["estimate"] = est.estimate;
  return j.dump(2);
}

std::string dmetric_csv(const LeafDistanceEstimate &est) {
  std::ostringstream out;
  out << "n,d_n\n";
  for (std::size_t i = 0; i < est.values.size(); ++i)
    out << i << "," << est.values[i] << "\n";
  return out.str();
}

std::string periodic_json(const GraphMap &m, EdgeId e, int L,
                          const PeriodicPoints &pts) {
  ordered_json j;
  j["edge"] = m.graph.edge_name(e);
  j["power"] = L;
  j["interior"] = ordered_json::array();
  for (const auto &p : pts.interior)
    j["interior"].push_back(rat_str(p.pos));
  j["at_vertices"] = ordered_json::array();
  for (auto v : pts.at_vertices)
    j["at_vertices"].push_back(m.graph.vertex_name(v));
  return j.dump(2);
}

Wallspace wallspace_from_json(const std::string &text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception &e) {
    fail(ErrorKind::parse, std::string("wallspace json: ") + e.what());
  }
  Wallspace ws;
  if (!j.contains("chambers") || !j["chambers"].is_array())
    fail(ErrorKind::parse, "wallspace json: missing chambers array");
  for (const auto &c : j["chambers"])
    ws.chambers.push_back(c.get<std::string>());
  std::map<std::string, std::uint32_t> idx;
  for (std::uint32_t i = 0; i < ws.chambers.size(); ++i)
    idx[ws.chambers[i]] = i;
  if (!j.contains("walls") || !j["walls"].is_array())
    fail(ErrorKind::parse, "wallspace json: missing walls array");
  for (const auto &wj : j["walls"]) {
    if (!wj.is_array() || wj.size() != 2)
      fail(ErrorKind::parse, "wallspace json: wall must be a halfspace pair");
    Wallspace::Wall wall;
    for (int s : {0, 1})
      for (const auto &c : wj[s]) {
        auto name = c.get<std::string>();
        auto it = idx.find(name);
        if (it == idx.end())
          fail(ErrorKind::parse, "wallspace json: unknown chamber " + name);
        wall.side[s].push_back(it->second);
      }
    ws.walls.push_back(std::move(wall));
  }
  return ws;
}

std::string wallspace_json(const Wallspace &ws) {
  ordered_json j;
  j["chambers"] = ws.chambers;
  j["walls"] = ordered_json::array();
  for (const auto &w : ws.walls) {
    ordered_json pair = ordered_json::array();
    for (int s : {0, 1}) {
      ordered_json side = ordered_json::array();
      for (auto c : w.side[s])
        side.push_back(ws.chambers[c]);
      pair.push_back(side);
    }
    j["walls"].push_back(pair);
  }
  return j.dump(2);
}

std::string skeleton_json(const Wallspace &ws, const CubeSkeleton &sk) {
  ordered_json j;
  j["walls"] = ws.walls.size();
  j["vertices"] = sk.vertices.size();
  j["edges"] = sk.edges.size();
  ordered_json counts;
  for (std::size_t d = 2; d < sk.cube_counts.size(); ++d)
    counts[std::to_string(d)] = sk.cube_counts[d];
  j["cubes"] = counts;
  j["dimension"] = sk.dimension;
  j["vertex_orientations"] = ordered_json::array();
  for (const auto &uf : sk.vertices) {
    std::string bits;
    for (auto s : uf.side)
      bits += s ? '1' : '0';
    j["vertex_orientations"].push_back(bits);
  }
  j["edge_list"] = sk.edges;
  return j.dump(2);
}

std::string skeleton_dot(const CubeSkeleton &sk) {
  std::ostringstream out;
  out << "graph cubeskeleton {\n";
  for (std::size_t v = 0; v < sk.vertices.size(); ++v) {
    std::string bits;
    for (auto s : sk.vertices[v].side)
      bits += s ? '1' : '0';
    out << "  u" << v << " [label=\"" << bits << "\"];\n";
  }
  for (const auto &[a, b] : sk.edges)
    out << "  u" << a << " -- u" << b << ";\n";
  out << "}\n";
  return out.str();
}

std::string torus_json(const GraphMap &m, const TorusComplex &tc) {
  ordered_json j;
  j["power"] = tc.power;
  j["cells0"] = tc.cells0;
  j["vertical1"] = tc.vertical1;
  j["horizontal1"] = tc.horizontal1;
  j["cells2"] = ordered_json::array();
  for (const auto &cell : tc.cells2) {
    ordered_json c;
    c["edge"] = m.graph.edge_name(cell.edge);
    std::string word;
    for (const auto &t : cell.word) {
      if (!word.empty())
        word += " ";
      word += token_str(m, t);
    }
    c["attaching_word"] = word;
    j["cells2"].push_back(c);
  }
  j["euler_characteristic"] = euler_characteristic(tc);
  return j.dump(2);
}

std::string presentation_json(const Presentation &p) {
  ordered_json j;
  j["generators"] = p.generators;
  j["relations"] = ordered_json::array();
  for (const auto &rel : p.relations) {
    ordered_json r;
    r["generator"] = rel.generator;
    ordered_json img = ordered_json::array();
    for (const auto &l : rel.image) {
      ordered_json letter;
      letter["generator"] = l.generator;
      letter["exponent"] = l.exponent;
      img.push_back(letter);
    }
    r["image"] = img;
    j["relations"].push_back(r);
  }
  j["text"] = presentation_text(p);
  return j.dump(2);
}

} // namespace ttc
