#include "ttcube/gmfile.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace ttc {

namespace {

[[noreturn]] void parse_fail(int line, const std::string &msg) {
  fail(ErrorKind::parse, "line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split_ws(const std::string &s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok)
    out.push_back(tok);
  return out;
}

std::string strip_comment(const std::string &line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

} // namespace

GraphMap parse_graph_map(const std::string &text) {
  enum class Section { none, vertices, edges, map };
  Section section = Section::none;

  std::vector<std::string> vertex_names;
  std::vector<std::tuple<std::string, std::string, std::string, int>> edge_decls;
  std::map<std::string, std::pair<std::vector<std::string>, int>> images;
  std::string basepoint_name;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip_comment(raw);
    auto toks = split_ws(line);
    if (toks.empty())
      continue;

    std::string head = toks[0];
    if (head == "vertices:") {
      section = Section::vertices;
      for (std::size_t i = 1; i < toks.size(); ++i)
        vertex_names.push_back(toks[i]);
      continue;
    }
    if (head == "edges:") {
      section = Section::edges;
      if (toks.size() > 1)
        parse_fail(lineno, "edge declarations belong on their own lines");
      continue;
    }
    if (head == "map:") {
      section = Section::map;
      if (toks.size() > 1)
        parse_fail(lineno, "map entries belong on their own lines");
      continue;
    }
    if (head == "basepoint:") {
      if (toks.size() != 2)
        parse_fail(lineno, "basepoint: expects one vertex name");
      basepoint_name = toks[1];
      continue;
    }

    switch (section) {
    case Section::none:
      parse_fail(lineno, "content before any section header");
    case Section::vertices:
      for (const auto &t : toks)
        vertex_names.push_back(t);
      break;
    case Section::edges: {
      if (toks.size() != 3 || toks[0].back() != ':')
        parse_fail(lineno, "expected `name: v_init v_term`");
      std::string name = toks[0].substr(0, toks[0].size() - 1);
      if (name.empty())
        parse_fail(lineno, "empty edge name");
      edge_decls.emplace_back(name, toks[1], toks[2], lineno);
      break;
    }
    case Section::map: {
      if (toks.size() < 3 || toks[1] != "->")
        parse_fail(lineno, "expected `name -> token ...`");
      std::vector<std::string> word(toks.begin() + 2, toks.end());
      if (!images.emplace(toks[0], std::make_pair(word, lineno)).second)
        parse_fail(lineno, "duplicate map entry for " + toks[0]);
      break;
    }
    }
  }

  if (vertex_names.empty())
    fail(ErrorKind::parse, "no vertices declared");

  GraphMap m;
  for (const auto &v : vertex_names)
    m.graph.add_vertex(v);
  for (const auto &[name, init, term, line] : edge_decls) {
    if (!m.graph.has_vertex(init))
      parse_fail(line, "unknown vertex " + init + " in edge " + name);
    if (!m.graph.has_vertex(term))
      parse_fail(line, "unknown vertex " + term + " in edge " + name);
    m.graph.add_edge(name, init, term);
  }

  if (basepoint_name.empty())
    m.basepoint = 0;
  else if (m.graph.has_vertex(basepoint_name))
    m.basepoint = m.graph.vertex_id(basepoint_name);
  else
    fail(ErrorKind::parse, "unknown basepoint vertex " + basepoint_name);

  m.vertex_image.assign(m.graph.vertex_count(), 0);
  m.edge_image.assign(m.graph.edge_count(), EdgePath{});
  std::vector<char> have_v(m.graph.vertex_count(), 0),
      have_e(m.graph.edge_count(), 0);

  for (const auto &[name, entry] : images) {
    const auto &[word, line] = entry;
    if (m.graph.has_vertex(name)) {
      if (word.size() != 1 || !m.graph.has_vertex(word[0]))
        parse_fail(line, "vertex image must be a single vertex");
      m.vertex_image[m.graph.vertex_id(name)] = m.graph.vertex_id(word[0]);
      have_v[m.graph.vertex_id(name)] = 1;
    } else if (m.graph.has_edge(name)) {
      EdgeId e = m.graph.edge_id(name);
      EdgePath p;
      for (const auto &tok : word) {
        bool fwd = true;
        std::string base = tok;
        if (!base.empty() && base[0] == '-') {
          fwd = false;
          base = base.substr(1);
        }
        if (!m.graph.has_edge(base))
          parse_fail(line, "unknown edge token `" + tok + "`");
        p.steps.push_back(DirectedEdge{m.graph.edge_id(base), fwd});
      }
      if (!p.steps.empty())
        p.base = src(m.graph, p.steps.front());
      m.edge_image[e] = p;
      have_e[e] = 1;
    } else {
      parse_fail(line, "map entry for unknown name " + name);
    }
  }

  for (VertexId v = 0; v < m.graph.vertex_count(); ++v)
    if (!have_v[v])
      fail(ErrorKind::parse, "missing map entry for vertex " +
                                 m.graph.vertex_name(v));
  for (EdgeId e = 0; e < m.graph.edge_count(); ++e)
    if (!have_e[e])
      fail(ErrorKind::parse, "missing map entry for edge " +
                                 m.graph.edge_name(e));
  // Anchor empty/odd base vertices now that vertex images are in.
  for (EdgeId e = 0; e < m.graph.edge_count(); ++e)
    if (m.edge_image[e].empty())
      m.edge_image[e].base = m.vertex_image[m.graph.edge(e).init];
  return m;
}

GraphMap read_graph_map_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    fail(ErrorKind::parse, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph_map(buf.str());
}

std::string serialize_graph_map(const GraphMap &m) {
  std::ostringstream out;
  const Graph &g = m.graph;
  out << "vertices:";
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    out << " " << g.vertex_name(v);
  out << "\nedges:\n";
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    out << "  " << g.edge_name(e) << ": " << g.vertex_name(g.edge(e).init)
        << " " << g.vertex_name(g.edge(e).term) << "\n";
  out << "basepoint: " << g.vertex_name(m.basepoint) << "\n";
  out << "map:\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    out << "  " << g.vertex_name(v) << " -> "
        << g.vertex_name(m.vertex_image[v]) << "\n";
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    out << "  " << g.edge_name(e) << " ->";
    for (const auto &d : m.edge_image[e].steps)
      out << " " << (d.forward ? "" : "-") << g.edge_name(d.edge);
    out << "\n";
  }
  return out.str();
}

} // namespace ttc
