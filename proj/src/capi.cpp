#include "ttcube.h"

#include "ttcube/emit.hpp"
#include "ttcube/gmfile.hpp"

#include <cstring>
#include <string>

using namespace ttc;

struct ttcube_map {
  GraphMap m;
};
struct ttcube_busts {
  BustSystem bs;
  std::vector<EdgePoint> anchors;
  std::optional<Rat> eps;
};
struct ttcube_wall {
  WallGraph w;
};
struct ttcube_wallspace {
  Wallspace ws;
};
struct ttcube_complex {
  Wallspace ws;
  CubeSkeleton sk;
};

namespace {

char *dup_string(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_err(char **err, const std::string &msg) {
  if (err)
    *err = dup_string(msg);
}

ttcube_status status_of(const Error &e) {
  switch (e.kind()) {
  case ErrorKind::parse:
    return TTCUBE_ERR_PARSE;
  case ErrorKind::invalid:
    return TTCUBE_ERR_INVALID;
  case ErrorKind::domain:
    return TTCUBE_ERR_DOMAIN;
  case ErrorKind::limit:
    return TTCUBE_ERR_LIMIT;
  case ErrorKind::structure:
    return TTCUBE_ERR_STRUCTURE;
  }
  return TTCUBE_ERR_INVALID;
}

template <typename F>
ttcube_status guarded(char **err, F &&fn) {
  try {
    fn();
    return TTCUBE_OK;
  } catch (const Error &e) {
    set_err(err, e.what());
    return status_of(e);
  } catch (const std::exception &e) {
    set_err(err, e.what());
    return TTCUBE_ERR_INVALID;
  }
}

// Parses "edge:p/q" or a bare vertex name.
Locus parse_locus(const GraphMap &m, const std::string &text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) {
    if (m.graph.has_vertex(text))
      return m.graph.vertex_id(text);
    fail(ErrorKind::parse, "expected `edge:p/q` or a vertex name, got `" +
                               text + "`");
  }
  std::string edge = text.substr(0, colon);
  if (!m.graph.has_edge(edge))
    fail(ErrorKind::parse, "unknown edge `" + edge + "`");
  auto pos = rat_parse(text.substr(colon + 1));
  if (!pos)
    fail(ErrorKind::parse, "malformed rational in `" + text + "`");
  return make_locus(m.graph, m.graph.edge_id(edge), *pos);
}

EdgePoint parse_interior_point(const GraphMap &m, const std::string &text) {
  Locus l = parse_locus(m, text);
  if (is_vertex(l))
    fail(ErrorKind::domain, "`" + text + "` is a vertex; an interior point "
                                          "is required");
  return point_of(l);
}

PerronData perron_for(const GraphMap &m) {
  return perron_eigen(transition_matrix(m));
}

} // namespace

extern "C" {

const char *ttcube_status_name(ttcube_status status) {
  switch (status) {
  case TTCUBE_OK:
    return "ok";
  case TTCUBE_ERR_PARSE:
    return "parse error";
  case TTCUBE_ERR_INVALID:
    return "invalid object";
  case TTCUBE_ERR_DOMAIN:
    return "domain error";
  case TTCUBE_ERR_LIMIT:
    return "limit exceeded";
  case TTCUBE_ERR_STRUCTURE:
    return "structural check failed";
  case TTCUBE_ERR_BADARG:
    return "bad argument";
  }
  return "unknown";
}

void ttcube_string_free(char *s) { std::free(s); }

ttcube_status ttcube_map_parse(const char *text, ttcube_map **out,
                               char **err) {
  if (!text || !out)
    return TTCUBE_ERR_BADARG;
  return guarded(err, [&] { *out = new ttcube_map{parse_graph_map(text)}; });
}

ttcube_status ttcube_map_read_file(const char *path, ttcube_map **out,
                                   char **err) {
  if (!path || !out)
    return TTCUBE_ERR_BADARG;
  return guarded(err,
                 [&] { *out = new ttcube_map{read_graph_map_file(path)}; });
}

void ttcube_map_free(ttcube_map *map) { delete map; }

ttcube_status ttcube_map_serialize(const ttcube_map *map, char **out) {
  if (!map || !out)
    return TTCUBE_ERR_BADARG;
  return guarded(nullptr,
                 [&] { *out = dup_string(serialize_graph_map(map->m)); });
}

ttcube_status ttcube_map_validate(const ttcube_map *map, char **json) {
  if (!map || !json)
    return TTCUBE_ERR_BADARG;
  return guarded(nullptr, [&] {
    std::string out = "[";
    auto v = validate(map->m);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i)
        out += ",";
      out += "\"" + v[i] + "\"";
    }
    out += "]";
    *json = dup_string(out);
  });
}

ttcube_status ttcube_map_analyze(const ttcube_map *map, char **json) {
  if (!map || !json)
    return TTCUBE_ERR_BADARG;
  return guarded(nullptr, [&] {
    *json = dup_string(analysis_json(map->m, analyze(map->m)));
  });
}

ttcube_status ttcube_map_collapse(const ttcube_map *map, ttcube_map **out,
                                  char **report_json, char **err) {
  if (!map || !out)
    return TTCUBE_ERR_BADARG;
  return guarded(err, [&] {
    CollapseReport rep = collapse_invariant_forest(map->m);
    if (report_json) {
      std::string j = "{\"rounds\": " + std::to_string(rep.rounds) +
                      ", \"collapsed_edges\": [";
      for (std::size_t i = 0; i < rep.collapsed_edges.size(); ++i) {
        if (i)
          j += ",";
        j += "\"" + rep.collapsed_edges[i] + "\"";
      }
      j += "]}";
      *report_json = dup_string(j);
    }
    *out = new ttcube_map{std::move(rep.result)};
  });
}

ttcube_status ttcube_map_level_json(const ttcube_map *map, const char *point,
                                    int depth, char **json, char **err) {
  if (!map || !point || !json)
    return TTCUBE_ERR_BADARG;
  return guarded(err, [&] {
    Level lv = level(map->m, parse_locus(map->m, point), depth);
    *json = dup_string(level_json(map->m, lv));
  });
}

ttcube_status ttcube_map_level_dot(const ttcube_map *map, const char *point,
                                   int depth, char **dot, char **err) {
  if (!map || !point || !dot)
    return TTCUBE_ERR_BADARG;
  return guarded(err, [&] {
    Level lv = level(map->m, parse_locus(map->m, point), depth);
    *dot = dup_string(level_dot(map->m, lv));
  });
}

ttcube_status ttcube_map_periodic(const ttcube_map *map, const char *edge,
                                  int power, char **json, char **err) {
  if (!map || !edge || !json)
    return TTCUBE_ERR_BADARG;
  return guarded(err, [&] {
    if (!map->m.graph.has_edge(edge))
      fail(ErrorKind::parse, std::string("unknown edge `") + edge + "`");
    EdgeId e = map->m.graph.edge_id(edge);
    PeriodicPoints pts = periodic_points(map->m, e, power);
    *json = dup_string(periodic_json(map->m, e, power, pts));
  });
}

ttcube_status ttcube_map_dmetric_json(const ttcube_map *map, const char *from,
                                      const char *to, int depth, char **json,
                                      char **err) {
  if (!map || !from || !to || !json)
    return TTCUBE_ERR_BADARG;
  return guarded(err, [&] {
    PerronData pd = perron_for(map->m);
    auto est = leaf_distance(map->m, pd, parse_locus(map->m, from),
                             parse_locus(map->m, to), depth);
    *json = dup_string(dmetric_json(map->m, est));
  });
}

ttcube_status ttcube_map_dmetric_csv(const ttcube_map *map, const char *from,
                                     const char *to, int depth, char **csv,
                                     char **err) {
  if (!map || !from || !to || !csv)
    return TTCUBE_ERR_BADARG;
  return guarded(err, [&] {
    PerronData pd = perron_for(map->m);
    auto est = leaf_distance(map->m, pd, parse_locus(map->m, from),
                             parse_locus(map->m, to), depth);
    *csv = dup_string(dmetric_csv(est));
  });
}

ttcube_status ttcube_map_torus_json(const ttcube_map *map, int power,
                                    int with_presentation, char **json,
                                    char **err) {
  if (!map || !json)
    return TTCUBE_ERR_BADARG;
  return guarded(err, [&] {
    TorusComplex tc = build_torus(map->m, power);
    std::string body = torus_json(map->m, tc);
    if (with_presentation) {
      Presentation p = presentation(map->m, power);
      body.pop_back(); // strip the closing brace, splice the presentation
      while (!body.empty() && (body.back() == '\n' || body.back() == ' '))
        body.pop_back();
      body += ",\n  \"presentation\": " + presentation_json(p) + "\n}";
    }
    *json = dup_string(body);
  });
}

ttcube_status ttcube_busts_choose(const ttcube_map *map, int tunnel_length,
                                  const char *const *anchors, size_t n_anchors,
                                  const char *eps, ttcube_busts **out,
                                  char **err) {
  if (!map || !anchors || !out)
    return TTCUBE_ERR_BADARG;
  return guarded(err, [&] {
    auto h = std::make_unique<ttcube_busts>();
    for (size_t i = 0; i < n_anchors; ++i)
      h->anchors.push_back(parse_interior_point(map->m, anchors[i]));
    if (eps) {
      auto r = rat_parse(eps);
      if (!r || *r <= 0)
        fail(ErrorKind::parse, "eps must be a positive rational");
      h->eps = *r;
    }
    h->bs = choose_busts(map->m, tunnel_length, h->anchors, h->eps);
    *out = h.release();
  });
}

void ttcube_busts_free(ttcube_busts *busts) { delete busts; }

ttcube_status ttcube_busts_json(const ttcube_map *map,
                                const ttcube_busts *busts, char **json) {
  if (!map || !busts || !json)
    return TTCUBE_ERR_BADARG;
  return guarded(nullptr,
                 [&] { *json = dup_string(busts_json(map->m, busts->bs)); });
}

ttcube_status ttcube_busts_check(const ttcube_map *map,
                                 const ttcube_busts *busts, char **json) {
  if (!map || !busts || !json)
    return TTCUBE_ERR_BADARG;
  return guarded(nullptr, [&] {
    CheckReport rep = verify_bust_properties(map->m, busts->bs,
                                             &busts->anchors, busts->eps);
    *json = dup_string(wall_check_json(rep));
  });
}

ttcube_status ttcube_wall_build(const ttcube_map *map,
                                const ttcube_busts *busts, ttcube_wall **out,
                                char **err) {
  if (!map || !busts || !out)
    return TTCUBE_ERR_BADARG;
  return guarded(err,
                 [&] { *out = new ttcube_wall{build_wall(map->m, busts->bs)}; });
}

void ttcube_wall_free(ttcube_wall *wall) { delete wall; }

ttcube_status ttcube_wall_json(const ttcube_map *map, const ttcube_wall *wall,
                               char **json) {
  if (!map || !wall || !json)
    return TTCUBE_ERR_BADARG;
  return guarded(nullptr,
                 [&] { *json = dup_string(wall_json(map->m, wall->w)); });
}

ttcube_status ttcube_wall_dot(const ttcube_map *map, const ttcube_wall *wall,
                              char **dot) {
  if (!map || !wall || !dot)
    return TTCUBE_ERR_BADARG;
  return guarded(nullptr,
                 [&] { *dot = dup_string(wall_dot(map->m, wall->w)); });
}

ttcube_status ttcube_wall_check(const ttcube_map *map, const ttcube_wall *wall,
                                char **json) {
  if (!map || !wall || !json)
    return TTCUBE_ERR_BADARG;
  return guarded(nullptr, [&] {
    CheckReport rep = check_wall(map->m, wall->w);
    *json = dup_string(wall_check_json(rep));
  });
}

ttcube_status ttcube_wall_approximation_json(const ttcube_map *map,
                                             const ttcube_wall *wall,
                                             char **json, char **err) {
  if (!map || !wall || !json)
    return TTCUBE_ERR_BADARG;
  return guarded(err, [&] {
    WallApproximation a = approximate_wall(map->m, wall->w);
    *json = dup_string(approximation_json(map->m, a));
  });
}

ttcube_status ttcube_wall_approximation_dot(const ttcube_map *map,
                                            const ttcube_wall *wall,
                                            char **dot, char **err) {
  if (!map || !wall || !dot)
    return TTCUBE_ERR_BADARG;
  return guarded(err, [&] {
    WallApproximation a = approximate_wall(map->m, wall->w);
    *dot = dup_string(approximation_dot(map->m, a));
  });
}

ttcube_status ttcube_map_min_tunnel_length(const ttcube_map *map,
                                           const char *const *anchors,
                                           size_t n_anchors, int *out,
                                           char **err) {
  if (!map || !anchors || !out)
    return TTCUBE_ERR_BADARG;
  return guarded(err, [&] {
    std::vector<EdgePoint> pts;
    for (size_t i = 0; i < n_anchors; ++i)
      pts.push_back(parse_interior_point(map->m, anchors[i]));
    *out = min_tunnel_length_narrow_zones(map->m, perron_for(map->m), pts);
  });
}

ttcube_status ttcube_constants(double l1, double l2, double m1, double m2,
                               double delta, double B, double out[3]) {
  if (!out)
    return TTCUBE_ERR_BADARG;
  return guarded(nullptr, [&] {
    CubulationConstants c = cubulation_constants(l1, l2, m1, m2, delta, B);
    out[0] = c.kappa1;
    out[1] = c.kappa2;
    out[2] = c.L0;
  });
}

ttcube_status ttcube_narrow_zone_bound(double eigenvalue,
                                       double max_edge_weight, double chi,
                                       int *out) {
  if (!out)
    return TTCUBE_ERR_BADARG;
  return guarded(nullptr, [&] {
    *out = narrow_zone_bound(eigenvalue, max_edge_weight, chi);
  });
}

ttcube_status ttcube_wallspace_parse(const char *json, ttcube_wallspace **out,
                                     char **err) {
  if (!json || !out)
    return TTCUBE_ERR_BADARG;
  return guarded(err, [&] {
    auto h = std::make_unique<ttcube_wallspace>();
    h->ws = wallspace_from_json(json);
    validate_wallspace(h->ws);
    *out = h.release();
  });
}

ttcube_status ttcube_wallspace_read_file(const char *path,
                                         ttcube_wallspace **out, char **err) {
  if (!path || !out)
    return TTCUBE_ERR_BADARG;
  return guarded(err, [&] {
    std::FILE *f = std::fopen(path, "rb");
    if (!f)
      fail(ErrorKind::parse, std::string("cannot open ") + path);
    std::string text;
    char buf[4096];
    size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, f)) > 0)
      text.append(buf, got);
    std::fclose(f);
    auto h = std::make_unique<ttcube_wallspace>();
    h->ws = wallspace_from_json(text);
    validate_wallspace(h->ws);
    *out = h.release();
  });
}

void ttcube_wallspace_free(ttcube_wallspace *ws) { delete ws; }

ttcube_status ttcube_dual_complex(const ttcube_wallspace *ws, int max_dim,
                                  ttcube_complex **out, char **err) {
  if (!ws || !out)
    return TTCUBE_ERR_BADARG;
  return guarded(err, [&] {
    auto h = std::make_unique<ttcube_complex>();
    h->ws = ws->ws;
    h->sk = dual_complex(ws->ws, max_dim);
    *out = h.release();
  });
}

void ttcube_complex_free(ttcube_complex *complex) { delete complex; }

ttcube_status ttcube_complex_json(const ttcube_complex *complex, char **json) {
  if (!complex || !json)
    return TTCUBE_ERR_BADARG;
  return guarded(nullptr, [&] {
    *json = dup_string(skeleton_json(complex->ws, complex->sk));
  });
}

ttcube_status ttcube_complex_dot(const ttcube_complex *complex, char **dot) {
  if (!complex || !dot)
    return TTCUBE_ERR_BADARG;
  return guarded(nullptr,
                 [&] { *dot = dup_string(skeleton_dot(complex->sk)); });
}

ttcube_status ttcube_complex_is_median(const ttcube_complex *complex,
                                       int *median, char **err) {
  if (!complex || !median)
    return TTCUBE_ERR_BADARG;
  return guarded(err, [&] {
    *median = is_median(complex->sk).is_median ? 1 : 0;
  });
}

} // extern "C"
