// Command-line front end for the ttcube shared library. Talks to the core
// exclusively through the C API in ttcube.h.

#include "ttcube.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

struct StringOut {
  char *s = nullptr;
  ~StringOut() { ttcube_string_free(s); }
  char **slot() { return &s; }
  std::string str() const { return s ? s : ""; }
};

int report_failure(ttcube_status st, const StringOut &err) {
  std::cerr << "error: " << ttcube_status_name(st);
  if (err.s)
    std::cerr << ": " << err.s;
  std::cerr << "\n";
  return 1;
}

using MapHandle = std::unique_ptr<ttcube_map, decltype(&ttcube_map_free)>;

MapHandle load_map(const std::string &path, int &rc) {
  ttcube_map *m = nullptr;
  StringOut err;
  ttcube_status st = ttcube_map_read_file(path.c_str(), &m, err.slot());
  if (st != TTCUBE_OK) {
    rc = report_failure(st, err);
    return MapHandle(nullptr, &ttcube_map_free);
  }
  rc = 0;
  return MapHandle(m, &ttcube_map_free);
}

bool write_file(const std::string &path, const std::string &content) {
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  out << content;
  return true;
}

std::vector<const char *> c_ptrs(const std::vector<std::string> &v) {
  std::vector<const char *> out;
  for (const auto &s : v)
    out.push_back(s.c_str());
  return out;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"train track maps, immersed walls, and dual cube complexes"};
  app.require_subcommand(1);

  // analyze
  std::string an_file, an_json;
  auto *analyze = app.add_subcommand("analyze", "validate and analyze a map");
  analyze->add_option("file", an_file)->required();
  analyze->add_option("--json", an_json, "write the full report to a file");

  // collapse
  std::string co_file, co_out;
  auto *collapse =
      app.add_subcommand("collapse", "collapse the invariant forest");
  collapse->add_option("file", co_file)->required();
  collapse->add_option("-o", co_out, "output file for the collapsed map");

  // busts
  std::string bu_file, bu_eps;
  int bu_tunnel = 0;
  bool bu_json = false;
  std::vector<std::string> bu_anchors;
  auto *busts = app.add_subcommand("busts", "choose primary busts");
  busts->add_option("file", bu_file)->required();
  busts->add_option("--tunnel", bu_tunnel)->required();
  busts->add_option("--anchor", bu_anchors, "anchor point edge:p/q")
      ->required();
  busts->add_option("--eps", bu_eps, "locality radius p/q");
  busts->add_flag("--json", bu_json);

  // wall
  std::string wa_file, wa_dot;
  int wa_tunnel = 0;
  bool wa_check = false;
  std::vector<std::string> wa_anchors;
  auto *wall = app.add_subcommand("wall", "build an immersed wall");
  wall->add_option("file", wa_file)->required();
  wall->add_option("--tunnel", wa_tunnel)->required();
  wall->add_option("--anchors", wa_anchors)->required();
  wall->add_option("--dot", wa_dot, "write the wall graph as DOT");
  wall->add_flag("--check", wa_check, "run the wall structure checks");

  // level
  std::string le_file, le_point;
  int le_depth = 0;
  bool le_dot = false;
  auto *level = app.add_subcommand("level", "preimage tree of a point");
  level->add_option("file", le_file)->required();
  level->add_option("--point", le_point)->required();
  level->add_option("--depth", le_depth)->required();
  level->add_flag("--dot", le_dot);

  // dmetric
  std::string dm_file, dm_from, dm_to;
  int dm_depth = 0;
  bool dm_csv = false;
  auto *dmetric = app.add_subcommand("dmetric", "scaled distance sequence");
  dmetric->add_option("file", dm_file)->required();
  dmetric->add_option("--from", dm_from)->required();
  dmetric->add_option("--to", dm_to)->required();
  dmetric->add_option("--depth", dm_depth)->required();
  dmetric->add_flag("--csv", dm_csv);

  // periodic
  std::string pe_file, pe_edge;
  int pe_power = 0;
  auto *periodic =
      app.add_subcommand("periodic", "fixed points of an iterate on an edge");
  periodic->add_option("file", pe_file)->required();
  periodic->add_option("--edge", pe_edge)->required();
  periodic->add_option("--power", pe_power)->required();

  // constants
  double c_l1 = 1, c_l2 = 0, c_m1 = 1, c_m2 = 0, c_delta = 0, c_B = 0;
  auto *constants =
      app.add_subcommand("constants", "quasiconvexity constants");
  constants->add_option("--l1", c_l1)->required();
  constants->add_option("--l2", c_l2)->required();
  constants->add_option("--m1", c_m1)->required();
  constants->add_option("--m2", c_m2)->required();
  constants->add_option("--delta", c_delta)->required();
  constants->add_option("--B", c_B)->required();

  // dual
  std::string du_file;
  int du_maxdim = 8;
  bool du_dot = false;
  auto *dual = app.add_subcommand("dual", "dual cube complex of a wallspace");
  dual->add_option("wallspace", du_file)->required();
  dual->add_option("--max-dim", du_maxdim);
  dual->add_flag("--dot", du_dot);

  // torus
  std::string to_file;
  int to_power = 1;
  bool to_pres = false;
  auto *torus = app.add_subcommand("torus", "mapping torus cell census");
  torus->add_option("file", to_file)->required();
  torus->add_option("--power", to_power)->required();
  torus->add_flag("--presentation", to_pres);

  CLI11_PARSE(app, argc, argv);

  if (*analyze) {
    int rc;
    MapHandle m = load_map(an_file, rc);
    if (!m)
      return rc;
    StringOut report;
    ttcube_status st = ttcube_map_analyze(m.get(), report.slot());
    if (st != TTCUBE_OK)
      return report_failure(st, StringOut{});
    std::cout << report.str() << "\n";
    if (!an_json.empty() && !write_file(an_json, report.str()))
      return 1;
    StringOut violations;
    ttcube_map_validate(m.get(), violations.slot());
    return violations.str() == "[]" ? 0 : 1;
  }

  if (*collapse) {
    int rc;
    MapHandle m = load_map(co_file, rc);
    if (!m)
      return rc;
    ttcube_map *result = nullptr;
    StringOut report, err;
    ttcube_status st =
        ttcube_map_collapse(m.get(), &result, report.slot(), err.slot());
    if (st != TTCUBE_OK)
      return report_failure(st, err);
    MapHandle collapsed(result, &ttcube_map_free);
    StringOut text;
    ttcube_map_serialize(collapsed.get(), text.slot());
    std::cerr << report.str() << "\n";
    if (co_out.empty())
      std::cout << text.str();
    else if (!write_file(co_out, text.str()))
      return 1;
    return 0;
  }

  if (*busts) {
    int rc;
    MapHandle m = load_map(bu_file, rc);
    if (!m)
      return rc;
    auto anchors = c_ptrs(bu_anchors);
    ttcube_busts *bs = nullptr;
    StringOut err;
    ttcube_status st = ttcube_busts_choose(
        m.get(), bu_tunnel, anchors.data(), anchors.size(),
        bu_eps.empty() ? nullptr : bu_eps.c_str(), &bs, err.slot());
    if (st != TTCUBE_OK)
      return report_failure(st, err);
    std::unique_ptr<ttcube_busts, decltype(&ttcube_busts_free)> busts_h(
        bs, &ttcube_busts_free);
    StringOut json;
    ttcube_busts_json(m.get(), busts_h.get(), json.slot());
    if (bu_json) {
      std::cout << json.str() << "\n";
    } else {
      StringOut checks;
      ttcube_busts_check(m.get(), busts_h.get(), checks.slot());
      std::cout << json.str() << "\n" << checks.str() << "\n";
    }
    return 0;
  }

  if (*wall) {
    int rc;
    MapHandle m = load_map(wa_file, rc);
    if (!m)
      return rc;
    auto anchors = c_ptrs(wa_anchors);
    ttcube_busts *bs = nullptr;
    StringOut err;
    ttcube_status st = ttcube_busts_choose(m.get(), wa_tunnel, anchors.data(),
                                           anchors.size(), nullptr, &bs,
                                           err.slot());
    if (st != TTCUBE_OK)
      return report_failure(st, err);
    std::unique_ptr<ttcube_busts, decltype(&ttcube_busts_free)> busts_h(
        bs, &ttcube_busts_free);
    ttcube_wall *w = nullptr;
    StringOut werr;
    st = ttcube_wall_build(m.get(), busts_h.get(), &w, werr.slot());
    if (st != TTCUBE_OK)
      return report_failure(st, werr);
    std::unique_ptr<ttcube_wall, decltype(&ttcube_wall_free)> wall_h(
        w, &ttcube_wall_free);
    StringOut json;
    ttcube_wall_json(m.get(), wall_h.get(), json.slot());
    std::cout << json.str() << "\n";
    if (!wa_dot.empty()) {
      StringOut dot;
      ttcube_wall_dot(m.get(), wall_h.get(), dot.slot());
      if (!write_file(wa_dot, dot.str()))
        return 1;
    }
    if (wa_check) {
      StringOut checks;
      ttcube_wall_check(m.get(), wall_h.get(), checks.slot());
      std::cout << checks.str() << "\n";
      StringOut aerr, approx;
      st = ttcube_wall_approximation_json(m.get(), wall_h.get(),
                                          approx.slot(), aerr.slot());
      if (st != TTCUBE_OK)
        return report_failure(st, aerr);
    }
    return 0;
  }

  if (*level) {
    int rc;
    MapHandle m = load_map(le_file, rc);
    if (!m)
      return rc;
    StringOut out, err;
    ttcube_status st =
        le_dot ? ttcube_map_level_dot(m.get(), le_point.c_str(), le_depth,
                                      out.slot(), err.slot())
               : ttcube_map_level_json(m.get(), le_point.c_str(), le_depth,
                                       out.slot(), err.slot());
    if (st != TTCUBE_OK)
      return report_failure(st, err);
    std::cout << out.str() << "\n";
    return 0;
  }

  if (*dmetric) {
    int rc;
    MapHandle m = load_map(dm_file, rc);
    if (!m)
      return rc;
    StringOut out, err;
    ttcube_status st =
        dm_csv ? ttcube_map_dmetric_csv(m.get(), dm_from.c_str(),
                                        dm_to.c_str(), dm_depth, out.slot(),
                                        err.slot())
               : ttcube_map_dmetric_json(m.get(), dm_from.c_str(),
                                         dm_to.c_str(), dm_depth, out.slot(),
                                         err.slot());
    if (st != TTCUBE_OK)
      return report_failure(st, err);
    std::cout << out.str();
    if (!dm_csv)
      std::cout << "\n";
    return 0;
  }

  if (*periodic) {
    int rc;
    MapHandle m = load_map(pe_file, rc);
    if (!m)
      return rc;
    StringOut out, err;
    ttcube_status st = ttcube_map_periodic(m.get(), pe_edge.c_str(), pe_power,
                                           out.slot(), err.slot());
    if (st != TTCUBE_OK)
      return report_failure(st, err);
    std::cout << out.str() << "\n";
    return 0;
  }

  if (*constants) {
    double out[3];
    ttcube_status st =
        ttcube_constants(c_l1, c_l2, c_m1, c_m2, c_delta, c_B, out);
    if (st != TTCUBE_OK)
      return report_failure(st, StringOut{});
    std::printf("kappa1 = %.10g\nkappa2 = %.10g\nL0 = %.10g\n", out[0], out[1],
                out[2]);
    return 0;
  }

  if (*dual) {
    ttcube_wallspace *ws = nullptr;
    StringOut err;
    ttcube_status st =
        ttcube_wallspace_read_file(du_file.c_str(), &ws, err.slot());
    if (st != TTCUBE_OK)
      return report_failure(st, err);
    std::unique_ptr<ttcube_wallspace, decltype(&ttcube_wallspace_free)> ws_h(
        ws, &ttcube_wallspace_free);
    ttcube_complex *cx = nullptr;
    StringOut derr;
    st = ttcube_dual_complex(ws_h.get(), du_maxdim, &cx, derr.slot());
    if (st != TTCUBE_OK)
      return report_failure(st, derr);
    std::unique_ptr<ttcube_complex, decltype(&ttcube_complex_free)> cx_h(
        cx, &ttcube_complex_free);
    StringOut out;
    if (du_dot)
      ttcube_complex_dot(cx_h.get(), out.slot());
    else
      ttcube_complex_json(cx_h.get(), out.slot());
    std::cout << out.str() << "\n";
    return 0;
  }

  if (*torus) {
    int rc;
    MapHandle m = load_map(to_file, rc);
    if (!m)
      return rc;
    StringOut out, err;
    ttcube_status st = ttcube_map_torus_json(m.get(), to_power,
                                             to_pres ? 1 : 0, out.slot(),
                                             err.slot());
    if (st != TTCUBE_OK)
      return report_failure(st, err);
    std::cout << out.str() << "\n";
    return 0;
  }

  return 0;
}
