#include "ttcube/walls.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace ttc {

void CheckReport::add(const std::string &property, bool pass,
                      const std::string &witness) {
  items.push_back({property, pass, witness});
  all_pass = all_pass && pass;
}

std::vector<SecondaryBust> derive_secondary(const GraphMap &m, int L,
                                            const std::vector<Bust> &busts) {
  std::vector<SecondaryBust> out;
  for (EdgeId f = 0; f < m.graph.edge_count(); ++f) {
    PLRestriction pl = pl_restriction(m, f, L);
    for (const ChartPiece &piece : pl.pieces) {
      for (std::size_t i = 0; i < busts.size(); ++i) {
        if (piece.target.edge != busts[i].edge)
          continue;
        Rat x0 = piece.invert(busts[i].lo);
        Rat x1 = piece.invert(busts[i].hi);
        SecondaryBust sb;
        sb.edge = f;
        sb.primary = i;
        sb.flip = piece.s < 0;
        sb.lo = std::min(x0, x1);
        sb.hi = std::max(x0, x1);
        out.push_back(sb);
      }
    }
  }
  return out;
}

namespace {

std::string bust_str(const GraphMap &m, EdgeId e, const Rat &lo,
                     const Rat &hi) {
  return m.graph.edge_name(e) + "[" + rat_str(lo) + "," + rat_str(hi) + "]";
}

bool closed_intervals_meet(const Rat &a0, const Rat &a1, const Rat &b0,
                           const Rat &b1) {
  return a0 <= b1 && b0 <= a1;
}

bool meets_open(const Rat &a0, const Rat &a1, const Rat &olo, const Rat &ohi) {
  return a0 < ohi && olo < a1;
}

// Exact image of a closed subinterval under the L-th iterate, as closed
// intervals of target edges.
std::vector<std::pair<EdgeId, std::pair<Rat, Rat>>>
interval_image(const GraphMap &m, const PLRestriction &pl, const Rat &lo,
               const Rat &hi) {
  std::vector<std::pair<EdgeId, std::pair<Rat, Rat>>> out;
  for (const ChartPiece &piece : pl.pieces) {
    Rat u = std::max(lo, piece.lo);
    Rat v = std::min(hi, piece.hi);
    if (u >= v)
      continue;
    Rat y0 = piece.apply(u), y1 = piece.apply(v);
    if (y0 > y1)
      std::swap(y0, y1);
    out.push_back({piece.target.edge, {y0, y1}});
  }
  return out;
}

} // namespace

CheckReport verify_bust_properties(const GraphMap &m, const BustSystem &bs,
                                   const std::vector<EdgePoint> *anchors,
                                   const std::optional<Rat> &eps) {
  CheckReport rep;
  const int L = bs.tunnel_length;

  // Structural sanity: interior, one per edge, matching stored secondary.
  {
    bool interior = true;
    std::string w;
    std::set<EdgeId> used;
    for (const Bust &b : bs.busts) {
      if (!(Rat(0) < b.lo && b.lo < b.hi && b.hi < Rat(1))) {
        interior = false;
        w = bust_str(m, b.edge, b.lo, b.hi);
      }
      if (!used.insert(b.edge).second) {
        interior = false;
        w = "two busts on " + m.graph.edge_name(b.edge);
      }
    }
    rep.add("busts interior and one per edge", interior, w);
  }
  {
    auto fresh = derive_secondary(m, L, bs.busts);
    auto key = [](const SecondaryBust &s) {
      return std::tuple<EdgeId, Rat, Rat, bool, std::size_t>(s.edge, s.lo, s.hi,
                                                             s.flip, s.primary);
    };
    std::multiset<std::tuple<EdgeId, Rat, Rat, bool, std::size_t>> a, b;
    for (const auto &s : fresh)
      a.insert(key(s));
    for (const auto &s : bs.secondary)
      b.insert(key(s));
    rep.add("stored secondary busts match exact re-derivation", a == b);
  }

  // (1) primaries disjoint from all secondaries.
  {
    bool ok = true;
    std::string w;
    for (const Bust &b : bs.busts)
      for (const SecondaryBust &s : bs.secondary)
        if (s.edge == b.edge &&
            closed_intervals_meet(b.lo, b.hi, s.lo, s.hi)) {
          ok = false;
          w = bust_str(m, b.edge, b.lo, b.hi) + " meets " +
              bust_str(m, s.edge, s.lo, s.hi);
        }
    rep.add("(1) primaries disjoint from secondary busts", ok, w);
  }

  // (2) secondaries in the eps-neighborhood of the anchor preimages. The
  // piece carrying a secondary also carries exactly one preimage of that
  // bust's anchor; the whole interval must sit within eps of it.
  if (anchors && eps) {
    bool ok = true;
    std::string w;
    for (const SecondaryBust &s : bs.secondary) {
      const EdgePoint &anchor = (*anchors)[s.primary];
      PLRestriction pl = pl_restriction(m, s.edge, L);
      bool near = false;
      for (const ChartPiece &piece : pl.pieces) {
        if (piece.target.edge != anchor.edge)
          continue;
        if (!(piece.lo <= s.lo && s.hi <= piece.hi))
          continue;
        Rat x = piece.invert(anchor.pos);
        Rat lo_gap = s.lo > x ? s.lo - x : x - s.lo;
        Rat hi_gap = s.hi > x ? s.hi - x : x - s.hi;
        if (lo_gap <= *eps && hi_gap <= *eps)
          near = true;
      }
      if (!near) {
        ok = false;
        w = bust_str(m, s.edge, s.lo, s.hi);
      }
    }
    rep.add("(2) secondaries within eps of anchor preimages", ok, w);
  }

  // (3) nonsingular endpoints, up to the bound 4L.
  {
    bool ok = true;
    std::string w;
    int k_max = 4 * L;
    for (const Bust &b : bs.busts)
      for (const Rat &q : {b.lo, b.hi}) {
        auto verdict = is_singular(m, Locus{EdgePoint{b.edge, q}}, k_max);
        if (verdict.singular_within_bound) {
          ok = false;
          w = m.graph.edge_name(b.edge) + "(" + rat_str(q) +
              ") hits a vertex at iterate " +
              std::to_string(verdict.hitting_iterate);
        }
      }
    rep.add("(3) bust endpoints nonsingular (bound 4L)", ok, w);
  }

  // (4) anchors realized as endpoints where admissible. An anchor whose
  // image lands exactly on another anchor is exempt: the preimage of that
  // bust shares the would-be endpoint, so realization conflicts with (1).
  if (anchors) {
    bool ok = true;
    std::string w;
    for (std::size_t i = 0; i < bs.busts.size(); ++i) {
      const EdgePoint &x = (*anchors)[i];
      auto sing = is_singular(m, Locus{x}, 4 * L);
      Locus img = image_point_iter(m, Locus{x}, L);
      bool fixed = img == Locus{x};
      bool collides = false;
      for (std::size_t j = 0; j < anchors->size(); ++j)
        if (j != i && img == Locus{(*anchors)[j]})
          collides = true;
      if (!sing.singular_within_bound && !fixed && !collides) {
        if (bs.busts[i].lo != x.pos && bs.busts[i].hi != x.pos) {
          ok = false;
          w = "anchor " + locus_str(m.graph, Locus{x}) +
              " is not an endpoint of its bust";
        }
      }
    }
    rep.add("(4) admissible anchors are bust endpoints", ok, w);
  }

  // (5) the L-th iterate embeds on each primary: the bust lies strictly
  // inside a single chart piece.
  {
    bool ok = true;
    std::string w;
    for (const Bust &b : bs.busts) {
      PLRestriction pl = pl_restriction(m, b.edge, L);
      bool inside = false;
      for (const ChartPiece &piece : pl.pieces)
        if (piece.lo <= b.lo && b.hi <= piece.hi)
          inside = true;
      if (!inside) {
        ok = false;
        w = bust_str(m, b.edge, b.lo, b.hi) + " straddles a chart breakpoint";
      }
    }
    rep.add("(5) iterate embeds on each primary bust", ok, w);
  }

  // (6) images of distinct primaries are disjoint.
  {
    bool ok = true;
    std::string w;
    std::vector<std::vector<std::pair<EdgeId, std::pair<Rat, Rat>>>> images;
    for (const Bust &b : bs.busts)
      images.push_back(
          interval_image(m, pl_restriction(m, b.edge, L), b.lo, b.hi));
    for (std::size_t i = 0; i < images.size(); ++i)
      for (std::size_t j = i + 1; j < images.size(); ++j)
        for (const auto &[e1, iv1] : images[i])
          for (const auto &[e2, iv2] : images[j])
            if (e1 == e2 && closed_intervals_meet(iv1.first, iv1.second,
                                                  iv2.first, iv2.second)) {
              ok = false;
              w = "images of busts " + std::to_string(i) + " and " +
                  std::to_string(j) + " meet on " + m.graph.edge_name(e1);
            }
    rep.add("(6) images of distinct primaries disjoint", ok, w);
  }

  return rep;
}

BustSystem choose_busts(const GraphMap &m, int L,
                        const std::vector<EdgePoint> &anchors,
                        const std::optional<Rat> &eps) {
  require_valid(m);
  if (L < 1)
    fail(ErrorKind::domain, "choose_busts: tunnel length must be >= 1");
  {
    auto exp = expanding_edges(m);
    for (bool b : exp)
      if (!b)
        fail(ErrorKind::domain, "choose_busts: map has a non-expanding edge");
  }
  {
    std::set<EdgeId> used;
    for (const EdgePoint &a : anchors)
      if (!used.insert(a.edge).second)
        fail(ErrorKind::domain, "choose_busts: two anchors on edge " +
                                    m.graph.edge_name(a.edge));
  }
  // Distinct anchors must have distinct L-th images, else property (6) is
  // unattainable and the caller has to perturb.
  for (std::size_t i = 0; i < anchors.size(); ++i)
    for (std::size_t j = i + 1; j < anchors.size(); ++j)
      if (image_point_iter(m, Locus{anchors[i]}, L) ==
          image_point_iter(m, Locus{anchors[j]}, L))
        fail(ErrorKind::domain,
             "choose_busts: anchors " + locus_str(m.graph, Locus{anchors[i]}) +
                 " and " + locus_str(m.graph, Locus{anchors[j]}) +
                 " have equal images under the length-" + std::to_string(L) +
                 " iterate; perturb one of them");

  const int k_max = 4 * L;

  // Per anchor: a base point z (the anchor itself when admissible) and a
  // side on which the interval grows from z.
  struct Seed {
    Rat z;
    int side = +1; // bust is [z, z+h] or [z-h, z]
    Rat h;
  };
  std::vector<Seed> seeds(anchors.size());

  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const EdgePoint &x = anchors[i];
    PeriodicPoints fixed = periodic_points(m, x.edge, L);
    auto is_fixed_pt = [&](const Rat &p) {
      for (const auto &q : fixed.interior)
        if (q.pos == p)
          return true;
      return false;
    };
    auto nonsingular = [&](const Rat &p) {
      return !is_singular(m, Locus{EdgePoint{x.edge, p}}, k_max)
                  .singular_within_bound;
    };
    auto hits_other_anchor = [&](const Rat &p) {
      Locus img = image_point_iter(m, Locus{EdgePoint{x.edge, p}}, L);
      for (const EdgePoint &other : anchors)
        if (!(other == x) && img == Locus{other})
          return true;
      return false;
    };

    // An anchor mapping exactly onto another anchor cannot be a bust
    // endpoint: the other bust's preimage would share it. Treat it like a
    // fixed or singular anchor and move the interval off the point;
    // the bad set is countable, so some dyadic offset works. Stay well
    // inside eps so the locality property remains attainable.
    Rat z = x.pos;
    if (hits_other_anchor(z) || is_fixed_pt(z) || !nonsingular(z)) {
      Rat step(1, 64);
      if (eps && *eps / 4 < step)
        step = *eps / 4;
      bool found = false;
      for (int k = 0; k < 200 && !found; ++k) {
        for (int side : {+1, -1}) {
          Rat cand = x.pos + Rat(side) * step;
          if (cand <= 0 || cand >= 1)
            continue;
          if (!is_fixed_pt(cand) && nonsingular(cand) &&
              !hits_other_anchor(cand)) {
            z = cand;
            found = true;
            break;
          }
        }
        step /= 2;
      }
      if (!found)
        fail(ErrorKind::limit,
             "choose_busts: no admissible interval endpoint near anchor " +
                 locus_str(m.graph, Locus{x}));
    }

    // Initial width: a fraction of the gap to the nearest fixed point or
    // edge end, so property (1) has room.
    Rat gap = std::min(z, Rat(1) - z);
    for (const auto &q : fixed.interior) {
      Rat d = q.pos - z;
      if (d < 0)
        d = -d;
      if (d > 0)
        gap = std::min(gap, d);
    }
    seeds[i].z = z;
    seeds[i].h = gap / 4;
    seeds[i].side = (z + seeds[i].h < 1) ? +1 : -1;
  }

  auto assemble = [&](const std::vector<Seed> &s) {
    BustSystem bs;
    bs.tunnel_length = L;
    for (std::size_t i = 0; i < anchors.size(); ++i) {
      Bust b;
      b.edge = anchors[i].edge;
      if (s[i].side > 0) {
        b.lo = s[i].z;
        b.hi = s[i].z + s[i].h;
      } else {
        b.lo = s[i].z - s[i].h;
        b.hi = s[i].z;
      }
      bs.busts.push_back(b);
    }
    bs.secondary = derive_secondary(m, L, bs.busts);
    return bs;
  };

  for (int round = 0; round < 400; ++round) {
    BustSystem bs = assemble(seeds);
    CheckReport rep = verify_bust_properties(
        m, bs, &anchors, eps ? std::optional<Rat>(*eps) : std::nullopt);
    if (rep.all_pass)
      return bs;

    // Shrink everything that still violates; the endpoint-nonsingularity
    // failures get an off-ratio factor so halving does not revisit the
    // same singular point.
    bool endpoint_issue = false;
    for (const auto &item : rep.items)
      if (!item.pass && item.property.rfind("(3)", 0) == 0)
        endpoint_issue = true;
    for (auto &s : seeds)
      s.h = endpoint_issue ? s.h * Rat(5, 7) : s.h / 2;
  }
  fail(ErrorKind::limit,
       "choose_busts: could not satisfy the bust properties; the requested "
       "eps may be below the attainable rational granularity");
}

std::size_t WallGraph::node_count() const {
  return fragments.size() + vertex_count_hint + level_nodes.size() +
         busts.busts.size();
}

std::size_t WallGraph::level_node(std::size_t i) const {
  return fragments.size() + vertex_count_hint + i;
}

std::size_t WallGraph::crossing_node(std::size_t bust) const {
  return fragments.size() + vertex_count_hint + level_nodes.size() + bust;
}

namespace {

struct FragmentKey {
  EdgeId edge;
  Rat endpoint;
};

// Nucleus fragment with the given exact endpoint, if any.
int fragment_with_endpoint(const WallGraph &w, EdgeId edge, const Rat &pos) {
  for (std::size_t i = 0; i < w.fragments.size(); ++i)
    if (w.fragments[i].edge == edge &&
        (w.fragments[i].lo == pos || w.fragments[i].hi == pos))
      return static_cast<int>(i);
  return -1;
}

} // namespace

WallGraph build_wall(const GraphMap &m, const BustSystem &bs) {
  require_valid(m);
  if (bs.busts.empty())
    fail(ErrorKind::domain, "build_wall: a wall needs at least one primary bust");

  WallGraph w;
  w.busts = bs;
  w.vertex_count_hint = m.graph.vertex_count();
  const int L = bs.tunnel_length;

  // Nucleus fragments: per edge, the closed complement of all open busts.
  for (EdgeId e = 0; e < m.graph.edge_count(); ++e) {
    std::vector<std::pair<Rat, Rat>> cuts;
    for (const Bust &b : bs.busts)
      if (b.edge == e)
        cuts.push_back({b.lo, b.hi});
    for (const SecondaryBust &s : bs.secondary)
      if (s.edge == e)
        cuts.push_back({s.lo, s.hi});
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      if (cuts[i + 1].first < cuts[i].second)
        fail(ErrorKind::invalid, "build_wall: overlapping busts on " +
                                     m.graph.edge_name(e));
    Rat at(0);
    for (const auto &[lo, hi] : cuts) {
      w.fragments.push_back({e, at, lo});
      at = hi;
    }
    w.fragments.push_back({e, at, Rat(1)});
  }

  // Level trees at the bust endpoints; leaves land on secondary bust
  // endpoints by construction.
  for (std::size_t i = 0; i < bs.busts.size(); ++i) {
    for (int sign : {+1, -1}) {
      Rat root_pos = sign > 0 ? bs.busts[i].hi : bs.busts[i].lo;
      Level lv = level(m, Locus{EdgePoint{bs.busts[i].edge, root_pos}}, L);
      int base = static_cast<int>(w.level_nodes.size());
      for (const auto &node : lv.nodes) {
        if (is_vertex(node.at))
          fail(ErrorKind::invalid,
               "build_wall: level tree of " +
                   bust_str(m, bs.busts[i].edge, bs.busts[i].lo,
                            bs.busts[i].hi) +
                   " passes through vertex " +
                   m.graph.vertex_name(vertex_of(node.at)) +
                   "; bust endpoint is singular");
        WallGraph::LevelNode ln;
        ln.bust = i;
        ln.sign = sign;
        ln.at = node.at;
        ln.depth = node.depth;
        ln.parent = node.parent < 0 ? -1 : base + node.parent;
        w.level_nodes.push_back(ln);
      }
    }
  }

  // Arcs: fragment-vertex incidences.
  for (std::size_t i = 0; i < w.fragments.size(); ++i) {
    const auto &f = w.fragments[i];
    if (f.lo == 0)
      w.arcs.push_back({w.fragment_node(i),
                        w.vertex_node(m.graph.edge(f.edge).init),
                        WallGraph::Arc::Kind::nucleus});
    if (f.hi == 1)
      w.arcs.push_back({w.fragment_node(i),
                        w.vertex_node(m.graph.edge(f.edge).term),
                        WallGraph::Arc::Kind::nucleus});
  }

  // Level arcs, and leaf attachments into the nucleus.
  for (std::size_t i = 0; i < w.level_nodes.size(); ++i) {
    const auto &ln = w.level_nodes[i];
    if (ln.parent >= 0)
      w.arcs.push_back({w.level_node(i),
                        w.level_node(static_cast<std::size_t>(ln.parent)),
                        WallGraph::Arc::Kind::level});
    if (ln.depth == L) {
      const EdgePoint &p = point_of(ln.at);
      int frag = fragment_with_endpoint(w, p.edge, p.pos);
      if (frag < 0)
        fail(ErrorKind::structure,
             "build_wall: level leaf " + locus_str(m.graph, ln.at) +
                 " is not a nucleus boundary point");
      w.arcs.push_back({w.level_node(i),
                        w.fragment_node(static_cast<std::size_t>(frag)),
                        WallGraph::Arc::Kind::attach});
    }
  }

  // Slopes: each tunnel's root joins, through the bust's crossing point,
  // the nucleus fragment outside the opposite endpoint.
  for (std::size_t i = 0; i < bs.busts.size(); ++i) {
    int root_plus = -1, root_minus = -1;
    for (std::size_t j = 0; j < w.level_nodes.size(); ++j)
      if (w.level_nodes[j].bust == i && w.level_nodes[j].depth == 0) {
        if (w.level_nodes[j].sign > 0)
          root_plus = static_cast<int>(j);
        else
          root_minus = static_cast<int>(j);
      }
    int frag_lo = fragment_with_endpoint(w, bs.busts[i].edge, bs.busts[i].lo);
    int frag_hi = fragment_with_endpoint(w, bs.busts[i].edge, bs.busts[i].hi);
    if (root_plus < 0 || root_minus < 0 || frag_lo < 0 || frag_hi < 0)
      fail(ErrorKind::structure, "build_wall: incomplete slope incidence");
    std::size_t x = w.crossing_node(i);
    w.arcs.push_back({w.level_node(static_cast<std::size_t>(root_plus)), x,
                      WallGraph::Arc::Kind::slope});
    w.arcs.push_back({x, w.fragment_node(static_cast<std::size_t>(frag_lo)),
                      WallGraph::Arc::Kind::slope});
    w.arcs.push_back({w.level_node(static_cast<std::size_t>(root_minus)), x,
                      WallGraph::Arc::Kind::slope});
    w.arcs.push_back({x, w.fragment_node(static_cast<std::size_t>(frag_hi)),
                      WallGraph::Arc::Kind::slope});
  }

  // Components.
  std::vector<int> parent(w.node_count());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) {
    while (parent[v] != v)
      v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto &arc : w.arcs) {
    int a = find(static_cast<int>(arc.a)), b = find(static_cast<int>(arc.b));
    if (a != b)
      parent[a] = b;
  }
  std::map<int, int> roots;
  w.component.resize(w.node_count());
  for (std::size_t v = 0; v < w.node_count(); ++v) {
    int r = find(static_cast<int>(v));
    auto it = roots.find(r);
    if (it == roots.end()) {
      int id = static_cast<int>(roots.size());
      roots[r] = id;
      w.component[v] = id;
    } else {
      w.component[v] = it->second;
    }
  }
  w.component_count = static_cast<int>(roots.size());
  return w;
}

CheckReport check_wall(const GraphMap &m, const WallGraph &w) {
  CheckReport rep;
  const int L = w.busts.tunnel_length;

  // Tunnel disjointness: two tunnels never share a point at the same
  // depth, and the two tunnels of one bust meet only at the crossing.
  {
    bool ok = true;
    std::string witness;
    std::map<std::pair<int, Locus>, std::pair<std::size_t, int>> seen;
    for (const auto &ln : w.level_nodes) {
      auto key = std::make_pair(ln.depth, ln.at);
      auto it = seen.find(key);
      if (it != seen.end() &&
          (it->second.first != ln.bust || it->second.second != ln.sign)) {
        ok = false;
        witness = "tunnels share " + locus_str(m.graph, ln.at) + " at depth " +
                  std::to_string(ln.depth);
      }
      seen[key] = {ln.bust, ln.sign};
    }
    rep.add("tunnels pairwise disjoint", ok, witness);
  }
  {
    bool ok = true;
    std::string witness;
    for (std::size_t i = 0; i < w.busts.busts.size(); ++i)
      if (w.busts.busts[i].lo == w.busts.busts[i].hi) {
        ok = false;
        witness = "degenerate bust " + std::to_string(i);
      }
    rep.add("paired tunnels meet in the single crossing point", ok, witness);
  }
  {
    bool ok = true;
    std::string witness;
    for (const auto &ln : w.level_nodes)
      if (is_vertex(ln.at)) {
        ok = false;
        witness = m.graph.vertex_name(vertex_of(ln.at));
      }
    // The tunnels' forward extent must also stay clear of vertices, which
    // is exactly nonsingularity of the bust endpoints out to depth L.
    for (const Bust &b : w.busts.busts)
      for (const Rat &q : {b.lo, b.hi}) {
        auto verdict = is_singular(m, Locus{EdgePoint{b.edge, q}}, L);
        if (verdict.singular_within_bound) {
          ok = false;
          witness = bust_str(m, b.edge, q, q) + " reaches a vertex at iterate " +
                    std::to_string(verdict.hitting_iterate);
        }
      }
    rep.add("no vertex inside a level tree or its forward extent", ok,
            witness);
  }
  {
    // Every depth-L leaf attaches to exactly one fragment endpoint.
    bool ok = true;
    std::string witness;
    std::vector<int> attach_count(w.level_nodes.size(), 0);
    for (const auto &arc : w.arcs)
      if (arc.kind == WallGraph::Arc::Kind::attach) {
        std::size_t li = arc.a - (w.fragments.size() + w.vertex_count_hint);
        attach_count[li]++;
      }
    for (std::size_t i = 0; i < w.level_nodes.size(); ++i) {
      int expect = w.level_nodes[i].depth == L ? 1 : 0;
      if (attach_count[i] != expect) {
        ok = false;
        witness = "node " + locus_str(m.graph, w.level_nodes[i].at) +
                  " has " + std::to_string(attach_count[i]) + " attachments";
      }
    }
    rep.add("every tunnel leaf glued to exactly one nucleus point", ok,
            witness);
  }
  {
    // Fragment census: per edge, fragments alternate with the open busts
    // and cover [0,1].
    bool ok = true;
    std::string witness;
    for (EdgeId e = 0; e < m.graph.edge_count() && ok; ++e) {
      std::vector<std::pair<Rat, Rat>> cuts;
      for (const Bust &b : w.busts.busts)
        if (b.edge == e)
          cuts.push_back({b.lo, b.hi});
      for (const SecondaryBust &s : w.busts.secondary)
        if (s.edge == e)
          cuts.push_back({s.lo, s.hi});
      std::sort(cuts.begin(), cuts.end());
      std::vector<std::pair<Rat, Rat>> expect;
      Rat at(0);
      for (const auto &[lo, hi] : cuts) {
        expect.push_back({at, lo});
        at = hi;
      }
      expect.push_back({at, Rat(1)});
      std::vector<std::pair<Rat, Rat>> got;
      for (const auto &f : w.fragments)
        if (f.edge == e)
          got.push_back({f.lo, f.hi});
      std::sort(got.begin(), got.end());
      if (got != expect) {
        ok = false;
        witness = "fragment census differs on " + m.graph.edge_name(e);
      }
    }
    rep.add("nucleus fragments partition edges minus open busts", ok, witness);
  }
  return rep;
}

int knockout_count(const WallGraph &w) {
  // Drop crossing nodes and slope arcs; count components of what remains,
  // ignoring components that are bare unreachable placeholders (crossings).
  std::vector<int> parent(w.node_count());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) {
    while (parent[v] != v)
      v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto &arc : w.arcs) {
    if (arc.kind == WallGraph::Arc::Kind::slope)
      continue;
    int a = find(static_cast<int>(arc.a)), b = find(static_cast<int>(arc.b));
    if (a != b)
      parent[a] = b;
  }
  std::set<int> roots;
  std::size_t crossings_begin = w.node_count() - w.busts.busts.size();
  for (std::size_t v = 0; v < crossings_begin; ++v)
    roots.insert(find(static_cast<int>(v)));
  return static_cast<int>(roots.size());
}

bool flat_complement_is_forest(const Graph &g,
                               const std::vector<Bust> &busts) {
  std::set<EdgeId> busted;
  for (const Bust &b : busts)
    busted.insert(b.edge);
  std::vector<int> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) {
    while (parent[v] != v)
      v = parent[v] = parent[parent[v]];
    return v;
  };
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (busted.count(e))
      continue;
    int a = find(static_cast<int>(g.edge(e).init));
    int b = find(static_cast<int>(g.edge(e).term));
    if (a == b)
      return false;
    parent[a] = b;
  }
  return true;
}

WallApproximation approximate_wall(const GraphMap &m, const WallGraph &w) {
  WallApproximation out;
  const int L = w.busts.tunnel_length;

  // Group fragments by nucleus component (component ids of fragment nodes).
  std::map<int, std::vector<const WallGraph::Fragment *>> groups;
  for (std::size_t i = 0; i < w.fragments.size(); ++i)
    groups[w.component[w.fragment_node(i)]].push_back(&w.fragments[i]);

  for (const auto &[comp, frags] : groups) {
    WallApproximation::NucleusImage img;
    img.component = comp;
    std::map<EdgeId, std::vector<std::pair<Rat, Rat>>> per_edge;
    for (const auto *f : frags) {
      PLRestriction pl = pl_restriction(m, f->edge, L);
      for (const auto &[e, iv] : interval_image(m, pl, f->lo, f->hi))
        per_edge[e].push_back(iv);
    }
    for (auto &[e, ivs] : per_edge) {
      std::sort(ivs.begin(), ivs.end());
      std::vector<std::pair<Rat, Rat>> merged;
      for (const auto &iv : ivs) {
        if (!merged.empty() && iv.first <= merged.back().second)
          merged.back().second = std::max(merged.back().second, iv.second);
        else
          merged.push_back(iv);
      }
      for (const auto &iv : merged)
        img.intervals.push_back({e, iv.first, iv.second});
    }
    out.nucleus_images.push_back(std::move(img));
  }

  // Avoids-bust: nucleus images must miss every open primary bust.
  for (const auto &img : out.nucleus_images)
    for (const auto &iv : img.intervals)
      for (const Bust &b : w.busts.busts)
        if (iv.edge == b.edge && meets_open(iv.lo, iv.hi, b.lo, b.hi))
          fail(ErrorKind::structure,
               "approximate_wall: nucleus image " +
                   bust_str(m, iv.edge, iv.lo, iv.hi) +
                   " meets open primary bust " +
                   bust_str(m, b.edge, b.lo, b.hi));

  // Slope approximations: the bust interval plus the forward orbit of the
  // opposite endpoint.
  for (std::size_t i = 0; i < w.busts.busts.size(); ++i) {
    const Bust &b = w.busts.busts[i];
    for (int sign : {+1, -1}) {
      WallApproximation::SlopeApprox sa;
      sa.bust = i;
      sa.sign = sign;
      sa.interval = b;
      Rat opposite = sign > 0 ? b.lo : b.hi;
      Locus cur{EdgePoint{b.edge, opposite}};
      sa.orbit.push_back(cur);
      for (int k = 0; k < L; ++k) {
        cur = image_point(m, cur);
        sa.orbit.push_back(cur);
      }
      out.slopes.push_back(std::move(sa));
    }
  }
  return out;
}

CheckReport check_slope_approximations(const GraphMap &m, const WallGraph &w,
                                       const WallApproximation &a) {
  CheckReport rep;
  bool ok = true;
  std::string witness;
  for (std::size_t i = 0; i < a.slopes.size(); ++i) {
    for (std::size_t j = i + 1; j < a.slopes.size(); ++j) {
      const auto &s1 = a.slopes[i], &s2 = a.slopes[j];
      if (s1.bust == s2.bust)
        continue; // the two slopes of one bust share the bust interval
      if (s1.interval.edge == s2.interval.edge &&
          closed_intervals_meet(s1.interval.lo, s1.interval.hi,
                                s2.interval.lo, s2.interval.hi)) {
        ok = false;
        witness = "bust intervals of slopes " + std::to_string(i) + "," +
                  std::to_string(j) + " meet";
      }
      for (std::size_t k = 0; k < s1.orbit.size() && k < s2.orbit.size(); ++k)
        if (s1.orbit[k] == s2.orbit[k]) {
          ok = false;
          witness = "orbits meet at step " + std::to_string(k) + " in " +
                    locus_str(m.graph, s1.orbit[k]);
        }
    }
  }
  rep.add("approximations of slopes at distinct busts are disjoint", ok,
          witness);
  (void)w;
  return rep;
}

int narrow_zone_bound(double eigenvalue, double max_edge_weight, double chi) {
  if (eigenvalue <= 1.0 || max_edge_weight <= 0.0 || chi <= 0.0)
    fail(ErrorKind::domain, "narrow_zone_bound: need eigenvalue > 1 and "
                            "positive weight and chi");
  double bound =
      4.0 * (std::log(max_edge_weight) - std::log(chi)) / std::log(eigenvalue);
  int L = static_cast<int>(std::floor(bound + 1e-12)) + 1;
  return std::max(L, 1);
}

int min_tunnel_length_narrow_zones(const GraphMap &m, const PerronData &pd,
                                   const std::vector<EdgePoint> &anchors) {
  require_valid(m);
  if (anchors.empty())
    fail(ErrorKind::domain, "min_tunnel_length: no anchors");
  double chi = 0.0;
  double max_w = 0.0;
  for (const EdgePoint &a : anchors) {
    max_w = std::max(max_w, pd.weights.of(a.edge));
    // chi_i: least weighted distance from the orbit to the vertex set.
    double chi_i = std::numeric_limits<double>::infinity();
    Locus cur{a};
    std::size_t guard = 0;
    do {
      if (is_vertex(cur))
        fail(ErrorKind::domain, "min_tunnel_length: anchor " +
                                    locus_str(m.graph, Locus{a}) +
                                    " is singular");
      const EdgePoint &p = point_of(cur);
      double lo = to_double(p.pos) * pd.weights.of(p.edge);
      double hi = to_double(Rat(1) - p.pos) * pd.weights.of(p.edge);
      chi_i = std::min(chi_i, std::min(lo, hi));
      cur = image_point(m, cur);
      if (++guard > 100000)
        fail(ErrorKind::domain, "min_tunnel_length: anchor " +
                                    locus_str(m.graph, Locus{a}) +
                                    " is not periodic");
    } while (!(cur == Locus{a}));
    chi = std::max(chi, chi_i);
  }
  return narrow_zone_bound(pd.eigenvalue, max_w, chi);
}

CubulationConstants cubulation_constants(double l1, double l2, double m1,
                                         double m2, double delta, double B) {
  if (l1 < 1.0 || m1 < 1.0 || l2 < 0.0 || m2 < 0.0 || delta < 0.0 || B < 0.0)
    fail(ErrorKind::domain,
         "cubulation_constants: need l1, m1 >= 1 and the rest >= 0");
  CubulationConstants c;
  c.kappa1 = 4.0 * l1 * m1;
  c.L0 = std::max(12.0 * (delta + B), 2.0 * l1 * (l2 + m2) + 1.0);
  c.kappa2 = m2 / 2.0 + 2.0 * c.L0 * (1.0 + 1.0 / c.kappa1);
  return c;
}

} // namespace ttc
