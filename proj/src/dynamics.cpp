#include "ttcube/dynamics.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ttc {

namespace {

PLRestriction base_chart(const GraphMap &m, EdgeId e) {
  const EdgePath &img = m.edge_image[e];
  if (img.empty())
    fail(ErrorKind::domain, "chart undefined: empty image of " +
                                m.graph.edge_name(e));
  PLRestriction pl;
  pl.source = e;
  pl.power = 1;
  Rat mlen(static_cast<long>(img.size()));
  for (std::size_t j = 0; j < img.size(); ++j) {
    ChartPiece piece;
    piece.lo = Rat(static_cast<long>(j)) / mlen;
    piece.hi = Rat(static_cast<long>(j + 1)) / mlen;
    piece.target = img.steps[j];
    if (piece.target.forward) {
      piece.s = mlen;
      piece.a = -Rat(static_cast<long>(j));
    } else {
      piece.s = -mlen;
      piece.a = Rat(static_cast<long>(j + 1));
    }
    pl.pieces.push_back(std::move(piece));
  }
  return pl;
}

} // namespace

PLRestriction pl_restriction(const GraphMap &m, EdgeId e, int L) {
  if (L < 1)
    fail(ErrorKind::domain, "pl_restriction: power must be >= 1");
  require_valid(m);

  // Memoized per (edge, power); composition pulls the (L-1)-restriction of
  // each target back through the base chart.
  std::map<std::pair<EdgeId, int>, PLRestriction> memo;
  auto compute = [&](auto &&self, EdgeId cur, int power) -> const PLRestriction & {
    auto key = std::make_pair(cur, power);
    auto it = memo.find(key);
    if (it != memo.end())
      return it->second;
    PLRestriction pl;
    if (power == 1) {
      pl = base_chart(m, cur);
    } else {
      PLRestriction base = base_chart(m, cur);
      pl.source = cur;
      pl.power = power;
      for (const ChartPiece &outer : base.pieces) {
        const PLRestriction &inner = self(self, outer.target.edge, power - 1);
        // Keep composed pieces sorted by source interval: traverse the
        // inner pieces against the outer orientation when reversed.
        auto emit = [&](const ChartPiece &ip) {
          ChartPiece c;
          c.s = ip.s * outer.s;
          c.a = ip.a + ip.s * outer.a;
          Rat x0 = outer.invert(ip.lo);
          Rat x1 = outer.invert(ip.hi);
          c.lo = std::min(x0, x1);
          c.hi = std::max(x0, x1);
          // Positive composed slope means the source runs along the final
          // target in its preferred direction.
          c.target = DirectedEdge{ip.target.edge, c.s > 0};
          pl.pieces.push_back(std::move(c));
        };
        if (outer.s > 0)
          for (const auto &ip : inner.pieces)
            emit(ip);
        else
          for (auto it2 = inner.pieces.rbegin(); it2 != inner.pieces.rend();
               ++it2)
            emit(*it2);
      }
    }
    return memo.emplace(key, std::move(pl)).first->second;
  };
  return compute(compute, e, L);
}

Locus image_point(const GraphMap &m, const EdgePoint &p) {
  const EdgePath &img = m.edge_image[p.edge];
  if (img.empty())
    fail(ErrorKind::domain, "image_point: empty image of " +
                                m.graph.edge_name(p.edge));
  Rat scaled = p.pos * Rat(static_cast<long>(img.size()));
  if (is_integer(scaled)) {
    // A subdivision breakpoint: lands on the vertex between two steps.
    long j = scaled.template convert_to<long>();
    return dst(m.graph, img.steps[static_cast<std::size_t>(j - 1)]);
  }
  BigInt jfloor = rat_floor(scaled);
  std::size_t j = jfloor.template convert_to<std::size_t>();
  Rat within = scaled - Rat(jfloor);
  DirectedEdge t = img.steps[j];
  Rat pos = t.forward ? within : Rat(1) - within;
  return EdgePoint{t.edge, pos};
}

Locus image_point(const GraphMap &m, const Locus &p) {
  if (is_vertex(p))
    return m.vertex_image[vertex_of(p)];
  return image_point(m, point_of(p));
}

Locus image_point_iter(const GraphMap &m, const Locus &p, int n) {
  Locus cur = p;
  for (int i = 0; i < n; ++i)
    cur = image_point(m, cur);
  return cur;
}

std::vector<Locus> preimage_step(const GraphMap &m, const Locus &p) {
  std::set<Locus> out;
  if (is_vertex(p)) {
    VertexId v = vertex_of(p);
    for (VertexId w = 0; w < m.graph.vertex_count(); ++w)
      if (m.vertex_image[w] == v)
        out.insert(Locus{w});
    for (EdgeId e = 0; e < m.graph.edge_count(); ++e) {
      const EdgePath &img = m.edge_image[e];
      Rat mlen(static_cast<long>(img.size()));
      for (std::size_t j = 0; j + 1 < img.steps.size(); ++j)
        if (dst(m.graph, img.steps[j]) == v)
          out.insert(EdgePoint{e, Rat(static_cast<long>(j + 1)) / mlen});
    }
  } else {
    const EdgePoint &q = point_of(p);
    for (EdgeId e = 0; e < m.graph.edge_count(); ++e) {
      const EdgePath &img = m.edge_image[e];
      Rat mlen(static_cast<long>(img.size()));
      for (std::size_t j = 0; j < img.steps.size(); ++j) {
        DirectedEdge t = img.steps[j];
        if (t.edge != q.edge)
          continue;
        Rat within = t.forward ? q.pos : Rat(1) - q.pos;
        out.insert(EdgePoint{e, (Rat(static_cast<long>(j)) + within) / mlen});
      }
    }
  }
  return std::vector<Locus>(out.begin(), out.end());
}

std::vector<EdgePoint> preimages(const GraphMap &m, const EdgePoint &p,
                                 int L) {
  std::set<EdgePoint> out;
  for (EdgeId e = 0; e < m.graph.edge_count(); ++e) {
    PLRestriction pl = pl_restriction(m, e, L);
    for (const ChartPiece &piece : pl.pieces) {
      if (piece.target.edge != p.edge)
        continue;
      Rat x = piece.invert(p.pos);
      if (x >= piece.lo && x <= piece.hi)
        out.insert(EdgePoint{e, x});
    }
  }
  return std::vector<EdgePoint>(out.begin(), out.end());
}

PeriodicPoints periodic_points(const GraphMap &m, EdgeId e, int L) {
  PeriodicPoints out;
  PLRestriction pl = pl_restriction(m, e, L);
  std::set<Rat> interior;
  std::set<VertexId> at_vertex;
  for (const ChartPiece &piece : pl.pieces) {
    if (piece.target.edge != e)
      continue;
    if (piece.s == 1) {
      // Identity piece: the whole edge maps onto itself rigidly, which an
      // expanding edge cannot do.
      fail(ErrorKind::structure,
           "periodic_points: identity piece on " + m.graph.edge_name(e) +
               " contradicts the expanding hypothesis");
    }
    Rat x = piece.a / (Rat(1) - piece.s);
    if (x < piece.lo || x > piece.hi)
      continue;
    if (x == 0)
      at_vertex.insert(m.graph.edge(e).init);
    else if (x == 1)
      at_vertex.insert(m.graph.edge(e).term);
    else
      interior.insert(x);
  }
  for (const Rat &x : interior)
    out.interior.push_back(EdgePoint{e, x});
  out.at_vertices.assign(at_vertex.begin(), at_vertex.end());
  return out;
}

SingularVerdict is_singular(const GraphMap &m, const Locus &p, int k_max) {
  if (k_max < 0)
    fail(ErrorKind::domain, "is_singular: negative bound");
  SingularVerdict v;
  v.k_max = k_max;
  Locus cur = p;
  for (int k = 0; k <= k_max; ++k) {
    if (is_vertex(cur)) {
      v.singular_within_bound = true;
      v.hitting_iterate = k;
      return v;
    }
    if (k < k_max)
      cur = image_point(m, cur);
  }
  return v;
}

Level level(const GraphMap &m, const Locus &p, int L) {
  if (L < 0)
    fail(ErrorKind::domain, "level: negative length");
  Level lv;
  lv.root = p;
  lv.length = L;
  lv.nodes.push_back({p, 0, -1});
  std::size_t frontier_begin = 0;
  for (int depth = 1; depth <= L; ++depth) {
    std::size_t frontier_end = lv.nodes.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      auto pre = preimage_step(m, lv.nodes[i].at);
      for (const Locus &q : pre)
        lv.nodes.push_back({q, depth, static_cast<int>(i)});
    }
    frontier_begin = frontier_end;
  }
  return lv;
}

bool level_is_truncation(const Level &shallow, const Level &deep) {
  if (deep.length < shallow.length)
    return false;
  std::multiset<std::pair<int, Locus>> a, b;
  for (const auto &n : shallow.nodes)
    a.insert({n.depth, n.at});
  for (const auto &n : deep.nodes)
    if (n.depth <= shallow.length)
      b.insert({n.depth, n.at});
  return a == b;
}

PeriodicNear find_periodic_near(const GraphMap &m, const EdgePoint &p,
                                const Rat &eps, int cap) {
  for (int L = 1; L <= cap; ++L) {
    PeriodicPoints pts = periodic_points(m, p.edge, L);
    const EdgePoint *best = nullptr;
    Rat best_gap;
    for (const EdgePoint &q : pts.interior) {
      Rat gap = q.pos - p.pos;
      if (gap < 0)
        gap = -gap;
      if (gap <= eps && (!best || gap < best_gap)) {
        best = &q;
        best_gap = gap;
      }
    }
    if (best) {
      // Least period: iterate until the orbit closes; it divides L.
      Locus cur{*best};
      int period = 0;
      do {
        cur = image_point(m, cur);
        ++period;
      } while (!(cur == Locus{*best}) && period <= L);
      if (cur != Locus{*best})
        fail(ErrorKind::structure, "find_periodic_near: orbit failed to close");
      return {*best, period};
    }
  }
  fail(ErrorKind::limit, "find_periodic_near: no periodic point within " +
                             rat_str(eps) + " up to power " +
                             std::to_string(cap));
}

} // namespace ttc
