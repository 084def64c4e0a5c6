#include "ttcube/leafspace.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace ttc {

namespace {

constexpr double kSnap = 1e-10; // chart-boundary and junction tolerance
constexpr double kDrop = 1e-12; // fragments shorter than this vanish

// A traversed subinterval of an edge in weighted coordinates [0, |e|]:
// runs lo -> hi when d is forward, hi -> lo otherwise.
struct Seg {
  DirectedEdge d;
  double lo = 0.0, hi = 0.0;

  double len() const { return hi - lo; }
  double start() const { return d.forward ? lo : hi; }
  double end() const { return d.forward ? hi : lo; }
};

double snap(double x, double target) {
  return std::abs(x - target) <= kSnap ? target : x;
}

// Free reduction with partial-fragment bookkeeping: a fragment cancels
// against an inverse fragment sharing its junction point, whole edges
// included.
std::vector<Seg> tighten_segs(std::vector<Seg> in) {
  std::vector<Seg> stack;
  for (Seg seg : in) {
    for (;;) {
      if (seg.len() <= kDrop)
        break;
      if (stack.empty()) {
        stack.push_back(seg);
        break;
      }
      Seg &top = stack.back();
      bool inverse = top.d.edge == seg.d.edge && top.d.forward != seg.d.forward;
      if (!inverse || std::abs(top.end() - seg.start()) > kSnap) {
        stack.push_back(seg);
        break;
      }
      double overlap = std::min(top.len(), seg.len());
      // Trim both at the shared junction.
      if (top.d.forward)
        top.hi -= overlap;
      else
        top.lo += overlap;
      if (seg.d.forward)
        seg.lo += overlap;
      else
        seg.hi -= overlap;
      if (top.len() <= kDrop)
        stack.pop_back();
      if (seg.len() <= kDrop)
        break;
    }
  }
  return stack;
}

double segs_length(const std::vector<Seg> &segs) {
  double s = 0.0;
  for (const Seg &x : segs)
    s += x.len();
  return s;
}

// One application of the map under the constant-speed parametrization:
// each edge is subdivided proportionally to the weights of its image
// steps, so weighted lengths scale by exactly the eigenvalue.
std::vector<Seg> flow_segs(const GraphMap &m, const PerronData &pd,
                           const std::vector<Seg> &in) {
  std::vector<Seg> out;
  for (const Seg &seg : in) {
    const EdgePath &img = m.edge_image[seg.d.edge];
    std::vector<double> cum(img.size() + 1, 0.0);
    for (std::size_t j = 0; j < img.size(); ++j)
      cum[j + 1] = cum[j] + pd.weights.of(img.steps[j].edge);
    double ratio = cum.back() / pd.weights.of(seg.d.edge);
    double A = std::max(ratio * seg.lo, 0.0);
    double B = std::min(ratio * seg.hi, cum.back());

    std::vector<Seg> sub;
    for (std::size_t j = 0; j < img.size(); ++j) {
      // Snap to the chart breakpoints so exact boundary hits do not leave
      // rounding slivers behind.
      double u = snap(std::max(A, cum[j]), cum[j]);
      double v = snap(std::min(B, cum[j + 1]), cum[j + 1]);
      if (v - u <= kSnap)
        continue;
      DirectedEdge t = img.steps[j];
      Seg s;
      s.d = seg.d.forward ? t : t.reversed();
      if (t.forward) {
        s.lo = u - cum[j];
        s.hi = v - cum[j];
      } else {
        s.lo = cum[j + 1] - v;
        s.hi = cum[j + 1] - u;
      }
      double w = pd.weights.of(t.edge);
      s.lo = snap(s.lo, 0.0);
      s.hi = snap(s.hi, w);
      sub.push_back(s);
    }
    if (seg.d.forward)
      out.insert(out.end(), sub.begin(), sub.end());
    else
      out.insert(out.end(), sub.rbegin(), sub.rend());
  }
  return tighten_segs(std::move(out));
}

std::vector<Seg> path_to_segs(const GraphMap &m, const PerronData &pd,
                              const AnchoredPath &p) {
  std::vector<Seg> segs;
  if (p.lead_pos) {
    const EdgePoint &pt = point_of(p.start);
    segs.push_back(
        Seg{DirectedEdge{pt.edge, false}, 0.0,
            to_double(*p.lead_pos) * pd.weights.of(pt.edge)});
  }
  for (const DirectedEdge &d : p.spine.steps)
    segs.push_back(Seg{d, 0.0, pd.weights.of(d.edge)});
  if (p.trail_pos) {
    const EdgePoint &pt = point_of(p.end);
    segs.push_back(Seg{DirectedEdge{pt.edge, true}, 0.0,
                       to_double(*p.trail_pos) * pd.weights.of(pt.edge)});
  }
  return tighten_segs(std::move(segs));
}

// Spanning tree rooted at the basepoint: parent step per vertex.
struct SpanningTree {
  std::vector<std::optional<DirectedEdge>> parent_step; // into the parent
  std::vector<int> depth;
};

SpanningTree spanning_tree(const Graph &g, VertexId root) {
  SpanningTree t;
  t.parent_step.assign(g.vertex_count(), std::nullopt);
  t.depth.assign(g.vertex_count(), -1);
  std::queue<VertexId> q;
  q.push(root);
  t.depth[root] = 0;
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop();
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      for (bool fwd : {true, false}) {
        DirectedEdge d{e, fwd};
        if (src(g, d) != v)
          continue;
        VertexId w = dst(g, d);
        if (t.depth[w] >= 0)
          continue;
        t.depth[w] = t.depth[v] + 1;
        t.parent_step[w] = d.reversed(); // step from w back to v
        q.push(w);
      }
    }
  }
  return t;
}

EdgePath tree_path(const Graph &g, const SpanningTree &t, VertexId u,
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

VertexId anchor_vertex(const Graph &g, const Locus &l) {
  return is_vertex(l) ? vertex_of(l) : g.edge(point_of(l).edge).init;
}

} // namespace

AnchoredPath canonical_path(const GraphMap &m, const Locus &x,
                            const Locus &y) {
  require_valid(m);
  const Graph &g = m.graph;
  SpanningTree tree = spanning_tree(g, m.basepoint);
  AnchoredPath p;
  p.start = x;
  p.end = y;
  if (!is_vertex(x))
    p.lead_pos = point_of(x).pos;
  if (!is_vertex(y))
    p.trail_pos = point_of(y).pos;
  p.spine = tree_path(g, tree, anchor_vertex(g, x), anchor_vertex(g, y));
  return p;
}

double scaled_distance(const GraphMap &m, const PerronData &pd,
                       const AnchoredPath &path, int n) {
  if (n < 0)
    fail(ErrorKind::domain, "scaled_distance: negative iterate");
  std::vector<Seg> segs = path_to_segs(m, pd, path);
  for (int i = 0; i < n; ++i)
    segs = flow_segs(m, pd, segs);
  return segs_length(segs) / std::pow(pd.eigenvalue, n);
}

double scaled_distance(const GraphMap &m, const PerronData &pd, const Locus &x,
                       const Locus &y, int n) {
  return scaled_distance(m, pd, canonical_path(m, x, y), n);
}

LeafDistanceEstimate leaf_distance(const GraphMap &m, const PerronData &pd,
                                   const AnchoredPath &path, int N, double tol,
                                   int K) {
  if (N < 1)
    fail(ErrorKind::domain, "leaf_distance: need N >= 1");
  LeafDistanceEstimate est;
  std::vector<Seg> segs = path_to_segs(m, pd, path);
  double scale = 1.0;
  est.values.push_back(segs_length(segs));
  for (int n = 1; n <= N; ++n) {
    segs = flow_segs(m, pd, segs);
    scale *= pd.eigenvalue;
    double d = segs_length(segs) / scale;
    if (d > est.values.back() + 1e-9)
      fail(ErrorKind::structure,
           "leaf_distance: scaled distances increased at step " +
               std::to_string(n) + " (" + std::to_string(est.values.back()) +
               " -> " + std::to_string(d) + ")");
    est.values.push_back(d);
  }
  est.estimate = est.values.back();
  if (static_cast<int>(est.values.size()) > K) {
    est.stabilized = true;
    for (std::size_t i = est.values.size() - K; i < est.values.size(); ++i)
      if (est.values[i - 1] - est.values[i] >= tol)
        est.stabilized = false;
  }
  return est;
}

LeafDistanceEstimate leaf_distance(const GraphMap &m, const PerronData &pd,
                                   const Locus &x, const Locus &y, int N,
                                   double tol, int K) {
  return leaf_distance(m, pd, canonical_path(m, x, y), N, tol, K);
}

std::vector<SelectedPeriodicPoint>
select_distinct_periodic_points(const GraphMap &m, const PerronData &pd, int N,
                                double theta, int period_cap) {
  require_valid(m);
  std::vector<SelectedPeriodicPoint> chosen;
  std::vector<std::vector<Locus>> chosen_orbits;

  auto orbit_of = [&](const EdgePoint &x) {
    std::vector<Locus> orbit;
    Locus cur{x};
    do {
      orbit.push_back(cur);
      cur = image_point(m, cur);
    } while (!(cur == Locus{x}));
    return orbit;
  };

  for (EdgeId e = 0; e < m.graph.edge_count(); ++e) {
    bool found = false;
    for (int L = 1; L <= period_cap && !found; ++L) {
      for (const EdgePoint &cand : periodic_points(m, e, L).interior) {
        bool separated = true;
        for (const auto &orbit : chosen_orbits) {
          for (const Locus &o : orbit) {
            double d = leaf_distance(m, pd, Locus{cand}, o, N).estimate;
            if (d <= theta) {
              separated = false;
              break;
            }
          }
          if (!separated)
            break;
        }
        if (separated) {
          std::vector<Locus> orbit = orbit_of(cand);
          chosen.push_back({cand, static_cast<int>(orbit.size())});
          chosen_orbits.push_back(std::move(orbit));
          found = true;
          break;
        }
      }
    }
    if (!found)
      fail(ErrorKind::limit,
           "select_distinct_periodic_points: candidate pool exhausted on " +
               m.graph.edge_name(e) + " at period cap " +
               std::to_string(period_cap));
  }
  return chosen;
}

} // namespace ttc
