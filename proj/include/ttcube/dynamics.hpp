#pragma once

#include "ttcube/graph_map.hpp"

#include <vector>

namespace ttc {

/// One affine piece of an iterated edge map. On [lo,hi] the unit position
/// x maps to a + s*x, which is the image position in the target edge's
/// preferred coordinates; s > 0 means the piece traverses the target
/// forward, s < 0 backward. |s| * (hi - lo) = 1: each piece covers its
/// target edge exactly once.
struct ChartPiece {
  Rat lo, hi;
  DirectedEdge target; // traversal direction
  Rat a, s;

  Rat apply(const Rat &x) const { return a + s * x; }
  Rat invert(const Rat &y) const { return (y - a) / s; }
};

/// Exact piecewise-linear restriction of the L-th iterate to one edge.
/// The pieces partition [0,1]; read in order their targets spell the
/// untightened iterate path.
struct PLRestriction {
  EdgeId source = 0;
  int power = 0;
  std::vector<ChartPiece> pieces;
};

/// Convention: the map subdivides every edge into |image| subintervals of
/// equal unit length, each carried linearly onto its target edge. This
/// keeps every orbit, preimage, and fixed point rational.
PLRestriction pl_restriction(const GraphMap &m, EdgeId e, int L);

/// Image of a point under one application of the map. Subdivision
/// breakpoints land on vertices.
Locus image_point(const GraphMap &m, const Locus &p);
Locus image_point(const GraphMap &m, const EdgePoint &p);
Locus image_point_iter(const GraphMap &m, const Locus &p, int n);

/// All points mapping onto `p` under one application.
std::vector<Locus> preimage_step(const GraphMap &m, const Locus &p);

/// Exact preimages of an interior point under the L-th iterate, found by
/// inverting every chart piece that targets p's edge. Breakpoint
/// collisions are deduplicated by exact comparison.
std::vector<EdgePoint> preimages(const GraphMap &m, const EdgePoint &p, int L);

/// Interior fixed points of the L-th iterate on edge e, one per piece of
/// the restriction that targets e. Fixed points at edge endpoints are
/// reported separately as vertices.
struct PeriodicPoints {
  std::vector<EdgePoint> interior;
  std::vector<VertexId> at_vertices;
};

PeriodicPoints periodic_points(const GraphMap &m, EdgeId e, int L);

struct SingularVerdict {
  bool singular_within_bound = false;
  int hitting_iterate = -1;
  int k_max = 0;
};

/// A point is singular when some iterate lands on a vertex; only the
/// bounded question (k <= k_max) is decidable, and the verdict says which
/// bound was used.
SingularVerdict is_singular(const GraphMap &m, const Locus &p, int k_max);

/// The rooted preimage tree of depth L: nodes are (point, depth) pairs
/// with 0 <= depth <= L; each non-root node's parent is its image.
struct Level {
  Locus root;
  int length = 0;
  struct Node {
    Locus at;
    int depth = 0;
    int parent = -1; // index into nodes; -1 for the root
  };
  std::vector<Node> nodes; // nodes[0] is the root; sorted by depth
};

Level level(const GraphMap &m, const Locus &p, int L);

/// Nesting check used by the tree properties: the depth-<=L nodes of the
/// deeper level reproduce the shallower one.
bool level_is_truncation(const Level &shallow, const Level &deep);

struct PeriodicNear {
  EdgePoint point;
  int period = 0;
};

/// Smallest L (up to `cap`) whose interior fixed points on p's edge come
/// within eps of p, in unit coordinates; returns the closest one with its
/// least period.
PeriodicNear find_periodic_near(const GraphMap &m, const EdgePoint &p,
                                const Rat &eps, int cap = 24);

} // namespace ttc
