#pragma once

#include "ttcube/dynamics.hpp"
#include "ttcube/perron.hpp"

#include <optional>
#include <vector>

namespace ttc {

/// A path between two points that need not be vertices: a vertex-to-vertex
/// spine of full edges plus rational partial ends on the first/last edge.
/// The endpoints' anchor vertices are the initial vertices of their edges.
struct AnchoredPath {
  Locus start, end;
  EdgePath spine;               // from anchor(start) to anchor(end)
  std::optional<Rat> lead_pos;  // position of `start` on its edge
  std::optional<Rat> trail_pos; // position of `end` on its edge
};

/// Connects x to y through a fixed spanning tree (breadth-first from the
/// basepoint, edges in id order). Deterministic; no shortest-path search.
AnchoredPath canonical_path(const GraphMap &m, const Locus &x, const Locus &y);

/// Scaled distance between the n-th forward images of the path's
/// endpoints: eigenvalue^-n times the weighted length of the tightened
/// n-th image of the path. The forward flow uses the constant-speed
/// parametrization determined by the eigenvector weights, under which the
/// map is an exact homothety on every subinterval.
double scaled_distance(const GraphMap &m, const PerronData &pd,
                       const AnchoredPath &path, int n);
double scaled_distance(const GraphMap &m, const PerronData &pd, const Locus &x,
                       const Locus &y, int n);

struct LeafDistanceEstimate {
  std::vector<double> values; // d_0 .. d_N
  bool stabilized = false;
  double estimate = 0.0;
};

/// Computes d_0..d_N for one pair. The sequence being nonincreasing is a
/// hard invariant; a violation beyond 1e-9 throws. `stabilized` means the
/// last K successive drops were below `tol`; positivity of the limit is
/// only ever reported as an estimate.
LeafDistanceEstimate leaf_distance(const GraphMap &m, const PerronData &pd,
                                   const AnchoredPath &path, int N,
                                   double tol = 1e-9, int K = 5);
LeafDistanceEstimate leaf_distance(const GraphMap &m, const PerronData &pd,
                                   const Locus &x, const Locus &y, int N,
                                   double tol = 1e-9, int K = 5);

struct SelectedPeriodicPoint {
  EdgePoint point;
  int period = 0;
};

/// One periodic point per edge, chosen greedily among interior periodic
/// points of increasing period; a candidate is kept when its d_N-distance
/// to every previously selected point's full orbit exceeds theta.
std::vector<SelectedPeriodicPoint>
select_distinct_periodic_points(const GraphMap &m, const PerronData &pd, int N,
                                double theta, int period_cap = 10);

} // namespace ttc
