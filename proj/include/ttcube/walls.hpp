#pragma once

#include "ttcube/dynamics.hpp"
#include "ttcube/perron.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ttc {

/// A closed interval strictly inside one edge; lo is the q- endpoint and
/// hi the q+ endpoint.
struct Bust {
  EdgeId edge = 0;
  Rat lo, hi;
};

/// A component of the L-th preimage of a primary bust. `flip` records the
/// endpoint correspondence: when true the component's lo endpoint maps to
/// the primary's hi endpoint.
struct SecondaryBust {
  EdgeId edge = 0;
  Rat lo, hi;
  bool flip = false;
  std::size_t primary = 0; // index into BustSystem::busts
};

struct BustSystem {
  int tunnel_length = 0;
  std::vector<Bust> busts; // at most one per edge
  std::vector<SecondaryBust> secondary;
};

/// Exact recomputation of all secondary busts from the primaries.
std::vector<SecondaryBust> derive_secondary(const GraphMap &m, int L,
                                            const std::vector<Bust> &busts);

struct CheckItem {
  std::string property;
  bool pass = true;
  std::string witness;
};

struct CheckReport {
  std::vector<CheckItem> items;
  bool all_pass = true;

  void add(const std::string &property, bool pass,
           const std::string &witness = "");
};

/// Machine checks of the six bust-selection properties: (1) primaries
/// disjoint from all secondaries, (2) secondaries within eps of the
/// anchor preimages, (3) nonsingular endpoints up to 4L iterations,
/// (4) anchors realized as endpoints where admissible, (5) the L-th
/// iterate embeds on each primary, (6) images of distinct primaries are
/// disjoint. Items (2) and (4) need the anchors and are skipped without
/// them.
CheckReport verify_bust_properties(const GraphMap &m, const BustSystem &bs,
                                   const std::vector<EdgePoint> *anchors,
                                   const std::optional<Rat> &eps);

/// Chooses one primary bust near each anchor, geometrically shrinking
/// candidate intervals until every property verifies. Throws when two
/// anchors share an edge or an L-th image collision forces the caller to
/// perturb an anchor.
BustSystem choose_busts(const GraphMap &m, int L,
                        const std::vector<EdgePoint> &anchors,
                        const std::optional<Rat> &eps = std::nullopt);

/// The wall graph: nucleus fragments left after removing all open busts,
/// level trees rooted at primary bust endpoints, and slopes pairing the
/// two endpoints of each bust through their crossing point.
struct WallGraph {
  BustSystem busts;

  struct Fragment {
    EdgeId edge = 0;
    Rat lo, hi;
  };
  std::vector<Fragment> fragments;

  struct LevelNode {
    std::size_t bust = 0;
    int sign = +1; // +1: tree rooted at hi endpoint; -1: at lo endpoint
    Locus at;
    int depth = 0;
    int parent = -1; // index into level_nodes, -1 at the root
  };
  std::vector<LevelNode> level_nodes;

  // Global node indexing: fragments, then graph vertices, then level
  // nodes, then one crossing node per bust.
  enum class NodeKind { fragment, vertex, level, crossing };
  std::size_t node_count() const;
  std::size_t fragment_node(std::size_t i) const { return i; }
  std::size_t vertex_node(VertexId v) const { return fragments.size() + v; }
  std::size_t level_node(std::size_t i) const;
  std::size_t crossing_node(std::size_t bust) const;

  struct Arc {
    std::size_t a = 0, b = 0;
    enum class Kind { nucleus, level, attach, slope } kind = Kind::level;
  };
  std::vector<Arc> arcs;

  std::vector<int> component; // per global node
  int component_count = 0;

  std::size_t vertex_count_hint = 0; // graph vertex count at build time
};

/// Assembles the wall determined by a bust system. Requires at least one
/// primary bust; throws when a level tree passes through a vertex, which
/// means a bust endpoint was singular.
WallGraph build_wall(const GraphMap &m, const BustSystem &bs);

/// Verifies the wall-graph invariants: pairwise tunnel disjointness, the
/// two tunnels of one bust meeting only at their crossing, no vertices
/// inside level trees, every leaf attached to exactly one nucleus
/// boundary point, and the fragment census matching the busts.
CheckReport check_wall(const GraphMap &m, const WallGraph &w);

/// Maximal connected pieces containing no slope interior point.
int knockout_count(const WallGraph &w);

/// Whether the graph minus the open primary busts is a forest (the
/// checkable sufficient condition for sub-quasiconvexity).
bool flat_complement_is_forest(const Graph &g, const std::vector<Bust> &busts);

/// The forward replacement of a wall: each nucleus component flows L steps
/// through the charts, each slope is replaced by its bust interval plus
/// the forward orbit of the opposite endpoint.
struct WallApproximation {
  struct NucleusImage {
    int component = 0;
    std::vector<WallGraph::Fragment> intervals; // merged, exact
  };
  std::vector<NucleusImage> nucleus_images;

  struct SlopeApprox {
    std::size_t bust = 0;
    int sign = +1;
    Bust interval;
    std::vector<Locus> orbit; // opposite endpoint through L iterates
  };
  std::vector<SlopeApprox> slopes;
};

/// Throws when a nucleus image meets an open primary bust, which would
/// contradict the bust-selection properties upstream.
WallApproximation approximate_wall(const GraphMap &m, const WallGraph &w);

/// Pairwise exact disjointness evidence for approximations of slopes at
/// distinct busts.
CheckReport check_slope_approximations(const GraphMap &m, const WallGraph &w,
                                       const WallApproximation &a);

/// Least integer tunnel length exceeding 4*(log_w(max|e|) - log_w(chi)).
int narrow_zone_bound(double eigenvalue, double max_edge_weight, double chi);

/// Computes chi from the orbits of periodic regular anchors (max over
/// anchors of the min weighted distance to a vertex along the orbit) and
/// returns the narrow-zone tunnel length bound.
int min_tunnel_length_narrow_zones(const GraphMap &m, const PerronData &pd,
                                   const std::vector<EdgePoint> &anchors);

struct CubulationConstants {
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  double L0 = 0.0;
};

/// kappa1 = 4*l1*m1, L0 = max(12*(delta+B), 2*l1*(l2+m2)+1),
/// kappa2 = m2/2 + 2*L0*(1 + 1/kappa1).
CubulationConstants cubulation_constants(double l1, double l2, double m1,
                                         double m2, double delta, double B);

} // namespace ttc
