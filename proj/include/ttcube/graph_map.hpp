#pragma once

#include "ttcube/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ttc {

/// A graph self-map: vertices to vertices, each edge to a combinatorial
/// path read along the edge's preferred orientation.
struct GraphMap {
  Graph graph;
  std::vector<VertexId> vertex_image; // indexed by VertexId
  std::vector<EdgePath> edge_image;   // indexed by EdgeId
  VertexId basepoint = 0;
};

/// Empty iff the map satisfies all structural invariants: total images,
/// nonempty concatenable edge images with matching endpoints, fixed
/// basepoint, connected graph.
std::vector<std::string> validate(const GraphMap &m);

inline void require_valid(const GraphMap &m) {
  auto v = validate(m);
  if (!v.empty())
    fail(ErrorKind::invalid, "invalid graph map: " + v.front());
}

/// Image of a single directed step (reverses the stored path as needed).
EdgePath step_image(const GraphMap &m, DirectedEdge d);

/// Applies the map once to every step of `p` (no reduction).
EdgePath map_path(const GraphMap &m, const EdgePath &p);

/// The path of the n-th iterate on edge `e`; n = 0 gives the edge itself.
EdgePath iterate_edge(const GraphMap &m, EdgeId e, int n,
                      bool tighten_result = false);

/// Index of a direction: 2*edge + (forward ? 0 : 1).
std::size_t direction_index(DirectedEdge d);
DirectedEdge direction_of_index(std::size_t i);

/// The derivative on directions: each oriented edge to the first step of
/// its image path. Total, and eventually periodic under iteration.
struct DirectionMap {
  std::vector<DirectedEdge> image; // indexed by direction_index

  DirectedEdge operator()(DirectedEdge d) const {
    return image[direction_index(d)];
  }
};

DirectionMap direction_map(const GraphMap &m);

struct TrainTrackWitness {
  EdgeId edge = 0;       // edge whose image takes the degenerating turn
  std::size_t index = 0; // position of that turn inside the image path
  int iterate = 0;       // least n with the n-th iterate of `edge` not immersed
};

struct TrainTrackVerdict {
  bool is_train_track = false;
  std::optional<TrainTrackWitness> witness;
};

/// Finite decision procedure for the train track property: every taken
/// turn is followed under the direction map; the map is a train track map
/// iff every edge image is immersed and no turn orbit reaches a degenerate
/// turn. The direction set is finite, so the check terminates.
TrainTrackVerdict is_train_track(const GraphMap &m);

/// Transition digraph strong connectivity: every edge's iterated image
/// eventually traverses every edge.
bool is_irreducible(const GraphMap &m);

/// Per-edge verdict: edge e is expanding iff no iterate maps e onto a
/// single copy of itself. Detected on the single-image subgraph of the
/// transition digraph.
std::vector<bool> expanding_edges(const GraphMap &m);

struct CollapseReport {
  std::vector<std::string> collapsed_edges;
  int rounds = 0;
  GraphMap result;
};

/// Collapses the maximal invariant forest of edges with bounded iterated
/// image length, rewriting images with collapsed steps deleted, until
/// every edge is expanding and none maps to a point. Throws when a
/// component of the forest candidate contains a cycle.
CollapseReport collapse_invariant_forest(const GraphMap &m);

} // namespace ttc
