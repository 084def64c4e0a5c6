#pragma once

#include "ttcube/error.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace ttc {

/// A finite wallspace: chambers plus walls, each wall a bipartition of the
/// chamber set into two nonempty halfspaces.
struct Wallspace {
  std::vector<std::string> chambers;
  struct Wall {
    std::vector<std::uint32_t> side[2]; // sorted chamber indices
  };
  std::vector<Wall> walls;
};

/// Checks halfspaces are nonempty, disjoint, and cover the chambers;
/// rejects duplicate walls. Canonicalizes side order and wall order so
/// downstream output is independent of input enumeration.
void validate_wallspace(Wallspace &ws);

/// A consistent choice of one halfspace per wall.
struct Ultrafilter {
  std::vector<std::uint8_t> side; // 0 or 1 per wall

  bool operator==(const Ultrafilter &) const = default;
  bool operator<(const Ultrafilter &o) const { return side < o.side; }
};

/// Assigns each wall the halfspace containing the chamber.
Ultrafilter principal_ultrafilter(const Wallspace &ws,
                                  const std::string &chamber);
Ultrafilter principal_ultrafilter(const Wallspace &ws, std::uint32_t chamber);

/// Dual cube complex skeleton: vertices are the consistent ultrafilters
/// reachable from principal ones by consistency-preserving single-wall
/// flips; cubes record families of compatibly flippable walls.
struct CubeSkeleton {
  std::vector<Ultrafilter> vertices; // sorted
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<std::vector<std::uint32_t>> adjacency;
  std::vector<std::size_t> cube_counts; // index d >= 2 -> number of d-cubes
  int dimension = 0;                    // max d with a d-cube, edges included

  std::size_t square_count() const {
    return cube_counts.size() > 2 ? cube_counts[2] : 0;
  }
};

CubeSkeleton dual_complex(const Wallspace &ws, int max_dim = 8,
                          std::size_t vertex_cap = 1000000);

/// Wall pairs whose four quadrants are all nonempty.
std::vector<std::pair<std::uint32_t, std::uint32_t>>
crossing_pairs(const Wallspace &ws);

struct MedianVerdict {
  bool is_median = true;
  std::array<std::uint32_t, 3> witness = {0, 0, 0};
  std::size_t median_count = 1; // for the witness triple
};

/// Brute-force unique-median check on a connected graph via interval
/// computation; the sanity oracle for dual 1-skeleta.
MedianVerdict is_median_graph(const std::vector<std::vector<std::uint32_t>> &adj,
                              std::size_t cap = 500);
MedianVerdict is_median(const CubeSkeleton &sk, std::size_t cap = 500);

} // namespace ttc
