#pragma once

#include "ttcube/graph_map.hpp"

#include <cstdint>
#include <vector>

namespace ttc {

/// Nonnegative integer matrix indexed by edges: entry (i,j) counts the
/// traversals of edge j by the image of edge i, ignoring orientation.
/// Row sums equal combinatorial image lengths.
struct TransitionMatrix {
  std::size_t n = 0;
  std::vector<std::vector<std::uint64_t>> entries;

  std::uint64_t at(std::size_t i, std::size_t j) const {
    return entries[i][j];
  }
  std::uint64_t row_sum(std::size_t i) const;
};

TransitionMatrix transition_matrix(const GraphMap &m);

/// Strong connectivity of the matrix digraph (arc i->j iff entry > 0).
bool matrix_irreducible(const TransitionMatrix &M);

/// Dominant eigenpair of an irreducible nonnegative matrix: eigenvalue,
/// positive right eigenvector scaled so the first edge has weight 1, and
/// the max-norm residual of the eigen identity.
struct PerronData {
  double eigenvalue = 0.0;
  Weighting weights;
  double residual = 0.0;
};

/// Power iteration on M + I (primitive whenever M is irreducible), until
/// successive Rayleigh quotients differ by less than `tol`.
PerronData perron_eigen(const TransitionMatrix &M, double tol = 1e-12,
                        std::size_t max_iter = 1000000);

struct ExpansionCheck {
  double max_residual = 0.0;
  bool within_tol = false;
};

/// For every edge e and 1 <= n <= n_max, compares the weighted length of
/// the (tightened) n-th iterate of e against eigenvalue^n * |e| and
/// reports the worst relative discrepancy. Cancellation in a
/// non-train-track map shows up here as a residual.
ExpansionCheck verify_expansion(const GraphMap &m, const PerronData &pd,
                                int n_max, double tol = 1e-8);

} // namespace ttc
