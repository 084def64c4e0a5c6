#include "ttcube/perron.hpp"

#include <cmath>
#include <numeric>

namespace ttc {

std::uint64_t TransitionMatrix::row_sum(std::size_t i) const {
  std::uint64_t s = 0;
  for (auto v : entries[i])
    s += v;
  return s;
}

TransitionMatrix transition_matrix(const GraphMap &m) {
  require_valid(m);
  std::size_t n = m.graph.edge_count();
  TransitionMatrix M;
  M.n = n;
  M.entries.assign(n, std::vector<std::uint64_t>(n, 0));
  for (EdgeId e = 0; e < n; ++e)
    for (const auto &d : m.edge_image[e].steps)
      ++M.entries[e][d.edge];
  return M;
}

bool matrix_irreducible(const TransitionMatrix &M) {
  if (M.n == 0)
    return false;
  for (std::size_t s = 0; s < M.n; ++s) {
    std::vector<char> seen(M.n, 0);
    std::vector<std::size_t> stack = {s};
    std::vector<char> visited(M.n, 0);
    while (!stack.empty()) {
      std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < M.n; ++j) {
        if (M.entries[i][j] > 0 && !seen[j]) {
          seen[j] = 1;
          if (!visited[j]) {
            visited[j] = 1;
            stack.push_back(j);
          }
        }
      }
    }
    for (std::size_t j = 0; j < M.n; ++j)
      if (!seen[j])
        return false;
  }
  return true;
}

PerronData perron_eigen(const TransitionMatrix &M, double tol,
                        std::size_t max_iter) {
  if (!matrix_irreducible(M))
    fail(ErrorKind::domain, "perron_eigen: matrix is not irreducible");
  std::size_t n = M.n;
  std::vector<double> v(n, 1.0), w(n, 0.0);

  auto apply_shifted = [&](const std::vector<double> &x,
                           std::vector<double> &out) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = x[i]; // the +I shift keeps the iteration aperiodic
      for (std::size_t j = 0; j < n; ++j)
        s += static_cast<double>(M.entries[i][j]) * x[j];
      out[i] = s;
    }
  };

  double rayleigh = 0.0;
  bool converged = false;
  for (std::size_t it = 0; it < max_iter; ++it) {
    apply_shifted(v, w);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      num += w[i] * v[i];
      den += v[i] * v[i];
    }
    rayleigh = num / den;
    // Converge on the eigen identity itself, not just the Rayleigh
    // quotient; the vector residual is what the weights inherit.
    double resid = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      resid = std::max(resid, std::abs(w[i] - rayleigh * v[i]));
      scale = std::max(scale, std::abs(v[i]));
    }
    double norm = 0.0;
    for (double x : w)
      norm += x * x;
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i)
      v[i] = w[i] / norm;
    if (resid < tol * scale) {
      converged = true;
      break;
    }
  }
  if (!converged)
    fail(ErrorKind::limit, "perron_eigen: power iteration did not converge");

  PerronData pd;
  pd.eigenvalue = rayleigh - 1.0; // undo the shift
  pd.weights.w.resize(n);
  double scale = v[0];
  for (std::size_t i = 0; i < n; ++i)
    pd.weights.w[i] = v[i] / scale;

  double res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      s += static_cast<double>(M.entries[i][j]) * pd.weights.w[j];
    res = std::max(res, std::abs(s - pd.eigenvalue * pd.weights.w[i]));
  }
  pd.residual = res;
  return pd;
}

ExpansionCheck verify_expansion(const GraphMap &m, const PerronData &pd,
                                int n_max, double tol) {
  require_valid(m);
  ExpansionCheck out;
  for (EdgeId e = 0; e < m.graph.edge_count(); ++e) {
    EdgePath p;
    p.base = m.graph.edge(e).init;
    p.steps = {DirectedEdge{e, true}};
    double expected = pd.weights.of(e);
    for (int k = 1; k <= n_max; ++k) {
      p = map_path(m, p);
      expected *= pd.eigenvalue;
      double actual = weighted_length(m.graph, tighten(m.graph, p), pd.weights);
      out.max_residual =
          std::max(out.max_residual, std::abs(actual / expected - 1.0));
    }
  }
  out.within_tol = out.max_residual <= tol;
  return out;
}

} // namespace ttc
