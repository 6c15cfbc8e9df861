#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "crk/graph.hpp"

namespace crk {

/// Thrown when an iterative eigensolve exhausts its matrix-vector budget.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class SpectralMethod { Dense, Iterative };

/**
   Adjacency-spectrum summary.

   mu is the largest absolute eigenvalue once one copy of the top eigenvalue
   lambda1 is set aside. residual bounds the numerical error of mu, so
   mu + residual is a safe upper estimate (see mu_safe()).
 */
struct SpectralSummary {
  std::size_t n = 0;
  double lambda1 = 0.0;
  double mu = 0.0;
  SpectralMethod method = SpectralMethod::Dense;
  double residual = 0.0;
  bool connected = true;
  std::size_t matvecs = 0;
  /// Descending; only filled by the dense solver.
  std::vector<double> full_spectrum;
  std::vector<std::string> warnings;

  double mu_safe() const { return mu + residual; }
};

using SparseAdjacency = Eigen::SparseMatrix<double, Eigen::RowMajor>;

template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> dense_adjacency(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  for (const Edge& e : g.edges()) {
    a(e.u, e.v) = Scalar(1);
    a(e.v, e.u) = Scalar(1);
  }
  return a;
}

SparseAdjacency sparse_adjacency(const Graph& g);

inline constexpr std::size_t kDefaultDenseCap = 2000;
inline constexpr std::size_t kDefaultMatvecBudget = 100000;

/// All eigenvalues via a dense symmetric solve. Throws std::invalid_argument above dense_cap.
SpectralSummary spectrum_full(const Graph& g, std::size_t dense_cap = kDefaultDenseCap);

/**
   Extreme eigenvalues by restarted Krylov iteration, run per connected
   component. Stops when the Ritz residuals of the top two and the bottom
   eigenvalue of every component are at most tol; throws ConvergenceError
   if the matvec budget runs out first.
 */
SpectralSummary mu_bound(const Graph& g, double tol,
                         std::size_t matvec_budget = kDefaultMatvecBudget);

/// Ramanujan-type threshold 2 sqrt(d - 1) + eps.
double friedman_threshold(std::size_t d, double eps);

/// mu(g) <= 2 sqrt(d - 1) + eps for a d-regular g; throws on non-regular input.
bool friedman_check(const Graph& g, std::size_t d, double eps, double tol = 1e-8);

/// Extreme Ritz data of a symmetric operator.
struct ExtremeEigen {
  double top = 0.0;
  double second = 0.0;
  double bottom = 0.0;
  bool has_second = false;
  double residual = 0.0;
  std::size_t matvecs = 0;
};

ExtremeEigen extreme_eigenvalues(const SparseAdjacency& a, double tol, std::size_t matvec_budget,
                                 std::uint64_t seed);

} // namespace crk
