#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crk/graph.hpp"
#include "crk/spectral.hpp"

namespace crk {

/**
   Lower bound on e(X, Y) for disjoint X, Y of sizes alpha n and beta n in a
   d-regular graph whose non-leading eigenvalues are bounded by mu in
   absolute value:

     alpha beta d n - mu n sqrt((alpha - alpha^2)(beta - beta^2)).

   May be negative, in which case it says nothing.
 */
template <typename Scalar>
Scalar mixing_density_lb(Scalar n, Scalar d, Scalar mu, Scalar alpha, Scalar beta) {
  using std::sqrt;
  if (!(alpha > Scalar(0) && alpha < Scalar(1) && beta > Scalar(0) && beta < Scalar(1)))
    throw std::invalid_argument("mixing_density_lb: alpha and beta must lie in (0,1)");
  if (mu < Scalar(0))
    throw std::invalid_argument("mixing_density_lb: mu must be nonnegative");
  return alpha * beta * d * n - mu * n * sqrt((alpha - alpha * alpha) * (beta - beta * beta));
}

/**
   Crossing-number lower bound from a bisection-width lower bound b and the
   degree square sum S, inverting b <= 10 sqrt(cr) + 2 sqrt(S):
   ((b - 2 sqrt(S)) / 10)^2 when b > 2 sqrt(S), else 0.
 */
template <typename Scalar>
Scalar pss_lower_bound(Scalar b, Scalar sum_deg_sq) {
  using std::sqrt;
  const Scalar slack = b - Scalar(2) * sqrt(sum_deg_sq);
  if (!(slack > Scalar(0)))
    return Scalar(0);
  const Scalar root = slack / Scalar(10);
  return root * root;
}

/// 6 * 3^(k-2): the shrink factor of the witness sets after k levels.
std::uint64_t level_divisor(std::size_t k);

/// Degree threshold (4 * 6 * 3^(k-2))^2 beyond which the density bound
/// dn / (2 (6 * 3^(k-2))^2) is guaranteed with mu = 2 sqrt(d-1) + small eps.
std::uint64_t threshold_c0(std::size_t k);

struct SetSize {
  std::size_t t = 0;
  /// n < 6 * 3^(k-2): sets of the nominal size n / (6 * 3^(k-2)) are empty.
  bool small_n = false;
};

/// ceil(n / (6 * 3^(k-2))).
SetSize set_size_t(std::size_t n, std::size_t k);

/// Chain of a k-planar crossing lower bound; every value follows from
/// (n, d, k, mu_safe) by certificate_from_chain.
struct Certificate {
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t k = 0;
  double mu_safe = 0.0;
  /// 1 / (6 * 3^(k-2)).
  double alpha = 0.0;
  /// ceil(alpha n) / n, the set fraction fed to the mixing bound.
  double alpha_eff = 0.0;
  double density_lb = 0.0;
  double width_lb = 0.0;
  double degree_term = 0.0;
  double crossing_lb = 0.0;
  bool degenerate = true;
  bool constants_ok = false;
  std::vector<std::string> warnings;

  /// Human-readable derivation.
  std::vector<std::string> transcript() const;
};

/// Pure arithmetic: the certificate implied by (n, d, k, mu_safe).
Certificate certificate_from_chain(std::size_t n, std::size_t d, std::size_t k, double mu_safe);

/**
   Certificate for a d-regular simple graph. Uses mu_safe = mu + residual
   from the spectral summary. Throws std::invalid_argument for non-regular
   graphs or k < 2; disconnected graphs yield a degenerate certificate with
   a warning.
 */
Certificate certify_k_planar_lb(const Graph& g, std::size_t k, const SpectralSummary& spectral);

inline constexpr std::size_t kBrutePairCap = 12;

/// Exact min of e(X, Y) over disjoint X, Y with |X| = |Y| = t.
std::size_t brute_min_pair_density(const Graph& g, std::size_t t);

/**
   Smallest n in [n_from, n_limit] at which certificate_from_chain(n, d, k,
   mu) is non-degenerate, or nullopt.
 */
std::optional<std::size_t> min_nondegenerate_n(std::size_t d, std::size_t k, double mu,
                                                std::size_t n_from = 1,
                                                std::size_t n_limit = 100'000'000);

/// Non-certified density report for graphs outside the regular path.
struct DensityEstimate {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t t = 0;
  double p_hat = 0.0;
  std::size_t min_pair_density = 0;
  bool exhaustive = false;
  std::size_t sampled_pairs = 0;
  /// (1/2) C(t,2) p and (1/2) t^2 p.
  double threshold_binomial = 0.0;
  double threshold_square = 0.0;
};

/// Exhaustive for n <= kBrutePairCap, otherwise the min over sampled pairs.
DensityEstimate estimate_pair_density(const Graph& g, std::size_t k, std::uint64_t seed,
                                      std::size_t samples = 2000);

} // namespace crk
