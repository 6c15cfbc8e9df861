#include "crk/certifier.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>

namespace crk {

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

} // namespace

std::uint64_t level_divisor(std::size_t k) {
  if (k < 2)
    throw std::invalid_argument("k must be at least 2, got " + std::to_string(k));
  std::uint64_t div = 6;
  for (std::size_t i = 2; i < k; ++i) {
    if (div > std::numeric_limits<std::uint64_t>::max() / 3)
      throw std::overflow_error("6 * 3^(k-2) overflows for k=" + std::to_string(k));
    div *= 3;
  }
  return div;
}

std::uint64_t threshold_c0(std::size_t k) {
  const std::uint64_t div = level_divisor(k);
  if (div > std::numeric_limits<std::uint32_t>::max() / 4)
    throw std::overflow_error("c0(k) overflows for k=" + std::to_string(k));
  const std::uint64_t root = 4 * div;
  return root * root;
}

SetSize set_size_t(std::size_t n, std::size_t k) {
  const std::uint64_t div = level_divisor(k);
  return {static_cast<std::size_t>((n + div - 1) / div), n < div};
}

Certificate certificate_from_chain(std::size_t n, std::size_t d, std::size_t k, double mu_safe) {
  if (n == 0)
    throw std::invalid_argument("certificate needs n >= 1");
  if (!(mu_safe >= 0.0))
    throw std::invalid_argument("certificate needs mu_safe >= 0");
  Certificate c;
  c.n = n;
  c.d = d;
  c.k = k;
  c.mu_safe = mu_safe;
  const std::uint64_t div = level_divisor(k);
  c.alpha = 1.0 / static_cast<double>(div);
  const SetSize size = set_size_t(n, k);
  c.alpha_eff = static_cast<double>(size.t) / static_cast<double>(n);

  const double nd = static_cast<double>(n);
  const double dd = static_cast<double>(d);
  c.degree_term = 2.0 * std::sqrt(nd * dd * dd);
  try {
    c.constants_ok = d >= threshold_c0(k);
  } catch (const std::overflow_error&) {
    c.constants_ok = false;
  }

  if (size.small_n || 2 * size.t > n) {
    c.warnings.emplace_back("n=" + std::to_string(n) + " is too small for k=" +
                            std::to_string(k) + ": witness sets cannot be disjoint");
    c.density_lb = 0.0;
    c.width_lb = 0.0;
    c.crossing_lb = 0.0;
    c.degenerate = true;
    return c;
  }

  c.density_lb = mixing_density_lb(nd, dd, mu_safe, c.alpha_eff, c.alpha_eff);
  c.width_lb = c.density_lb / static_cast<double>(k);
  c.degenerate = !(c.density_lb > 0.0) || !(c.width_lb > c.degree_term);
  c.crossing_lb = c.degenerate ? 0.0 : pss_lower_bound(c.width_lb, nd * dd * dd);
  return c;
}

std::vector<std::string> Certificate::transcript() const {
  std::vector<std::string> lines;
  lines.push_back("graph: n=" + std::to_string(n) + ", d=" + std::to_string(d) +
                  "-regular, k=" + std::to_string(k));
  lines.push_back("second eigenvalue bound (with residual): mu_safe=" + fmt(mu_safe));
  lines.push_back("set fraction alpha=1/(6*3^(k-2))=" + fmt(alpha) +
                  ", rounded up to ceil(alpha n)/n=" + fmt(alpha_eff));
  lines.push_back("mixing bound: e(A,B) >= alpha^2 d n - mu n (alpha - alpha^2) = " +
                  fmt(density_lb) + " for any disjoint A, B of at least ceil(alpha n) vertices "
                  "(larger sets contain sets of exactly that size, so only gain edges)");
  lines.push_back("any edge k-partition admits nested bisections separating such A and B, so "
                  "e(A,B) is at most the sum of k bisection widths; some class therefore has "
                  "1/3-2/3 width >= density/k = " + fmt(width_lb));
  lines.push_back("that class has max degree <= d, so its degree term 2 sqrt(sum d_i^2) <= "
                  "2 sqrt(n d^2) = " + fmt(degree_term));
  if (degenerate) {
    lines.push_back("width bound does not exceed the degree term: certificate is degenerate, "
                    "crossing lower bound 0");
  } else {
    lines.push_back("b <= 10 sqrt(cr) + 2 sqrt(sum d_i^2) gives cr >= ((width - degree term)/10)^2 "
                    "= " + fmt(crossing_lb));
    lines.push_back("cr_k(G) >= " + fmt(crossing_lb));
  }
  lines.push_back(std::string("d >= c0(k): ") + (constants_ok ? "yes" : "no"));
  return lines;
}

Certificate certify_k_planar_lb(const Graph& g, std::size_t k, const SpectralSummary& spectral) {
  const auto d = g.regular_degree();
  if (!d)
    throw std::invalid_argument("certificate requires a regular graph");
  if (spectral.n != g.num_vertices())
    throw std::invalid_argument("spectral summary does not match the graph");
  Certificate c = certificate_from_chain(g.num_vertices(), *d, k, spectral.mu_safe());
  if (!spectral.connected || !g.is_connected())
    c.warnings.emplace_back("graph is disconnected: second eigenvalue equals d, certificate is "
                            "degenerate");
  const double lead_gap = std::abs(spectral.lambda1 - static_cast<double>(*d));
  if (lead_gap > spectral.residual + 1e-6)
    c.warnings.emplace_back("leading eigenvalue " + fmt(spectral.lambda1) +
                            " differs from d beyond the residual");
  return c;
}

std::size_t brute_min_pair_density(const Graph& g, std::size_t t) {
  const std::size_t n = g.num_vertices();
  if (n > kBrutePairCap)
    throw std::invalid_argument("brute_min_pair_density limited to n <= " +
                                std::to_string(kBrutePairCap) + ", got n=" + std::to_string(n));
  if (t < 1 || 2 * t > n)
    throw std::invalid_argument("brute_min_pair_density needs 1 <= t <= n/2");

  std::vector<std::uint32_t> adj(n, 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= 1u << e.v;
    adj[e.v] |= 1u << e.u;
  }
  const std::uint32_t full = (1u << n) - 1;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::uint32_t x = 0; x <= full; ++x) {
    if (static_cast<std::size_t>(std::popcount(x)) != t)
      continue;
    const std::uint32_t rest = full & ~x;
    // All submasks of the complement with exactly t bits.
    for (std::uint32_t y = rest; y; y = (y - 1) & rest) {
      if (static_cast<std::size_t>(std::popcount(y)) != t)
        continue;
      std::size_t e = 0;
      for (std::uint32_t bits = x; bits; bits &= bits - 1)
        e += static_cast<std::size_t>(std::popcount(adj[std::countr_zero(bits)] & y));
      best = std::min(best, e);
    }
  }
  return best;
}

std::optional<std::size_t> min_nondegenerate_n(std::size_t d, std::size_t k, double mu,
                                                std::size_t n_from, std::size_t n_limit) {
  const std::uint64_t div = level_divisor(k);
  const double dd = static_cast<double>(d);
  const double kk = static_cast<double>(k);
  // Same arithmetic as certificate_from_chain, without the allocations.
  for (std::size_t n = std::max<std::size_t>({n_from, d + 1, 1}); n <= n_limit; ++n) {
    const std::size_t t = static_cast<std::size_t>((n + div - 1) / div);
    if (n < div || 2 * t > n)
      continue;
    const double nd = static_cast<double>(n);
    const double a = static_cast<double>(t) / nd;
    const double density = mixing_density_lb(nd, dd, mu, a, a);
    const double width = density / kk;
    if (density > 0.0 && width > 2.0 * std::sqrt(nd * dd * dd))
      return n;
  }
  return std::nullopt;
}

DensityEstimate estimate_pair_density(const Graph& g, std::size_t k, std::uint64_t seed,
                                      std::size_t samples) {
  DensityEstimate est;
  est.n = g.num_vertices();
  est.k = k;
  est.t = set_size_t(est.n, k).t;
  if (est.n < 2 || 2 * est.t > est.n)
    throw std::invalid_argument("graph too small for pair-density estimate at k=" +
                                std::to_string(k));
  const double pairs = static_cast<double>(est.n) * static_cast<double>(est.n - 1) / 2.0;
  est.p_hat = static_cast<double>(g.num_edges()) / pairs;
  const double t = static_cast<double>(est.t);
  est.threshold_binomial = 0.5 * (t * (t - 1) / 2.0) * est.p_hat;
  est.threshold_square = 0.5 * t * t * est.p_hat;

  if (est.n <= kBrutePairCap) {
    est.exhaustive = true;
    est.min_pair_density = brute_min_pair_density(g, est.t);
    return est;
  }

  std::mt19937_64 rng(seed);
  std::vector<Vertex> order(est.n);
  std::iota(order.begin(), order.end(), Vertex{0});
  est.min_pair_density = std::numeric_limits<std::size_t>::max();
  for (std::size_t s = 0; s < std::max<std::size_t>(1, samples); ++s) {
    std::shuffle(order.begin(), order.end(), rng);
    const auto mid = order.begin() + static_cast<std::ptrdiff_t>(est.t);
    const VertexSet x(std::vector<Vertex>(order.begin(), mid));
    const VertexSet y(std::vector<Vertex>(mid, mid + static_cast<std::ptrdiff_t>(est.t)));
    est.min_pair_density = std::min(est.min_pair_density, cut_size(g, x, y));
  }
  est.sampled_pairs = std::max<std::size_t>(1, samples);
  return est;
}

} // namespace crk
