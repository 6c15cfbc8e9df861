#pragma once

// Brute-force reference implementations used only by tests. They share no
// code with the library beyond the Graph container.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "crk/graph.hpp"

namespace oracle {

/// Edges between two disjoint vertex masks, by scanning the edge list.
inline std::size_t mask_cut(const crk::Graph& g, std::uint64_t x, std::uint64_t y) {
  std::size_t cut = 0;
  for (const crk::Edge& e : g.edges()) {
    const bool ux = (x >> e.u) & 1u, vx = (x >> e.v) & 1u;
    const bool uy = (y >> e.u) & 1u, vy = (y >> e.v) & 1u;
    cut += (ux && vy) || (uy && vx);
  }
  return cut;
}

/// b(G) over all 2^n side assignments with both sides of size >= n/3.
inline std::size_t bisection_width(const crk::Graph& g) {
  const std::size_t n = g.num_vertices();
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::uint64_t s = 0; s <= full; ++s) {
    const std::size_t a = static_cast<std::size_t>(std::popcount(s));
    if (3 * a < n || 3 * (n - a) < n)
      continue;
    best = std::min(best, mask_cut(g, s, full & ~s));
  }
  return best;
}

/// min e(X, Y) over disjoint |X| = |Y| = t, enumerating both masks in full.
inline std::size_t min_pair_density(const crk::Graph& g, std::size_t t) {
  const std::size_t n = g.num_vertices();
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<std::uint64_t> masks;
  for (std::uint64_t s = 0; s <= full; ++s)
    if (static_cast<std::size_t>(std::popcount(s)) == t)
      masks.push_back(s);
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::uint64_t x : masks)
    for (std::uint64_t y : masks)
      if (!(x & y))
        best = std::min(best, mask_cut(g, x, y));
  return best;
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, descending.
inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        off += a[i][j] * a[i][j];
    if (off < 1e-24)
      break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300)
          continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i)
    ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

inline std::vector<double> adjacency_spectrum(const crk::Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (const crk::Edge& e : g.edges())
    a[e.u][e.v] = a[e.v][e.u] = 1.0;
  return jacobi_eigenvalues(std::move(a));
}

/// Largest |lambda| after removing one copy of the largest eigenvalue.
inline double mu_from_spectrum(const std::vector<double>& desc) {
  double mu = 0.0;
  for (std::size_t i = 1; i < desc.size(); ++i)
    mu = std::max(mu, std::abs(desc[i]));
  return mu;
}

} // namespace oracle
