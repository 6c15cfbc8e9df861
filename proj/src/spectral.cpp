#include "crk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "crk/random_models.hpp"

namespace crk {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Components at or below this size are solved densely.
constexpr Index kDenseComponent = 16;
// Krylov basis size before a restart, and Ritz vectors kept from each end.
constexpr Index kMaxBasis = 80;
constexpr Index kKeepPerEnd = 15;

ExtremeEigen dense_extremes(const SparseAdjacency& a) {
  ExtremeEigen out;
  const Index n = a.rows();
  if (n == 0)
    return out;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(MatrixXd(a), Eigen::EigenvaluesOnly);
  const VectorXd& ev = es.eigenvalues(); // ascending
  out.top = ev(n - 1);
  out.bottom = ev(0);
  out.has_second = n >= 2;
  if (out.has_second)
    out.second = ev(n - 2);
  out.residual = 1e-12 * std::max(1.0, std::abs(out.top));
  return out;
}

struct RitzCheck {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es;
  double top_res = 0.0;
  double second_res = 0.0;
  double bottom_res = 0.0;
};

RitzCheck ritz(const MatrixXd& h, Index m, double beta) {
  RitzCheck rc;
  const MatrixXd hm = 0.5 * (h.topLeftCorner(m, m) + h.topLeftCorner(m, m).transpose());
  rc.es.compute(hm);
  const MatrixXd& s = rc.es.eigenvectors();
  rc.top_res = std::abs(beta * s(m - 1, m - 1));
  rc.second_res = m >= 2 ? std::abs(beta * s(m - 1, m - 2)) : 0.0;
  rc.bottom_res = std::abs(beta * s(m - 1, 0));
  return rc;
}

} // namespace

SparseAdjacency sparse_adjacency(const Graph& g) {
  // Rows come straight from the sorted neighbor lists.
  const auto n = static_cast<Index>(g.num_vertices());
  SparseAdjacency a(n, n);
  Eigen::VectorXi per_row(n);
  for (Index v = 0; v < n; ++v)
    per_row(v) = static_cast<int>(g.degree(static_cast<Vertex>(v)));
  a.reserve(per_row);
  for (Index v = 0; v < n; ++v)
    for (Vertex u : g.neighbors(static_cast<Vertex>(v)))
      a.insert(v, static_cast<Index>(u)) = 1.0;
  a.makeCompressed();
  return a;
}

namespace {

/// Restarted Krylov iteration on any symmetric operator apply(x, y): y = A x.
template <typename Apply>
ExtremeEigen krylov_extremes(Index n, double scale, Apply&& apply, double tol,
                             std::size_t matvec_budget, std::uint64_t seed) {
  // Krylov-Schur style restarted Arnoldi on a symmetric operator. With full
  // reorthogonalization the projected matrix H = V^T A V is assembled column
  // by column, and A V_m = V_m H_m + beta v_{m+1} e_m^T holds after every
  // restart, so |beta * s_m| is the residual norm of each Ritz pair.
  const Index max_basis = std::min<Index>(kMaxBasis, n);
  MatrixXd basis(n, max_basis + 1);
  MatrixXd h = MatrixXd::Zero(max_basis, max_basis);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  VectorXd start(n);
  for (Index i = 0; i < n; ++i)
    start(i) = normal(rng);
  basis.col(0) = start.normalized();

  const double breakdown = 1e-12 * scale;
  ExtremeEigen out;
  Index filled = 0; // columns of H already computed
  double beta = 0.0;
  VectorXd w(n);

  while (true) {
    bool invariant = false;
    for (Index j = filled; j < max_basis; ++j) {
      if (out.matvecs >= matvec_budget)
        throw ConvergenceError("eigensolver exceeded " + std::to_string(matvec_budget) +
                               " matrix-vector products (n=" + std::to_string(n) + ")");
      apply(basis.col(j), w);
      ++out.matvecs;
      VectorXd coeff = basis.leftCols(j + 1).transpose() * w;
      w.noalias() -= basis.leftCols(j + 1) * coeff;
      VectorXd again = basis.leftCols(j + 1).transpose() * w;
      w.noalias() -= basis.leftCols(j + 1) * again;
      coeff += again;
      h.col(j).head(j + 1) = coeff;
      h.row(j).head(j + 1) = coeff.transpose();
      beta = w.norm();
      filled = j + 1;
      if (beta <= breakdown) {
        invariant = true;
        break;
      }
      basis.col(j + 1) = w / beta;

      const bool checkpoint = filled == max_basis || filled % 10 == 0;
      if (checkpoint && filled >= 3) {
        RitzCheck rc = ritz(h, filled, beta);
        if (std::max({rc.top_res, rc.second_res, rc.bottom_res}) <= tol)
          break;
      }
    }

    const Index m = filled;
    RitzCheck rc = ritz(h, m, invariant ? 0.0 : beta);
    const VectorXd& theta = rc.es.eigenvalues();
    const double worst = std::max({rc.top_res, rc.second_res, rc.bottom_res});
    if (invariant || worst <= tol || m == n) {
      out.top = theta(m - 1);
      out.bottom = theta(0);
      out.has_second = m >= 2;
      out.second = m >= 2 ? theta(m - 2) : 0.0;
      out.residual = invariant || m == n ? 1e-12 * std::max(1.0, std::abs(out.top)) : worst;
      return out;
    }

    // Restart: keep Ritz vectors from both ends plus the residual direction.
    const Index keep_end = std::min<Index>(kKeepPerEnd, m / 2);
    std::vector<Index> keep;
    for (Index i = 0; i < keep_end; ++i)
      keep.push_back(i);
    for (Index i = m - keep_end; i < m; ++i)
      keep.push_back(i);
    const auto kept = static_cast<Index>(keep.size());
    MatrixXd y(m, kept);
    for (Index c = 0; c < kept; ++c)
      y.col(c) = rc.es.eigenvectors().col(keep[c]);
    const VectorXd residual_dir = basis.col(m);
    MatrixXd ritz_vectors = basis.leftCols(m) * y;
    basis.leftCols(kept) = ritz_vectors;
    basis.col(kept) = residual_dir;
    h.setZero();
    for (Index c = 0; c < kept; ++c)
      h(c, c) = theta(keep[c]);
    filled = kept;
  }
}

} // namespace

ExtremeEigen extreme_eigenvalues(const SparseAdjacency& a, double tol, std::size_t matvec_budget,
                                 std::uint64_t seed) {
  const Index n = a.rows();
  if (n <= kDenseComponent)
    return dense_extremes(a);
  const double scale = std::max(1.0, static_cast<double>(a.nonZeros()) / static_cast<double>(n));
  return krylov_extremes(
      n, scale, [&](const auto& x, VectorXd& y) { y.noalias() = a * x; }, tol, matvec_budget,
      seed);
}

namespace {

/// Component solve straight from the CSR arrays, without a matrix copy.
ExtremeEigen graph_extremes(const Graph& g, double tol, std::size_t matvec_budget,
                            std::uint64_t seed) {
  const auto n = static_cast<Index>(g.num_vertices());
  if (n <= kDenseComponent)
    return dense_extremes(sparse_adjacency(g));
  const double scale =
      std::max(1.0, 2.0 * static_cast<double>(g.num_edges()) / static_cast<double>(n));
  const auto apply = [&](const auto& x, VectorXd& y) {
    for (Index v = 0; v < n; ++v) {
      double sum = 0.0;
      for (Vertex u : g.neighbors(static_cast<Vertex>(v)))
        sum += x(u);
      y(v) = sum;
    }
  };
  return krylov_extremes(n, scale, apply, tol, matvec_budget, seed);
}

} // namespace

SpectralSummary spectrum_full(const Graph& g, std::size_t dense_cap) {
  const std::size_t n = g.num_vertices();
  if (n > dense_cap)
    throw std::invalid_argument("dense spectrum limited to n <= " + std::to_string(dense_cap) +
                                ", got n=" + std::to_string(n));
  SpectralSummary s;
  s.n = n;
  s.method = SpectralMethod::Dense;
  s.connected = g.is_connected();
  if (n == 0)
    return s;

  const MatrixXd a = dense_adjacency<double>(g);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(a);
  const VectorXd& ev = es.eigenvalues();
  s.full_spectrum.assign(ev.data(), ev.data() + ev.size());
  std::reverse(s.full_spectrum.begin(), s.full_spectrum.end());

  s.lambda1 = s.full_spectrum.front();
  if (n >= 2)
    s.mu = std::max(std::abs(s.full_spectrum[1]), std::abs(s.full_spectrum.back()));

  // Residual of the eigenpairs that determine mu.
  const SparseAdjacency sparse = sparse_adjacency(g);
  const auto pair_residual = [&](Index i) {
    const VectorXd v = es.eigenvectors().col(i);
    return (sparse * v - ev(i) * v).norm();
  };
  const auto last = static_cast<Index>(n) - 1;
  double res = pair_residual(last);
  if (n >= 2)
    res = std::max({res, pair_residual(last - 1), pair_residual(0)});
  s.residual = res;
  if (!s.connected)
    s.warnings.emplace_back("graph is disconnected");
  return s;
}

SpectralSummary mu_bound(const Graph& g, double tol, std::size_t matvec_budget) {
  if (!(tol > 0.0))
    throw std::invalid_argument("mu_bound: tol must be positive");
  SpectralSummary s;
  s.n = g.num_vertices();
  s.method = SpectralMethod::Iterative;
  if (s.n == 0)
    return s;

  std::size_t count = 0;
  const std::vector<std::uint32_t> comp = g.components(&count);
  s.connected = count <= 1;

  std::vector<std::vector<Vertex>> members(count > 1 ? count : 0);
  if (count > 1)
    for (std::size_t v = 0; v < s.n; ++v)
      members[comp[v]].push_back(static_cast<Vertex>(v));

  // The spectrum is the union of the component spectra. Within a component
  // the top eigenvalue dominates every other in absolute value.
  std::vector<ExtremeEigen> parts;
  parts.reserve(count);
  for (std::size_t c = 0; c < count; ++c) {
    const std::size_t left = matvec_budget - std::min(matvec_budget, s.matvecs);
    const std::uint64_t seed = derive_seed(0x5EEDULL, c);
    ExtremeEigen e = count == 1
                         ? graph_extremes(g, tol, left, seed)
                         : graph_extremes(induced_subgraph(g, VertexSet(members[c])).graph, tol,
                                          left, seed);
    s.matvecs += e.matvecs;
    s.residual = std::max(s.residual, e.residual);
    parts.push_back(e);
  }

  std::size_t lead = 0;
  for (std::size_t c = 1; c < count; ++c)
    if (parts[c].top > parts[lead].top)
      lead = c;
  s.lambda1 = parts[lead].top;
  double mu = 0.0;
  for (std::size_t c = 0; c < count; ++c) {
    const ExtremeEigen& e = parts[c];
    if (c == lead) {
      if (e.has_second)
        mu = std::max({mu, std::abs(e.second), std::abs(e.bottom)});
    } else {
      mu = std::max({mu, std::abs(e.top), std::abs(e.bottom)});
    }
  }
  s.mu = mu;
  if (!s.connected)
    s.warnings.emplace_back("graph is disconnected");
  return s;
}

double friedman_threshold(std::size_t d, double eps) {
  if (d < 1)
    throw std::invalid_argument("friedman_threshold requires d >= 1");
  return 2.0 * std::sqrt(static_cast<double>(d) - 1.0) + eps;
}

bool friedman_check(const Graph& g, std::size_t d, double eps, double tol) {
  const auto reg = g.regular_degree();
  if (!reg || *reg != d)
    throw std::invalid_argument("friedman_check requires a " + std::to_string(d) +
                                "-regular graph");
  const SpectralSummary s = mu_bound(g, tol);
  // Slack of tol absorbs rounding when mu sits exactly on the threshold.
  return s.mu <= friedman_threshold(d, eps) + tol;
}

} // namespace crk
