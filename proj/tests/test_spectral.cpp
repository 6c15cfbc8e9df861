#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "crk/random_models.hpp"
#include "crk/spectral.hpp"
#include "oracles.hpp"

using namespace crk;

namespace {

void check_spectrum(const SpectralSummary& s, std::vector<double> expected, double tol) {
  std::sort(expected.begin(), expected.end(), std::greater<>());
  REQUIRE(s.full_spectrum.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i)
    CHECK(std::abs(s.full_spectrum[i] - expected[i]) <= tol);
}

} // namespace

TEST_CASE("K4 dense spectrum") {
  const SpectralSummary s = spectrum_full(complete_graph(4));
  check_spectrum(s, {3, -1, -1, -1}, 1e-9 * 4);
  CHECK(s.mu == doctest::Approx(1.0));
  CHECK(s.lambda1 == doctest::Approx(3.0));
  CHECK(s.method == SpectralMethod::Dense);
}

TEST_CASE("C6 dense spectrum matches 2cos(2 pi j / n)") {
  std::vector<double> expected;
  for (int j = 0; j < 6; ++j)
    expected.push_back(2.0 * std::cos(2.0 * std::numbers::pi * j / 6.0));
  const SpectralSummary s = spectrum_full(cycle_graph(6));
  check_spectrum(s, expected, 1e-9 * 6);
  CHECK(s.mu == doctest::Approx(2.0));
}

TEST_CASE("edgeless graph spectrum") {
  const SpectralSummary s = spectrum_full(empty_graph(5));
  check_spectrum(s, {0, 0, 0, 0, 0}, 1e-12);
  CHECK(s.mu == 0.0);
}

TEST_CASE("dense cap") {
  CHECK_THROWS_AS(spectrum_full(cycle_graph(30), 20), std::invalid_argument);
}

TEST_CASE("dense solver agrees with the Jacobi oracle") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Graph g = sample_gnp(25, 0.2, derive_seed(5, s));
    const SpectralSummary sum = spectrum_full(g);
    check_spectrum(sum, oracle::adjacency_spectrum(g), 1e-8);
  }
}

TEST_CASE("trace and energy identities") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Graph g = sample_gnp(80, 0.1, derive_seed(11, s));
    const SpectralSummary sum = spectrum_full(g);
    double trace = 0.0;
    double energy = 0.0;
    for (double l : sum.full_spectrum) {
      trace += l;
      energy += l * l;
    }
    CHECK(std::abs(trace) <= 1e-6);
    CHECK(std::abs(energy - 2.0 * g.num_edges()) <= 1e-6 * g.num_edges());
  }
}

TEST_CASE("iterative mu on closed forms") {
  const SpectralSummary k4 = mu_bound(complete_graph(4), 1e-6);
  CHECK(std::abs(k4.mu - 1.0) <= 1e-6);

  const SpectralSummary pet = mu_bound(petersen_graph(), 1e-8);
  CHECK(pet.mu == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(pet.lambda1 == doctest::Approx(3.0).epsilon(1e-7));

  const SpectralSummary star = mu_bound(star_graph(5), 1e-8);
  CHECK(star.lambda1 == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(star.mu == doctest::Approx(2.0).epsilon(1e-7));
  check_spectrum(spectrum_full(star_graph(5)), {2, 0, 0, 0, -2}, 1e-9);
  check_spectrum(spectrum_full(petersen_graph()), {3, 1, 1, 1, 1, 1, -2, -2, -2, -2}, 1e-9);
}

TEST_CASE("iterative solver on a large cycle uses the Krylov path") {
  const Graph c = cycle_graph(400);
  const SpectralSummary s = mu_bound(c, 1e-8);
  CHECK(s.method == SpectralMethod::Iterative);
  // Even cycle: -2 is an eigenvalue, so mu = 2.
  CHECK(s.mu == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(s.lambda1 == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("dense and iterative agree on mu within tol + 1e-6") {
  const double tol = 1e-6;
  for (std::uint64_t s = 0; s < 8; ++s) {
    const Graph g = sample_regular(200 + 40 * s, 4, RegularModel::Matching, derive_seed(3, s)).graph;
    const double dense = spectrum_full(g).mu;
    const SpectralSummary it = mu_bound(g, tol);
    CHECK(std::abs(dense - it.mu) <= tol + 1e-6);
    CHECK(it.mu_safe() >= dense - 1e-9);
  }
  for (std::uint64_t s = 0; s < 4; ++s) {
    const Graph g = sample_gnp(300, 0.03, derive_seed(4, s));
    CHECK(std::abs(spectrum_full(g).mu - mu_bound(g, tol).mu) <= tol + 1e-6);
  }
}

TEST_CASE("disconnected regular graph has mu = d") {
  const Graph two = disjoint_union(cycle_graph(30), cycle_graph(31));
  const SpectralSummary s = mu_bound(two, 1e-8);
  CHECK_FALSE(s.connected);
  CHECK(s.mu == doctest::Approx(2.0).epsilon(1e-7));
  CHECK_FALSE(s.warnings.empty());
}

TEST_CASE("bipartite regular graphs have mu = d") {
  const SpectralSummary s = mu_bound(complete_bipartite(20, 20), 1e-8);
  CHECK(s.mu == doctest::Approx(20.0).epsilon(1e-7));
}

TEST_CASE("regular connected: lambda1 = d and every |lambda| <= d") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const SampleReport r = sample_regular(40, 3, RegularModel::UniformSimple, s);
    if (!r.graph.is_connected())
      continue;
    const SpectralSummary sum = spectrum_full(r.graph);
    CHECK(sum.lambda1 == doctest::Approx(3.0).epsilon(1e-9));
    for (double l : sum.full_spectrum)
      CHECK(std::abs(l) <= 3.0 + 1e-9);
  }
}

TEST_CASE("non-convergence is an explicit failure") {
  const Graph g = sample_regular(600, 4, RegularModel::Matching, 1).graph;
  CHECK_THROWS_AS(mu_bound(g, 1e-12, 20), ConvergenceError);
  CHECK_THROWS_AS(mu_bound(g, 0.0), std::invalid_argument);
}

TEST_CASE("friedman check") {
  CHECK(friedman_check(cycle_graph(9), 2, 0.0));
  CHECK(friedman_check(cycle_graph(10), 2, 0.0));
  CHECK(friedman_check(complete_graph(4), 3, 0.2));
  CHECK_FALSE(friedman_check(complete_bipartite(3, 3), 3, 0.1));
  CHECK_THROWS_AS(friedman_check(path_graph(5), 2, 0.2), std::invalid_argument);
  CHECK(friedman_threshold(4, 0.2) == doctest::Approx(2.0 * std::sqrt(3.0) + 0.2));
}

TEST_CASE("dense adjacency is templated on the scalar") {
  const auto a = dense_adjacency<float>(cycle_graph(5));
  CHECK(a.sum() == 10.0f);
  CHECK(sparse_adjacency(cycle_graph(5)).nonZeros() == 10);
}
