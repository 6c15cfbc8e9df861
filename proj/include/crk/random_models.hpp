#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "crk/graph.hpp"

namespace crk {

/// Random d-regular models built from permutations, n-cycles, perfect
/// matchings, or the pairing (configuration) model conditioned on simplicity.
enum class RegularModel { Permutation, FullCycle, Matching, UniformSimple };

std::string_view to_string(RegularModel model);
/// Accepts perm|permutation, cycle|full_cycle, matching, uniform|uniform_simple.
RegularModel parse_regular_model(std::string_view name);

struct SampleReport {
  Graph graph;
  std::uint64_t rejected_attempts = 0;
  std::uint64_t collapsed_multiedges = 0;
  std::uint64_t removed_loops = 0;
  std::uint64_t seed = 0;
};

/// SplitMix64 finalizer applied to master + (index + 1) * golden gamma.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// G(n,p) by geometric skipping over the C(n,2) pairs.
Graph sample_gnp(std::size_t n, double p, std::uint64_t seed);

/**
   Sample from one of the regular models.

   Permutation, full-cycle and matching samples are multigraphs; loops are
   dropped and parallel edges collapsed, with both counted in the report.
   UniformSimple rejects non-simple pairings and retries up to
   uniform_simple_budget(d) times before throwing std::runtime_error.
 */
SampleReport sample_regular(std::size_t n, std::size_t d, RegularModel model, std::uint64_t seed);

/// min(10^3 * exp((d^2 - 1) / 4), 10^6) pairing attempts.
std::uint64_t uniform_simple_budget(std::size_t d);

/// (e^delta / (1 + delta)^(1 + delta))^((n - 1) p), evaluated in log space.
double chernoff_degree_tail(std::size_t n, double p, double delta);

/// Max degree of g is at most (1 + ln n) n p.
bool max_degree_ok(const Graph& g, double p);

/// exp(-M p / 8): chance that M Bernoulli(p) trials give fewer than Mp/2 successes.
double density_tail_bound(double trials, double p);

} // namespace crk
