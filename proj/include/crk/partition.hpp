#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "crk/graph.hpp"

namespace crk {

/// A balanced bipartition and its cut. exact means cut equals the 1/3-2/3 width.
struct BisectionResult {
  Bipartition partition;
  std::size_t cut = 0;
  bool exact = false;
};

/// Two sets lying on opposite sides of two bipartitions.
struct OppositePair {
  VertexSet first;
  VertexSet second;
};

/**
   Given two balanced bipartitions of the same ground set of size m, return
   two sets of size >= ceil(m/6) that are separated by both.

   The four cells A = X11&X21, B = X11&X22, C = X12&X21, D = X12&X22 pair up
   diagonally as (A, D) and (B, C); at least one pair has both cells of size
   >= m/6. (A, D) wins ties. The returned sets are the cells themselves,
   not trimmed.
 */
OppositePair lemma1_split(const Bipartition& first, const Bipartition& second);

inline constexpr std::size_t kDefaultExactCap = 20;

/// Exhaustive minimum cut over partitions with both sides >= n/3.
BisectionResult exact_bisection(const Graph& g, std::size_t cap = kDefaultExactCap);

struct LocalSearchOptions {
  std::size_t restarts = 8;
  /// Iteration cap per restart is this factor times n.
  std::size_t iteration_factor = 50;
};

/// Balance-guarded move/swap local search; best of several seeded restarts.
BisectionResult local_search_bisection(const Graph& g, std::uint64_t seed,
                                       LocalSearchOptions options = {});

/// Bisection oracle. level is 0-based and lets seeded oracles vary per level.
using BisectionOracle = std::function<BisectionResult(const Graph&, std::size_t level)>;

BisectionOracle exact_oracle(std::size_t cap = kDefaultExactCap);
BisectionOracle local_search_oracle(std::uint64_t seed, LocalSearchOptions options = {});

struct WitnessLevel {
  std::uint32_t edge_class = 0;
  /// Vertices the class subgraph was restricted to (root ids).
  VertexSet domain;
  /// Bisection of the restricted class subgraph, in root ids.
  Bipartition bisection;
  std::size_t width = 0;
};

/**
   Record of the recursive separation: levels[i] bisects class i on the
   current domain; nested[j] is Y_{j+2} = A_{j+2} | B_{j+2}. a and b are the
   final equal-size sets.
 */
struct WitnessChain {
  std::size_t k = 0;
  std::vector<WitnessLevel> levels;
  std::vector<VertexSet> nested;
  /// Sizes of the two split sets before trimming, per split (k - 1 entries).
  std::vector<std::pair<std::size_t, std::size_t>> pre_trim_sizes;
  VertexSet a;
  VertexSet b;
  std::size_t e_ab = 0;

  std::size_t width_sum() const;
};

/// Smallest n for which every level of a k-class chain has nonempty sets.
std::size_t witness_min_vertices(std::size_t k);

/**
   Build the chain for an edge k-partition using the given oracle.
   Throws std::invalid_argument on k < 2, too few vertices, or an
   unbalanced oracle answer; throws std::logic_error if e(A,B) exceeds the
   width sum.
 */
WitnessChain witness_chain(const Graph& g, const EdgePartition& ep, const BisectionOracle& bisect);

/// Uniform random class per edge.
EdgePartition random_edge_partition(const Graph& g, std::size_t k, std::uint64_t seed);

} // namespace crk
