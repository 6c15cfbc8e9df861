#include "doctest.h"

#include <stdexcept>

#include "crk/partition.hpp"
#include "crk/random_models.hpp"
#include "oracles.hpp"

using namespace crk;

namespace {

VertexSet vs(std::vector<Vertex> v) { return VertexSet(std::move(v)); }

Bipartition bip(std::vector<Vertex> a, std::vector<Vertex> b) { return {vs(std::move(a)), vs(std::move(b))}; }

/// Every balanced bipartition of {0..m-1} as a list (block1 contains vertex 0).
std::vector<Bipartition> all_balanced(std::size_t m) {
  std::vector<Bipartition> out;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<bool> side(m);
    for (std::size_t i = 0; i < m; ++i)
      side[i] = (mask >> i) & 1u;
    const Bipartition b = bipartition_from_sides(side);
    if (b.balanced())
      out.push_back(b);
  }
  return out;
}

bool subset(const VertexSet& a, const VertexSet& b) { return set_intersection(a, b) == a; }

} // namespace

TEST_CASE("lemma1 split on the worked example") {
  const Bipartition b1 = bip({0, 1, 2, 3, 4, 5}, {6, 7, 8, 9, 10, 11});
  const Bipartition b2 = bip({3, 4, 5, 6, 7, 8}, {0, 1, 2, 9, 10, 11});
  const OppositePair r = lemma1_split(b1, b2);
  CHECK(r.first == vs({3, 4, 5}));
  CHECK(r.second == vs({9, 10, 11}));
}

TEST_CASE("lemma1 split of identical bipartitions returns the blocks") {
  const Bipartition b = bip({0, 1, 2}, {3, 4, 5, 6, 7});
  const OppositePair r = lemma1_split(b, b);
  CHECK(r.first == b.block1);
  CHECK(r.second == b.block2);
}

TEST_CASE("lemma1 split rejects bad input") {
  CHECK_THROWS_AS(lemma1_split(bip({0}, {1, 2, 3, 4, 5}), bip({0, 1, 2}, {3, 4, 5})),
                  std::invalid_argument);
  CHECK_THROWS_AS(lemma1_split(bip({0, 1, 2}, {3, 4, 5}), bip({0, 1, 2}, {3, 4, 6})),
                  std::invalid_argument);
}

TEST_CASE("lemma1 split postcondition on all pairs for m = 6..9") {
  for (std::size_t m = 6; m <= 9; ++m) {
    const auto all = all_balanced(m);
    const std::size_t need = (m + 5) / 6;
    for (const Bipartition& x : all) {
      for (const Bipartition& y : all) {
        const OppositePair r = lemma1_split(x, y);
        REQUIRE(r.first.size() >= need);
        REQUIRE(r.second.size() >= need);
        const bool diag = subset(r.first, x.block1) && subset(r.first, y.block1) &&
                          subset(r.second, x.block2) && subset(r.second, y.block2);
        const bool anti = subset(r.first, x.block1) && subset(r.first, y.block2) &&
                          subset(r.second, x.block2) && subset(r.second, y.block1);
        REQUIRE((diag || anti));
      }
    }
  }
}

TEST_CASE("exact bisection on small named graphs") {
  CHECK(exact_bisection(path_graph(4)).cut == 1);
  CHECK(exact_bisection(cycle_graph(6)).cut == 2);
  // K6: 4|2 gives 8, 3|3 gives 9.
  const BisectionResult k6 = exact_bisection(complete_graph(6));
  CHECK(k6.cut == oracle::bisection_width(complete_graph(6)));
  CHECK(k6.cut == 8);
  CHECK(k6.exact);
  CHECK(k6.partition.balanced());
  CHECK(exact_bisection(disjoint_union(complete_graph(4), complete_graph(4))).cut == 0);
  CHECK_THROWS_AS(exact_bisection(cycle_graph(21)), std::invalid_argument);
}

TEST_CASE("exact bisection equals the 2^n oracle") {
  for (std::uint64_t s = 0; s < 60; ++s) {
    const std::size_t n = 4 + s % 9;
    const Graph g = sample_gnp(n, 0.4, derive_seed(17, s));
    const BisectionResult r = exact_bisection(g);
    CHECK(r.cut == oracle::bisection_width(g));
    CHECK(r.cut == cut_size(g, r.partition.block1, r.partition.block2));
    CHECK(r.partition.balanced());
  }
}

TEST_CASE("local search is a balanced upper bound and deterministic") {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const std::size_t n = 5 + s % 12;
    const Graph g = sample_gnp(n, 0.35, derive_seed(21, s));
    const BisectionResult h = local_search_bisection(g, s);
    CHECK_FALSE(h.exact);
    CHECK(h.partition.balanced());
    CHECK(h.partition.ground_size() == n);
    CHECK(h.cut == cut_size(g, h.partition.block1, h.partition.block2));
    CHECK(h.cut >= exact_bisection(g).cut);
    const BisectionResult again = local_search_bisection(g, s);
    CHECK(again.cut == h.cut);
    CHECK(again.partition.block1 == h.partition.block1);
  }
}

TEST_CASE("local search finds component splits") {
  const Graph two = disjoint_union(complete_graph(4), complete_graph(4));
  CHECK(local_search_bisection(two, 1).cut == 0);
  const BisectionResult k33 = local_search_bisection(complete_bipartite(3, 3), 2);
  CHECK(k33.cut >= exact_bisection(complete_bipartite(3, 3)).cut);
  CHECK_THROWS_AS(local_search_bisection(path_graph(2), 1), std::invalid_argument);
}

TEST_CASE("witness chain: two K4's with k=2") {
  const Graph g = disjoint_union(complete_graph(4), complete_graph(4));
  const EdgePartition ep = random_edge_partition(g, 2, 3);
  const WitnessChain c = witness_chain(g, ep, exact_oracle());
  CHECK(c.e_ab <= c.width_sum());
  CHECK(c.a.size() == c.b.size());
  CHECK(disjoint(c.a, c.b));
}

TEST_CASE("witness chain on K6 against exhaustive widths") {
  const Graph g = complete_graph(6);
  for (std::uint64_t s = 0; s < 30; ++s) {
    const EdgePartition ep = random_edge_partition(g, 2, s);
    const WitnessChain c = witness_chain(g, ep, exact_oracle());
    REQUIRE(c.levels.size() == 2);
    for (const WitnessLevel& l : c.levels) {
      const Graph sub = class_subgraph(g, ep, l.edge_class);
      CHECK(l.width == oracle::bisection_width(sub));
    }
    CHECK(c.e_ab == cut_size(g, c.a, c.b));
    CHECK(c.e_ab <= c.width_sum());
  }
}

TEST_CASE("witness chain k=3 on n=54 with heuristic oracle, many seeds") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const Graph g = sample_gnp(54, 0.15, derive_seed(31, s));
    const EdgePartition ep = random_edge_partition(g, 3, derive_seed(32, s));
    const WitnessChain c = witness_chain(g, ep, local_search_oracle(s));
    REQUIRE(c.e_ab == cut_size(g, c.a, c.b));
    REQUIRE(c.e_ab <= c.width_sum());
    REQUIRE(c.a.size() == c.b.size());
    REQUIRE(c.a.size() >= (54 + 17) / 18);
    REQUIRE(disjoint(c.a, c.b));
    REQUIRE(c.nested.size() == 2);
    CHECK(c.nested[0].size() >= (54 + 2) / 3);
    CHECK(c.nested[1].size() >= (54 + 8) / 9);
    CHECK(subset(c.nested[1], c.nested[0]));
    CHECK(c.pre_trim_sizes.size() == 2);
  }
}

TEST_CASE("witness chain is deterministic") {
  const Graph g = sample_gnp(40, 0.2, 9);
  const EdgePartition ep = random_edge_partition(g, 3, 9);
  const WitnessChain a = witness_chain(g, ep, local_search_oracle(4));
  const WitnessChain b = witness_chain(g, ep, local_search_oracle(4));
  CHECK(a.a == b.a);
  CHECK(a.b == b.b);
  CHECK(a.width_sum() == b.width_sum());
}

TEST_CASE("witness chain preconditions") {
  const Graph g = complete_graph(10);
  CHECK_THROWS_AS(witness_chain(g, random_edge_partition(g, 3, 1), exact_oracle()),
                  std::invalid_argument);
  CHECK(witness_min_vertices(2) == 6);
  CHECK(witness_min_vertices(3) == 18);

  // An oracle that returns an unbalanced split is rejected.
  const BisectionOracle lopsided = [](const Graph& h, std::size_t) {
    std::vector<bool> side(h.num_vertices(), false);
    side[0] = true;
    BisectionResult r{bipartition_from_sides(side), 0, false};
    r.cut = cut_size(h, r.partition.block1, r.partition.block2);
    return r;
  };
  CHECK_THROWS_AS(witness_chain(g, random_edge_partition(g, 2, 1), lopsided),
                  std::invalid_argument);
}
