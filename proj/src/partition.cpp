#include "crk/partition.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "crk/random_models.hpp"

namespace crk {

namespace {

void require_bipartition(const Bipartition& bp, const char* name) {
  if (!disjoint(bp.block1, bp.block2))
    throw std::invalid_argument(std::string(name) + " has overlapping blocks");
  if (!bp.balanced())
    throw std::invalid_argument(std::string(name) + " is unbalanced: blocks of size " +
                                std::to_string(bp.block1.size()) + " and " +
                                std::to_string(bp.block2.size()));
}

// Keeps the `size` largest ids.
VertexSet trim_to(const VertexSet& s, std::size_t size) {
  auto members = s.members();
  return VertexSet(std::vector<Vertex>(members.end() - static_cast<std::ptrdiff_t>(size),
                                       members.end()));
}

VertexSet map_to_root(const VertexSet& local, const std::vector<Vertex>& original) {
  std::vector<Vertex> out;
  out.reserve(local.size());
  for (Vertex v : local)
    out.push_back(original[v]);
  return VertexSet(std::move(out));
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

struct SearchState {
  std::vector<std::uint8_t> side; // 0 = block1, 1 = block2
  std::vector<std::size_t> internal;
  std::vector<std::size_t> external;
  std::size_t size[2] = {0, 0};

  long gain(Vertex v) const {
    return static_cast<long>(external[v]) - static_cast<long>(internal[v]);
  }
};

void move_vertex(const Graph& g, SearchState& st, Vertex v) {
  const std::uint8_t from = st.side[v];
  for (Vertex w : g.neighbors(v)) {
    if (st.side[w] == from) {
      --st.internal[w];
      ++st.external[w];
    } else {
      --st.external[w];
      ++st.internal[w];
    }
  }
  std::swap(st.internal[v], st.external[v]);
  st.side[v] = 1 - from;
  --st.size[from];
  ++st.size[1 - from];
}

BisectionResult local_search_once(const Graph& g, std::uint64_t seed, std::size_t iter_cap) {
  const std::size_t n = g.num_vertices();
  const std::size_t min_side = ceil_div(n, 3);
  std::mt19937_64 rng(seed);

  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::shuffle(order.begin(), order.end(), rng);

  SearchState st;
  st.side.assign(n, 1);
  for (std::size_t i = 0; i < n / 2; ++i)
    st.side[order[i]] = 0;
  st.size[0] = n / 2;
  st.size[1] = n - n / 2;
  st.internal.assign(n, 0);
  st.external.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    for (Vertex w : g.neighbors(static_cast<Vertex>(v)))
      (st.side[w] == st.side[v] ? st.internal[v] : st.external[v])++;

  std::size_t iterations = 0;
  bool improved = true;
  while (improved && iterations < iter_cap) {
    improved = false;
    std::shuffle(order.begin(), order.end(), rng);
    for (Vertex v : order) {
      if (iterations >= iter_cap)
        break;
      if (st.gain(v) > 0 && st.size[st.side[v]] > min_side) {
        move_vertex(g, st, v);
        ++iterations;
        improved = true;
      }
    }
    if (improved || iterations >= iter_cap)
      continue;

    // No single move helps: try a first-improvement swap across the cut.
    std::vector<Vertex> boundary[2];
    for (Vertex v : order)
      if (st.external[v] > 0)
        boundary[st.side[v]].push_back(v);
    for (Vertex u : boundary[0]) {
      for (Vertex v : boundary[1]) {
        const long combined = st.gain(u) + st.gain(v) - 2 * static_cast<long>(g.has_edge(u, v));
        if (combined > 0) {
          move_vertex(g, st, u);
          move_vertex(g, st, v);
          ++iterations;
          improved = true;
          break;
        }
      }
      if (improved)
        break;
    }
  }

  BisectionResult result;
  std::vector<bool> in_first(n);
  std::size_t cut = 0;
  for (std::size_t v = 0; v < n; ++v) {
    in_first[v] = st.side[v] == 0;
    cut += st.external[v];
  }
  result.partition = bipartition_from_sides(in_first);
  result.cut = cut / 2;
  result.exact = false;
  return result;
}

} // namespace

OppositePair lemma1_split(const Bipartition& first, const Bipartition& second) {
  require_bipartition(first, "first bipartition");
  require_bipartition(second, "second bipartition");
  if (set_union(first.block1, first.block2) != set_union(second.block1, second.block2))
    throw std::invalid_argument("bipartitions are over different ground sets");

  const std::size_t m = first.ground_size();
  VertexSet a = set_intersection(first.block1, second.block1);
  VertexSet b = set_intersection(first.block1, second.block2);
  VertexSet c = set_intersection(first.block2, second.block1);
  VertexSet d = set_intersection(first.block2, second.block2);
  const auto big = [m](const VertexSet& s) { return 6 * s.size() >= m; };
  if (big(a) && big(d))
    return {std::move(a), std::move(d)};
  if (big(b) && big(c))
    return {std::move(b), std::move(c)};
  // Unreachable for balanced inputs: |A|+|B|, |A|+|C|, |B|+|D|, |C|+|D| >= m/3.
  throw std::logic_error("lemma1_split: no diagonal cell pair reaches m/6");
}

BisectionResult exact_bisection(const Graph& g, std::size_t cap) {
  const std::size_t n = g.num_vertices();
  if (n > cap || n > 40)
    throw std::invalid_argument("exact_bisection limited to n <= " +
                                std::to_string(std::min<std::size_t>(cap, 40)) +
                                ", got n=" + std::to_string(n));
  if (n < 2)
    throw std::invalid_argument("exact_bisection requires at least 2 vertices");

  std::vector<std::uint64_t> adj(n, 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= std::uint64_t{1} << e.v;
    adj[e.v] |= std::uint64_t{1} << e.u;
  }
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;

  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::uint64_t best_mask = 0;
  for (std::size_t s = ceil_div(n, 3); s <= n / 2; ++s) {
    const bool halve = 2 * s == n;
    // Gosper's hack over all s-subsets of n bits.
    for (std::uint64_t mask = (std::uint64_t{1} << s) - 1; mask <= full;) {
      if (!halve || (mask & 1u)) {
        std::size_t cut = 0;
        for (std::uint64_t rest = mask; rest; rest &= rest - 1)
          cut += static_cast<std::size_t>(std::popcount(adj[std::countr_zero(rest)] & ~mask));
        if (cut < best) {
          best = cut;
          best_mask = mask;
        }
      }
      const std::uint64_t low = mask & (~mask + 1);
      const std::uint64_t ripple = mask + low;
      mask = (((ripple ^ mask) >> 2) / low) | ripple;
    }
  }

  std::vector<bool> in_first(n);
  for (std::size_t v = 0; v < n; ++v)
    in_first[v] = (best_mask >> v) & 1u;
  return {bipartition_from_sides(in_first), best, true};
}

BisectionResult local_search_bisection(const Graph& g, std::uint64_t seed,
                                       LocalSearchOptions options) {
  const std::size_t n = g.num_vertices();
  if (n < 3)
    throw std::invalid_argument("local_search_bisection requires at least 3 vertices");
  const std::size_t restarts = std::max<std::size_t>(1, options.restarts);
  const std::size_t cap = options.iteration_factor * n;
  BisectionResult best;
  for (std::size_t r = 0; r < restarts; ++r) {
    BisectionResult candidate = local_search_once(g, derive_seed(seed, r), cap);
    if (r == 0 || candidate.cut < best.cut)
      best = std::move(candidate);
  }
  return best;
}

BisectionOracle exact_oracle(std::size_t cap) {
  return [cap](const Graph& g, std::size_t) { return exact_bisection(g, cap); };
}

BisectionOracle local_search_oracle(std::uint64_t seed, LocalSearchOptions options) {
  return [seed, options](const Graph& g, std::size_t level) {
    return local_search_bisection(g, derive_seed(seed, level), options);
  };
}

std::size_t WitnessChain::width_sum() const {
  std::size_t total = 0;
  for (const WitnessLevel& level : levels)
    total += level.width;
  return total;
}

std::size_t witness_min_vertices(std::size_t k) {
  if (k < 2)
    throw std::invalid_argument("witness chain needs k >= 2");
  std::size_t v = 6;
  for (std::size_t i = 2; i < k; ++i)
    v *= 3;
  return v;
}

WitnessChain witness_chain(const Graph& g, const EdgePartition& ep, const BisectionOracle& bisect) {
  validate_edge_partition(g, ep);
  const std::size_t k = ep.k;
  const std::size_t n = g.num_vertices();
  if (n < witness_min_vertices(k))
    throw std::invalid_argument("witness chain with k=" + std::to_string(k) + " needs n >= " +
                                std::to_string(witness_min_vertices(k)) + ", got " +
                                std::to_string(n));

  std::vector<Vertex> all(n);
  std::iota(all.begin(), all.end(), Vertex{0});
  const VertexSet everything(all);

  WitnessChain chain;
  chain.k = k;

  // Bisect class `cls` restricted to `domain`, returning the level in root ids.
  const auto run_level = [&](std::uint32_t cls, const VertexSet& domain) {
    const Graph cls_graph = class_subgraph(g, ep, cls);
    const InducedSubgraph restricted = induced_subgraph(cls_graph, domain);
    const BisectionResult local = bisect(restricted.graph, cls);
    const Bipartition& lp = local.partition;
    if (lp.ground_size() != domain.size() || !disjoint(lp.block1, lp.block2) ||
        (!lp.block1.empty() && lp.block1.members().back() >= domain.size()) ||
        (!lp.block2.empty() && lp.block2.members().back() >= domain.size()))
      throw std::invalid_argument("bisection oracle returned a partition of the wrong vertex set");
    if (!lp.balanced())
      throw std::invalid_argument("bisection oracle returned an unbalanced partition at level " +
                                  std::to_string(cls));
    const std::size_t width = cut_size(restricted.graph, lp.block1, lp.block2);
    if (width != local.cut)
      throw std::invalid_argument("bisection oracle reported cut " + std::to_string(local.cut) +
                                  " but its partition cuts " + std::to_string(width));
    WitnessLevel level;
    level.edge_class = cls;
    level.domain = domain;
    level.bisection = {map_to_root(lp.block1, restricted.original_id),
                       map_to_root(lp.block2, restricted.original_id)};
    level.width = width;
    return level;
  };

  const auto equalize = [&](OppositePair split) {
    chain.pre_trim_sizes.emplace_back(split.first.size(), split.second.size());
    const std::size_t s = std::min(split.first.size(), split.second.size());
    chain.a = trim_to(split.first, s);
    chain.b = trim_to(split.second, s);
    chain.nested.push_back(set_union(chain.a, chain.b));
  };

  chain.levels.push_back(run_level(0, everything));
  chain.levels.push_back(run_level(1, everything));
  equalize(lemma1_split(chain.levels[0].bisection, chain.levels[1].bisection));

  for (std::uint32_t cls = 2; cls < k; ++cls) {
    chain.levels.push_back(run_level(cls, chain.nested.back()));
    equalize(lemma1_split(chain.levels.back().bisection, Bipartition{chain.a, chain.b}));
  }

  chain.e_ab = cut_size(g, chain.a, chain.b);
  if (chain.e_ab > chain.width_sum())
    throw std::logic_error("witness chain violated e(A,B) <= sum of widths: " +
                           std::to_string(chain.e_ab) + " > " +
                           std::to_string(chain.width_sum()));
  return chain;
}

EdgePartition random_edge_partition(const Graph& g, std::size_t k, std::uint64_t seed) {
  if (k < 1)
    throw std::invalid_argument("edge partition needs k >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(k - 1));
  EdgePartition ep{k, std::vector<std::uint32_t>(g.num_edges())};
  for (auto& c : ep.class_of)
    c = pick(rng);
  return ep;
}

} // namespace crk
