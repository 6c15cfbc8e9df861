#include "crk/random_models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

namespace crk {

namespace {

using Pairs = std::vector<std::pair<Vertex, Vertex>>;

std::vector<Vertex> identity(std::size_t n) {
  std::vector<Vertex> v(n);
  std::iota(v.begin(), v.end(), Vertex{0});
  return v;
}

// Drops loops and collapses parallel edges of a multigraph pair list.
SampleReport simplify(std::size_t n, Pairs pairs, std::uint64_t seed) {
  SampleReport report;
  report.seed = seed;
  const auto loops = std::erase_if(pairs, [](const auto& p) { return p.first == p.second; });
  report.removed_loops = loops;
  auto built = from_edge_list(n, pairs);
  report.graph = std::move(built.graph);
  report.collapsed_multiedges = built.collapsed_duplicates;
  return report;
}

void check_regular_params(std::size_t n, std::size_t d, RegularModel model) {
  if (d >= n && !(d == 0 && n == 0))
    throw std::invalid_argument("regular model requires d < n (d=" + std::to_string(d) +
                                ", n=" + std::to_string(n) + ")");
  switch (model) {
  case RegularModel::Permutation:
  case RegularModel::FullCycle:
    if (d % 2 != 0)
      throw std::invalid_argument(std::string(to_string(model)) + " model requires even d");
    break;
  case RegularModel::Matching:
    if (n % 2 != 0)
      throw std::invalid_argument("matching model requires even n");
    break;
  case RegularModel::UniformSimple:
    if ((n * d) % 2 != 0)
      throw std::invalid_argument("uniform model requires n*d even");
    break;
  }
}

Pairs permutation_pairs(std::size_t n, std::size_t d, bool full_cycle, std::mt19937_64& rng) {
  Pairs pairs;
  pairs.reserve(n * d / 2);
  std::vector<Vertex> order = identity(n);
  for (std::size_t i = 0; i < d / 2; ++i) {
    std::shuffle(order.begin(), order.end(), rng);
    if (full_cycle) {
      // order[0] -> order[1] -> ... -> order[n-1] -> order[0]
      for (std::size_t j = 0; j < n; ++j)
        pairs.emplace_back(order[j], order[(j + 1) % n]);
    } else {
      for (std::size_t v = 0; v < n; ++v)
        pairs.emplace_back(static_cast<Vertex>(v), order[v]);
    }
  }
  return pairs;
}

Pairs matching_pairs(std::size_t n, std::size_t d, std::mt19937_64& rng) {
  Pairs pairs;
  pairs.reserve(n * d / 2);
  std::vector<Vertex> order = identity(n);
  for (std::size_t i = 0; i < d; ++i) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t j = 0; j + 1 < n; j += 2)
      pairs.emplace_back(order[j], order[j + 1]);
  }
  return pairs;
}

// One pairing of n*d half-edges; empty result when a loop or repeat appears.
std::optional<Pairs> try_simple_pairing(std::size_t n, std::size_t d, std::mt19937_64& rng,
                                        std::vector<Vertex>& points,
                                        std::vector<std::uint64_t>& seen) {
  points.clear();
  for (std::size_t v = 0; v < n; ++v)
    points.insert(points.end(), d, static_cast<Vertex>(v));
  std::shuffle(points.begin(), points.end(), rng);
  Pairs pairs;
  pairs.reserve(points.size() / 2);
  seen.clear();
  for (std::size_t j = 0; j + 1 < points.size(); j += 2) {
    Vertex u = points[j];
    Vertex v = points[j + 1];
    if (u == v)
      return std::nullopt;
    if (u > v)
      std::swap(u, v);
    seen.push_back((std::uint64_t{u} << 32) | v);
    pairs.emplace_back(u, v);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    return std::nullopt;
  return pairs;
}

} // namespace

std::string_view to_string(RegularModel model) {
  switch (model) {
  case RegularModel::Permutation:
    return "perm";
  case RegularModel::FullCycle:
    return "cycle";
  case RegularModel::Matching:
    return "matching";
  case RegularModel::UniformSimple:
    return "uniform";
  }
  return "unknown";
}

RegularModel parse_regular_model(std::string_view name) {
  if (name == "perm" || name == "permutation")
    return RegularModel::Permutation;
  if (name == "cycle" || name == "full_cycle")
    return RegularModel::FullCycle;
  if (name == "matching")
    return RegularModel::Matching;
  if (name == "uniform" || name == "uniform_simple")
    return RegularModel::UniformSimple;
  throw std::invalid_argument("unknown regular model '" + std::string(name) + "'");
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Graph sample_gnp(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("sample_gnp: p must lie in [0,1], got " + std::to_string(p));
  Pairs pairs;
  if (p == 0.0 || n < 2)
    return from_edge_list(n, pairs).graph;
  if (p == 1.0)
    return complete_graph(n);

  std::mt19937_64 rng(seed);
  std::geometric_distribution<std::uint64_t> skip(p);
  pairs.reserve(static_cast<std::size_t>(p * static_cast<double>(n) * (n - 1) / 2 * 1.1) + 16);
  // Walk pairs (w, v) with w < v in row order, jumping over non-edges.
  std::uint64_t v = 1;
  std::uint64_t w = 0;
  bool first = true;
  while (v < n) {
    const std::uint64_t gap = skip(rng);
    w += first ? gap : gap + 1;
    first = false;
    while (w >= v && v < n) {
      w -= v;
      ++v;
    }
    if (v < n)
      pairs.emplace_back(static_cast<Vertex>(w), static_cast<Vertex>(v));
  }
  return from_edge_list(n, pairs).graph;
}

std::uint64_t uniform_simple_budget(std::size_t d) {
  const double dd = static_cast<double>(d);
  const double budget = 1e3 * std::exp((dd * dd - 1.0) / 4.0);
  return budget >= 1e6 ? 1'000'000ULL : static_cast<std::uint64_t>(std::ceil(budget));
}

SampleReport sample_regular(std::size_t n, std::size_t d, RegularModel model, std::uint64_t seed) {
  check_regular_params(n, d, model);
  std::mt19937_64 rng(seed);
  switch (model) {
  case RegularModel::Permutation:
    return simplify(n, permutation_pairs(n, d, false, rng), seed);
  case RegularModel::FullCycle:
    return simplify(n, permutation_pairs(n, d, true, rng), seed);
  case RegularModel::Matching:
    return simplify(n, matching_pairs(n, d, rng), seed);
  case RegularModel::UniformSimple: {
    const std::uint64_t budget = uniform_simple_budget(d);
    std::vector<Vertex> points;
    std::vector<std::uint64_t> seen;
    for (std::uint64_t attempt = 0; attempt < budget; ++attempt) {
      if (auto pairs = try_simple_pairing(n, d, rng, points, seen)) {
        SampleReport report = simplify(n, std::move(*pairs), seed);
        report.rejected_attempts = attempt;
        return report;
      }
    }
    throw std::runtime_error("uniform model: no simple pairing within " + std::to_string(budget) +
                             " attempts (n=" + std::to_string(n) + ", d=" + std::to_string(d) +
                             ")");
  }
  }
  throw std::invalid_argument("unknown regular model");
}

double chernoff_degree_tail(std::size_t n, double p, double delta) {
  if (!(delta > 0.0))
    throw std::invalid_argument("chernoff_degree_tail: delta must be positive");
  const double mean = (static_cast<double>(n) - 1.0) * p;
  const double log_base = delta - (1.0 + delta) * std::log1p(delta);
  return std::exp(mean * log_base);
}

bool max_degree_ok(const Graph& g, double p) {
  if (!(p > 0.0))
    throw std::invalid_argument("max_degree_ok: p must be positive");
  const double n = static_cast<double>(g.num_vertices());
  if (g.num_vertices() == 0)
    return true;
  const double bound = (1.0 + std::log(n)) * n * p;
  return static_cast<double>(g.max_degree()) <= bound;
}

double density_tail_bound(double trials, double p) {
  if (trials < 0.0)
    throw std::invalid_argument("density_tail_bound: trial count must be nonnegative");
  return std::exp(-trials * p / 8.0);
}

} // namespace crk
