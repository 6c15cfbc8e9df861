#include "crk/graph.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>

namespace crk {

// Assembles the CSR arrays from an edge list that is already simple.
struct GraphBuilder {
  static Graph build(std::size_t n, std::vector<Edge> edges) {
    Graph g;
    g.n_ = n;
    g.offsets_.assign(n + 1, 0);
    for (const Edge& e : edges) {
      ++g.offsets_[e.u + 1];
      ++g.offsets_[e.v + 1];
    }
    std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
    g.adjacency_.resize(2 * edges.size());
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const Edge& e : edges) {
      g.adjacency_[fill[e.u]++] = e.v;
      g.adjacency_[fill[e.v]++] = e.u;
    }
    for (std::size_t v = 0; v < n; ++v)
      std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
                g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));
    g.edges_ = std::move(edges);
    return g;
  }
};

namespace {

std::string pair_text(Vertex u, Vertex v) {
  return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

} // namespace

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_)
    return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (std::size_t v = 0; v < n_; ++v)
    best = std::max(best, degree(static_cast<Vertex>(v)));
  return best;
}

std::optional<std::size_t> Graph::regular_degree() const {
  if (n_ == 0)
    return std::nullopt;
  const std::size_t d = degree(0);
  for (std::size_t v = 1; v < n_; ++v)
    if (degree(static_cast<Vertex>(v)) != d)
      return std::nullopt;
  return d;
}

std::vector<std::uint32_t> Graph::components(std::size_t* count) const {
  constexpr auto unseen = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> comp(n_, unseen);
  std::uint32_t next = 0;
  std::vector<Vertex> stack;
  for (std::size_t s = 0; s < n_; ++s) {
    if (comp[s] != unseen)
      continue;
    comp[s] = next;
    stack.push_back(static_cast<Vertex>(s));
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : neighbors(v))
        if (comp[w] == unseen) {
          comp[w] = next;
          stack.push_back(w);
        }
    }
    ++next;
  }
  if (count)
    *count = next;
  return comp;
}

bool Graph::is_connected() const {
  std::size_t count = 0;
  components(&count);
  return count <= 1;
}

VertexSet::VertexSet(std::vector<Vertex> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet(std::move(out));
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet(std::move(out));
}

bool disjoint(const VertexSet& a, const VertexSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j)
      return false;
    if (*i < *j)
      ++i;
    else
      ++j;
  }
  return true;
}

bool Bipartition::balanced() const {
  const std::size_t smaller = std::min(block1.size(), block2.size());
  return 3 * smaller >= ground_size();
}

Bipartition bipartition_from_sides(const std::vector<bool>& in_block1) {
  std::vector<Vertex> a;
  std::vector<Vertex> b;
  for (std::size_t v = 0; v < in_block1.size(); ++v)
    (in_block1[v] ? a : b).push_back(static_cast<Vertex>(v));
  return {VertexSet(std::move(a)), VertexSet(std::move(b))};
}

void validate_edge_partition(const Graph& g, const EdgePartition& ep) {
  if (ep.class_of.size() != g.num_edges())
    throw std::invalid_argument("edge partition has " + std::to_string(ep.class_of.size()) +
                                " entries for " + std::to_string(g.num_edges()) + " edges");
  for (std::uint32_t c : ep.class_of)
    if (c >= ep.k)
      throw std::invalid_argument("edge class " + std::to_string(c) + " out of range for k=" +
                                  std::to_string(ep.k));
}

EdgeListGraph from_edge_list(std::size_t n, std::span<const std::pair<Vertex, Vertex>> pairs) {
  std::vector<std::pair<std::uint64_t, std::size_t>> keyed;
  keyed.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [u, v] = pairs[i];
    if (u >= n || v >= n)
      throw std::invalid_argument("endpoint out of range in pair " + pair_text(u, v) +
                                  " for n=" + std::to_string(n));
    if (u == v)
      throw std::invalid_argument("self-loop " + pair_text(u, v));
    if (u > v)
      std::swap(u, v);
    keyed.emplace_back((std::uint64_t{u} << 32) | v, i);
  }
  std::sort(keyed.begin(), keyed.end());

  std::vector<bool> keep(pairs.size(), false);
  std::size_t duplicates = 0;
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    if (i > 0 && keyed[i].first == keyed[i - 1].first)
      ++duplicates;
    else
      keep[keyed[i].second] = true;
  }
  const std::size_t unique_count = keyed.size() - duplicates;
  keyed = {};

  std::vector<Edge> edges;
  edges.reserve(unique_count);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (keep[i]) {
      auto [u, v] = pairs[i];
      edges.push_back({std::min(u, v), std::max(u, v)});
    }
  return {GraphBuilder::build(n, std::move(edges)), duplicates};
}

std::size_t cut_size(const Graph& g, const VertexSet& x, const VertexSet& y) {
  if (!disjoint(x, y))
    throw std::invalid_argument("cut_size requires disjoint vertex sets");
  // 1 = in x, 2 = in y
  std::vector<std::uint8_t> side(g.num_vertices(), 0);
  for (Vertex v : x) {
    if (v >= g.num_vertices())
      throw std::invalid_argument("vertex " + std::to_string(v) + " not in graph");
    side[v] = 1;
  }
  for (Vertex v : y) {
    if (v >= g.num_vertices())
      throw std::invalid_argument("vertex " + std::to_string(v) + " not in graph");
    side[v] = 2;
  }
  // Walk the smaller set's adjacency.
  const VertexSet& small = x.size() <= y.size() ? x : y;
  const std::uint8_t other = x.size() <= y.size() ? 2 : 1;
  std::size_t count = 0;
  for (Vertex v : small)
    for (Vertex w : g.neighbors(v))
      count += side[w] == other;
  return count;
}

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s) {
  if (s.empty())
    throw std::invalid_argument("induced_subgraph requires a nonempty vertex set");
  constexpr auto absent = static_cast<Vertex>(-1);
  std::vector<Vertex> local(g.num_vertices(), absent);
  std::vector<Vertex> original(s.begin(), s.end());
  for (std::size_t i = 0; i < original.size(); ++i) {
    if (original[i] >= g.num_vertices())
      throw std::invalid_argument("vertex " + std::to_string(original[i]) + " not in graph");
    local[original[i]] = static_cast<Vertex>(i);
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (local[e.u] != absent && local[e.v] != absent)
      edges.push_back({local[e.u], local[e.v]});
  return {GraphBuilder::build(original.size(), std::move(edges)), std::move(original)};
}

Graph class_subgraph(const Graph& g, const EdgePartition& ep, std::uint32_t cls) {
  validate_edge_partition(g, ep);
  std::vector<Edge> edges;
  auto all = g.edges();
  for (std::size_t i = 0; i < all.size(); ++i)
    if (ep.class_of[i] == cls)
      edges.push_back(all[i]);
  return GraphBuilder::build(g.num_vertices(), std::move(edges));
}

DegreeStats degree_stats(const Graph& g) {
  DegreeStats stats;
  stats.degrees.resize(g.num_vertices());
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    const std::size_t d = g.degree(static_cast<Vertex>(v));
    stats.degrees[v] = d;
    stats.sum_sq += std::uint64_t{d} * d;
  }
  return stats;
}

Graph read_edge_list(std::istream& in) {
  std::size_t n = 0;
  std::size_t m = 0;
  if (!(in >> n >> m))
    throw std::invalid_argument("edge list: missing \"n m\" header");
  std::vector<std::pair<Vertex, Vertex>> pairs;
  pairs.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    long long u = 0;
    long long v = 0;
    if (!(in >> u >> v))
      throw std::invalid_argument("edge list: expected " + std::to_string(m) + " edges, got " +
                                  std::to_string(i));
    if (u < 0 || v < 0)
      throw std::invalid_argument("edge list: negative vertex id on edge line " +
                                  std::to_string(i + 1));
    pairs.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  auto built = from_edge_list(n, pairs);
  if (built.collapsed_duplicates > 0)
    throw std::invalid_argument("edge list: " + std::to_string(built.collapsed_duplicates) +
                                " duplicate edges");
  return std::move(built.graph);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges())
    out << e.u << ' ' << e.v << '\n';
}

EdgePartition read_edge_partition(std::istream& in, const Graph& g, std::size_t k) {
  EdgePartition ep{k, {}};
  ep.class_of.reserve(g.num_edges());
  long long c = 0;
  while (in >> c) {
    if (c < 0)
      throw std::invalid_argument("edge partition: negative class index");
    ep.class_of.push_back(static_cast<std::uint32_t>(c));
  }
  validate_edge_partition(g, ep);
  return ep;
}

namespace {

Graph from_pairs(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& pairs) {
  return from_edge_list(n, pairs).graph;
}

} // namespace

Graph complete_graph(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      pairs.emplace_back(u, v);
  return from_pairs(n, pairs);
}

Graph cycle_graph(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex v = 0; v < n; ++v)
    pairs.emplace_back(v, static_cast<Vertex>((v + 1) % n));
  return from_pairs(n, pairs);
}

Graph path_graph(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex v = 0; v + 1 < n; ++v)
    pairs.emplace_back(v, v + 1);
  return from_pairs(n, pairs);
}

Graph star_graph(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex v = 1; v < n; ++v)
    pairs.emplace_back(0, v);
  return from_pairs(n, pairs);
}

Graph complete_bipartite(std::size_t a, std::size_t b) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex u = 0; u < a; ++u)
    for (std::size_t v = a; v < a + b; ++v)
      pairs.emplace_back(u, static_cast<Vertex>(v));
  return from_pairs(a + b, pairs);
}

Graph petersen_graph() {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex i = 0; i < 5; ++i) {
    pairs.emplace_back(i, (i + 1) % 5);
    pairs.emplace_back(i, i + 5);
    pairs.emplace_back(i + 5, (i + 2) % 5 + 5);
  }
  return from_pairs(10, pairs);
}

Graph empty_graph(std::size_t n) { return GraphBuilder::build(n, {}); }

Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> edges(a.edges().begin(), a.edges().end());
  const auto shift = static_cast<Vertex>(a.num_vertices());
  for (const Edge& e : b.edges())
    edges.push_back({e.u + shift, e.v + shift});
  return GraphBuilder::build(a.num_vertices() + b.num_vertices(), std::move(edges));
}

} // namespace crk
