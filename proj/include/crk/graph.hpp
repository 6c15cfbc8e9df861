#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace crk {

using Vertex = std::uint32_t;

/// Undirected edge with u < v.
struct Edge {
  Vertex u;
  Vertex v;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/**
   Immutable undirected simple graph on vertices 0..n-1.

   Edges keep the order in which they were first supplied, so an edge id is
   its position in edges(). Adjacency is stored CSR-style with sorted
   neighbor lists.
 */
class Graph {
public:
  Graph() = default;

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }

  std::span<const Edge> edges() const { return edges_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }

  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  bool has_edge(Vertex u, Vertex v) const;

  std::size_t max_degree() const;

  /// Common degree when every vertex has the same degree.
  std::optional<std::size_t> regular_degree() const;

  bool is_connected() const;

  /// Component id per vertex, numbered in order of smallest member.
  std::vector<std::uint32_t> components(std::size_t* count = nullptr) const;

private:
  friend struct GraphBuilder;

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adjacency_;
};

/// Sorted, duplicate-free set of vertex ids.
class VertexSet {
public:
  VertexSet() = default;
  /// Sorts and removes duplicates.
  explicit VertexSet(std::vector<Vertex> members);

  std::span<const Vertex> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(Vertex v) const;

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
  std::vector<Vertex> members_;
};

VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
bool disjoint(const VertexSet& a, const VertexSet& b);

/**
   Two-block partition of a ground set. The ground set is the union of the
   blocks, which need not be 0..n-1 (restrictions keep root ids).
 */
struct Bipartition {
  VertexSet block1;
  VertexSet block2;

  std::size_t ground_size() const { return block1.size() + block2.size(); }

  /// Each block holds at least a third of the ground set.
  bool balanced() const;
};

/// Build a bipartition of 0..n-1 from a side indicator (true = block1).
Bipartition bipartition_from_sides(const std::vector<bool>& in_block1);

/// Assignment of each edge (by id) to one of k classes.
struct EdgePartition {
  std::size_t k = 0;
  std::vector<std::uint32_t> class_of;
};

/// Throws std::invalid_argument unless ep covers g's edges with classes < k.
void validate_edge_partition(const Graph& g, const EdgePartition& ep);

struct EdgeListGraph {
  Graph graph;
  std::size_t collapsed_duplicates = 0;
};

/**
   Build a simple graph from vertex pairs. Duplicate pairs (in either
   orientation) are collapsed and counted; the first occurrence fixes the
   edge id. Throws std::invalid_argument on an endpoint >= n or a self-loop.
 */
EdgeListGraph from_edge_list(std::size_t n, std::span<const std::pair<Vertex, Vertex>> pairs);

/// Number of edges with one endpoint in x and the other in y.
std::size_t cut_size(const Graph& g, const VertexSet& x, const VertexSet& y);

struct InducedSubgraph {
  Graph graph;
  /// original_id[local] = id in the host graph.
  std::vector<Vertex> original_id;
};

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s);

/// Same vertex set, only the edges assigned to class `cls`.
Graph class_subgraph(const Graph& g, const EdgePartition& ep, std::uint32_t cls);

struct DegreeStats {
  std::vector<std::size_t> degrees;
  std::uint64_t sum_sq = 0;
};

DegreeStats degree_stats(const Graph& g);

/// Edge-list text format: "n m" followed by m lines "u v".
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);

/// One class index per line, aligned with the edge lines of the graph file.
EdgePartition read_edge_partition(std::istream& in, const Graph& g, std::size_t k);

// Small named graphs used throughout the tests and examples.
Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph star_graph(std::size_t n);
Graph complete_bipartite(std::size_t a, std::size_t b);
Graph petersen_graph();
Graph empty_graph(std::size_t n);
/// Vertex-disjoint union, second graph relabeled after the first.
Graph disjoint_union(const Graph& a, const Graph& b);

} // namespace crk
