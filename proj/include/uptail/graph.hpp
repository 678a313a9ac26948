#pragma once

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "uptail/bitset.hpp"

namespace uptail {

/// Unordered vertex pair, normalised so that u < v.
struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple labelled graph on vertices 0..n-1 with bitset adjacency rows.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  Graph(int n, std::span<const Edge> edges);

  int order() const noexcept { return n_; }
  int size() const noexcept { return m_; }

  bool has_edge(int u, int v) const { return u != v && adj_[static_cast<std::size_t>(u)].test(v); }
  /// Adds uv; loops are rejected, repeated insertions are ignored.
  void add_edge(int u, int v);
  void remove_edge(int u, int v);

  int degree(int v) const { return adj_[static_cast<std::size_t>(v)].count(); }
  int max_degree() const;
  int min_degree() const;
  const Bitset& neighbours(int v) const { return adj_[static_cast<std::size_t>(v)]; }

  /// Edges in lexicographic order of (u, v).
  std::vector<Edge> edges() const;
  bool has_isolated_vertex() const;
  bool is_connected() const;
  /// Returns true and fills `side` (0/1 per vertex) when the graph is bipartite.
  bool bipartition(std::vector<int>& side) const;
  bool is_regular() const;

  /// Subgraph induced on `vertices`, relabelled 0..k-1 in the given order.
  Graph induced(std::span<const int> vertices) const;
  /// Subgraph with every edge not inside `keep` removed; labels preserved.
  Graph restricted_to(const Bitset& keep) const;
  /// Subgraph made of the given edges of this graph on the same vertex set.
  Graph edge_subgraph(std::span<const Edge> edges) const;
  /// Drops isolated vertices and relabels the rest in increasing order.
  Graph without_isolated_vertices() const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.adj_ == b.adj_; }

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<Bitset> adj_;
};

namespace graphs {
Graph empty(int n);
Graph complete(int n);
Graph cycle(int n);
/// Path on n vertices (n-1 edges).
Graph path(int n);
/// K_{1,s}; vertex 0 is the centre.
Graph star(int s);
/// K_{a,b}; vertices 0..a-1 form the first part.
Graph complete_bipartite(int a, int b);
Graph disjoint_union(const Graph& a, const Graph& b);
Graph perfect_matching(int pairs);
}  // namespace graphs

/// Index of the pair {u,v} among the C(n,2) pairs in lexicographic order.
int pair_index(int u, int v, int n);
Edge pair_from_index(int index, int n);

Graph parse_graph6(std::string_view text);
std::string to_graph6(const Graph& g);

/// {"n": n, "adjacency": [[...], ...]} with sorted neighbour lists.
nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

/// Accepts either a graph6 record or an adjacency-list JSON document.
Graph parse_graph(std::string_view text);

}  // namespace uptail
