#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>

#include "uptail/graph.hpp"

namespace uptail {

struct EmbeddingCount {
  std::uint64_t total = 0;   // |Emb(J,G)|, or |Emb(J,G;uv)| when restricted
  std::uint64_t copies = 0;  // total / |Aut(J)|
  /// Copies of J containing each edge of G, N(J,G;uv).
  std::optional<std::map<Edge, std::uint64_t>> per_edge;
};

/// Visits every injective homomorphism J -> G. `image[j]` is the image of
/// vertex j. `fixed` pre-assigns some vertices of J (pairs (j, g)).
void for_each_embedding(const Graph& J, const Graph& G,
                        const std::function<void(std::span<const int> image)>& visit,
                        std::span<const std::pair<int, int>> fixed = {});

std::uint64_t count_embeddings(const Graph& J, const Graph& G,
                               std::span<const std::pair<int, int>> fixed = {});

/// |Aut(J)|, computed as |Emb(J,J)|.
std::uint64_t automorphism_count(const Graph& J);

/// Embeddings of J into G whose image contains the edge uv.
std::uint64_t count_embeddings_through(const Graph& J, const Graph& G, Edge uv);

/// Emb(J,G;uv) for every edge uv of G in one pass.
std::map<Edge, std::uint64_t> embeddings_per_edge(const Graph& J, const Graph& G);

/// Counts embeddings and copies of J in G. With `restrict_edge`, only
/// embeddings whose image contains that edge are counted.
EmbeddingCount enumerate_embeddings(const Graph& J, const Graph& G,
                                    std::optional<Edge> restrict_edge = std::nullopt,
                                    bool with_per_edge = false);

/// Emb(K_{1,s},G) = sum over v of (deg v)_s.
std::uint64_t star_embeddings(const Graph& G, int s);

/// Distinct labelled copies of H on the vertex set {0..v_H-1}, each as an
/// edge list. There are v_H!/|Aut(H)| of them.
std::vector<std::vector<Edge>> labelled_copies(const Graph& H);

/// Canonical form up to isomorphism (minimum adjacency code over all
/// vertex permutations). Intended for graphs with at most 8 vertices.
std::string canonical_code(const Graph& g);
bool isomorphic(const Graph& a, const Graph& b);

}  // namespace uptail
