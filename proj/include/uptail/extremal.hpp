#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "uptail/graph.hpp"
#include "uptail/rational.hpp"

namespace uptail {

struct FracIndepResult {
  Rational alpha_star;
  std::vector<Rational> assignment;  // each 0, 1/2 or 1
  std::vector<int> V1;
  std::vector<int> V2;
  /// Vertex-disjoint edges (two vertices) and cycles (vertex sequence in
  /// cyclic order, length >= 3) of J covering V1.
  std::vector<std::vector<int>> cover;
};

/// Optimal fractional independent set via a maximum matching in the
/// bipartite double cover of J and a König independent set.
FracIndepResult fractional_independence(const Graph& J);

/// max sum of alpha over alpha in {0,1/2,1}^V with alpha_u + alpha_v <= 1.
Rational fractional_independence_bruteforce(const Graph& J);

enum class BoundKind { cycle, jor, edge_regular, edge_bipartite, bad_edges, stars };

std::string to_string(BoundKind kind);
BoundKind bound_kind_from_string(const std::string& name);

struct BoundReport {
  BoundKind kind = BoundKind::jor;
  double bound = 0;
  std::optional<Rational> exact_bound;  // present when the formula is rational
  std::uint64_t actual = 0;
  bool holds = false;
  /// For the edge-local kinds: the edge with the largest actual/bound ratio.
  std::optional<Edge> edge;
};

struct StarsArgs {
  Rational q;
  int s = 2;
  /// Part U of the bipartite host. Defaults to colour class 0.
  std::optional<std::vector<int>> U;
};

struct BoundExtra {
  std::optional<Edge> edge;          // edge_regular / edge_bipartite
  std::optional<Graph> subgraph;     // bad_edges: G' ⊆ G on the same vertex set
  std::optional<StarsArgs> stars;    // stars
};

/// Evaluates one of the embedding-count bounds against the brute-force count.
/// Throws PreconditionError naming the failed hypothesis.
BoundReport embedding_bound(BoundKind kind, const Graph& J, const Graph& G, const BoundExtra& extra = {});

/// Nonempty subgraphs of a connected Delta-regular H without isolated
/// vertices that equal H or are bipartite with one side all of degree Delta,
/// one representative per isomorphism class.
std::vector<Graph> q_family(const Graph& H);
/// The bipartite membership test (second condition) for a given Delta.
bool has_full_degree_side(const Graph& J, int delta);

struct DenseExtraction {
  std::vector<int> vertices;
  Graph subgraph;  // induced on `vertices`, relabelled in increasing order
  double eps = 0;
  double guarantee = 0;  // (1 - 4 eps^{1/2}) (2 e_G)^{1/2}
  double threshold = 0;  // F-degree cutoff used in the peeling
};

/// Builds the auxiliary graph on E(G) (disjoint edge pairs spanning a K_4),
/// peels vertices of low F-degree, and returns G induced on the endpoints of
/// the surviving edges. Returns none when the guarantee is vacuous and no
/// threshold override is given, or when nothing survives.
std::optional<DenseExtraction> extract_dense_subgraph(const Graph& G, int r,
                                                      std::optional<double> threshold = std::nullopt);

struct SplitReport {
  std::uint64_t emb_kr = 0;            // |Emb(K_r, G)|
  std::uint64_t emb_kr_inside_v = 0;   // |Emb(K_r, G[V])|
  double kr_loss_bound = 0;            // r |U| |Emb(K_{r-1}, G)|
  double u_size_bound = 0;             // 2 e_G / theta
  std::uint64_t emb_star = 0;          // |Emb(K_{1,r-1}, G)|
  std::uint64_t emb_star_u = 0;        // |Emb_U(K_{1,r-1}, G[U,V])|
  std::uint64_t t1 = 0;                // centre and some leaf in U
  std::uint64_t t2 = 0;                // centre in V
  double t1_bound = 0;                 // (r-1) |U|^2 n^{r-2}
  double t2_bound = 0;                 // (r-1) 2 e_G theta^{r-2}
  bool kr_identity_holds = false;
  bool u_size_holds = false;
  bool star_identity_holds = false;
  bool t_bounds_hold = false;
};

struct SplitResult {
  std::vector<int> U;
  std::vector<int> V;
  SplitReport report;
};

SplitResult split_high_degree(const Graph& G, double theta, int r);

/// Emb_U(K_{1,s}, G) = sum over u in U of (deg u)_s.
std::uint64_t star_embeddings_from(const Graph& G, const std::vector<int>& U, int s);

struct StarWitness {
  std::vector<int> W;
  std::vector<int> W_prime;
};

std::optional<StarWitness> star_witness(const Graph& G, const std::vector<int>& U, const Rational& q, int s,
                                        double eps);

nlohmann::json to_json(const FracIndepResult& r);
nlohmann::json to_json(const BoundReport& r);

}  // namespace uptail
