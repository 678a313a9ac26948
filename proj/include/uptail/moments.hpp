#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "uptail/model.hpp"
#include "uptail/rational.hpp"

namespace uptail {

/// Exact law of X on the p-biased hypercube.
struct ExactDist {
  std::map<std::uint64_t, Rational> pmf;  // only values of positive probability
  int N = 0;                              // 2^N outcomes were enumerated

  Rational mean() const;
  /// P(X ≥ threshold) for a rational threshold.
  Rational tail(const Rational& threshold) const;
  /// E[(X)_t].
  Rational factorial_moment(int t) const;
};

inline constexpr int kMaxDistributionCoordinates = 22;

/// Throws BudgetError beyond kMaxDistributionCoordinates coordinates.
ExactDist exact_distribution(const Hypercube& cube);
ExactDist exact_distribution(const Model& model);

/// {"value": "num/den"}.
nlohmann::json to_json(const ExactDist& dist);

/// Σ over ordered t-tuples of distinct terms of p^{|∪ones|}(1−p)^{|∪zeros|}
/// (0 when some coordinate is forced both ways). BudgetError when more than
/// `budget` unordered t-sets would be visited.
std::vector<Rational> tuple_sum_moments(const Hypercube& cube, int t_max, std::uint64_t budget);

struct FactorialMoments {
  std::vector<Rational> from_distribution;         // M_0..M_{t_max}
  std::optional<std::vector<Rational>> tuple_sum;  // none when over budget
};

FactorialMoments factorial_moments(const Hypercube& cube, int t_max, std::uint64_t tuple_budget = 5'000'000);

struct MarkovBound {
  double bound = 0;           // log((1+δ)μ)_t − log M_t
  double exact_neg_log_tail = 0;
  Rational tail;              // P(X ≥ (1+δ)μ)
  Rational moment;            // M_t
  Rational falling;           // ((1+δ)μ)_t
  /// P·((1+δ)μ)_t ≤ M_t, decided exactly.
  bool holds = false;
};

/// Requires 1 ≤ t ≤ (1+δ)μ; DomainError otherwise.
MarkovBound poisson_markov_bound(const ExactDist& dist, const Rational& delta, int t);

struct StabilityCheck {
  std::size_t family_size = 0;  // |𝓘|
  Rational lhs;  // P(X ≥ (1+δ)E[X] and no I ∈ 𝓘 has Y_I = 1)
  Rational rhs;  // ((1+δ−ε)/(1+δ))^ℓ
  bool holds = false;
};

/// 𝓘 = {I : |I| ≤ dℓ, E_I[X] ≥ (1+δ−ε)E[X]} with d the largest term size.
/// Monotone models only (PreconditionError otherwise).
StabilityCheck stability_check(const Hypercube& cube, const Rational& delta, const Rational& eps, int ell);

struct FallingFactorialLog {
  double main = 0;    // I(t/x)·x + t log x
  double lambda = 0;  // log (x+t)_t − main
};

FallingFactorialLog falling_factorial_log(double x, int t);

/// Vertices 0..N−1; edges are sorted vertex lists.
struct Hypergraph {
  int N = 0;
  std::vector<std::vector<int>> edges;
  /// Set when vertices are the pairs of K_n under pair_index.
  std::optional<int> graph_order;

  bool uniform() const;
};

/// k-APs of [N]; element i is vertex i−1.
Hypergraph ap_hypergraph(int N, int k);
/// Edge sets of the copies of `pattern` in K_n.
Hypergraph copy_hypergraph(const Graph& pattern, int n);

struct ClusterCensus {
  std::map<int, Rational> by_size;  // s → E[D_s]
  /// (s, k, m) → E[D_{s,k,m}] with k, m the vertex and edge counts of the
  /// union graph; filled for copy hypergraphs only.
  std::map<std::tuple<int, int, int>, Rational> by_size_km;
  bool complete = true;
};

/// E[D_s(H_p)] for 1 ≤ s ≤ s_max. Stops and clears `complete` after
/// `budget` candidate edge sets.
ClusterCensus dependency_clusters(const Hypergraph& H, const Rational& p, int s_max, std::uint64_t budget);

/// Rows s,k,m,expectation.
std::string census_csv(const ClusterCensus& census);

/// a_m: m-subsets of [N] that are the union of one connected cluster of k-APs.
std::int64_t ap_cluster_union_count(int N, int k, int m, std::uint64_t budget = 50'000'000);

/// N²(2kmN)^{(m−k)/(k−1)}.
double am_upper_bound(int N, int k, int m);
/// k³m′²(2km′N)^{−1/(k−1)} ≤ 1/2 for all k < m′ ≤ m.
bool am_upper_condition(int N, int k, int m);
/// a_m ≤ kmN·a_{m−k+1} + k²m²(a_{m−k+2} + … + a_{m−1}) for m ≥ k+1, with
/// the a_j supplied for j < m.
bool am_recurrence_holds(const std::vector<std::int64_t>& a, int N, int k, int m);

struct JansonCheck {
  Rational mu;
  Rational Delta;
  Rational exact_prob;  // P(Z ≤ (1−ε)μ)
  double bound = 0;     // 2 exp(−ε²μ²/(2(μ+Δ)))
  bool holds = false;
};

/// Family of subsets of {0..t−1}; S uniform among s-subsets, t ≤ 24.
JansonCheck hypergeometric_janson_check(const std::vector<std::vector<int>>& family, int t, int s,
                                        const Rational& eps);

}  // namespace uptail
