#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "uptail/model.hpp"
#include "uptail/rational.hpp"

namespace uptail {

struct McConfig {
  Model model;
  Rational delta;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  /// Coordinates forced to 1 (pair indices for graph models, element − 1 for APs).
  std::vector<int> plant;
};

struct McEstimate {
  double p_hat = 0;
  double std_error = 0;  // sqrt(p_hat(1−p_hat)/samples)
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  /// Σ X over the samples, for checks on the planted mean.
  BigInt sum_x = 0;
};

/// Coordinate j of sample i is Bernoulli(p), drawn from a counter-based
/// stream keyed by (seed, i); results do not depend on the thread count.
McEstimate sample_tail(const McConfig& cfg);

/// {p_hat, stderr, hits, samples, seed}.
nlohmann::json to_json(const McEstimate& est);

/// Exact E[X] for any model size.
Rational model_mean(const Model& model);
/// X evaluated on a graph (graph models) or on a set of coordinates.
std::uint64_t evaluate_model(const Model& model, const std::vector<char>& coordinates);

/// U with |U| ≥ (1−ε)x^{1/r}np^{(r−1)/2} and δ_{G[U]} ≥ (1−ε)|U|, found by
/// peeling; an empty U when x = 0. Sound but incomplete.
std::optional<std::vector<int>> detect_clique_event(const Graph& G, double eps, double x, double p, int r);

/// Hub event: U among the top-degree prefixes with ⌊(1−ε)|U|⌋ members of
/// degree ≥ (1−ε)n and e(U, V∖U) ≥ (1−ε)n(⌊ℓ⌋ + {ℓ}^{1/(r−1)}), ℓ = xnp^{r−1}/r.
std::optional<std::vector<int>> detect_hub_event(const Graph& G, double eps, double x, double p, int r);

/// Exact re-verification of the two events for a given U.
bool clique_event_holds(const Graph& G, const std::vector<int>& U, double eps, double x, double p, int r);
bool hub_event_holds(const Graph& G, const std::vector<int>& U, double eps, double x, double p, int r);

}  // namespace uptail
