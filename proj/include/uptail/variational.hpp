#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "uptail/errors.hpp"
#include "uptail/graph.hpp"
#include "uptail/model.hpp"
#include "uptail/rational.hpp"

namespace uptail {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// (δ(1−x))^{2/r}/2 + (⌊xδc/r⌋ + {xδc/r}^{1/(r−1)})/c for finite c > 0.
double psi(int r, double delta, double c, double x);

/// Pointwise limit of psi as c → 0 (c == 0) or c → ∞ (c == kInfinity).
double psi_limit(int r, double delta, double c, double x);

struct MinimiserSet {
  double phi = 0;
  /// Attaining points among {0, x*, 1}, ascending, within 1e-9 of phi.
  std::vector<double> argmins;
  /// r⌊δc/r⌋/(δc); 0 when c == 0 and 1 when c is infinite.
  double x_star = 0;
};

inline constexpr double kArgminTolerance = 1e-9;

MinimiserSet phi_clique_hub(int r, double delta, double c);

/// "clique", "hub", "mixed:<x*>" or "tie".
std::string argmin_label(const MinimiserSet& m);

/// δ at which δ^{2/r}/2 = δ/r, i.e. (r/2)^{r/(r−2)}.
double clique_hub_crossover(int r);
/// The same point located by bisection on the c = ∞ minimiser switch.
double clique_hub_crossover_bisection(int r, double tol = 1e-13);

/// ((1+δ)log(1+δ) − δ)·mean.
double poisson_rate(double delta, double mean);

/// Coefficients i_0, i_1, ... of the independence polynomial (v_H ≤ 24).
std::vector<std::uint64_t> independence_polynomial(const Graph& H);
/// Positive root of P_H(θ) = 1 + δ.
double independence_root(const Graph& H, double delta);

struct RegularRate {
  double clique = 0;  // δ^{2/v_H}/2
  double theta = 0;
  double rate = 0;    // clique when c == 0, min(clique, θ) when c == ∞
};

/// Normalised rate for a connected Δ-regular pattern with c ∈ {0, ∞}.
RegularRate regular_rate(const Graph& H, double delta, double c);

/// √δ · N p^{k/2} log(1/p).
double ap_rate(int N, int k, double p, double delta);

enum class WitnessKind { subset, subcube, graph };

std::string to_string(WitnessKind kind);

struct Witness {
  WitnessKind kind = WitnessKind::subset;
  /// subset: members of [N]; subcube: fixed coordinates (1-based).
  std::vector<int> elements;
  /// subcube only: the value fixed at each coordinate of `elements`.
  std::vector<int> bits;
  /// graph witnesses (subgraph models): the conditioning graph on [n].
  std::optional<Graph> graph;
  double log_cost = kInfinity;
  Rational conditional_mean;
  bool feasible = false;
};

nlohmann::json to_json(const Witness& w);

enum class ConstructionKind { clique, hub, interval };

ConstructionKind construction_kind_from_string(const std::string& name);

/// Planted clique, hub or initial interval. Throws InfeasibleError when the
/// structure does not fit into the ground set, PreconditionError when the
/// kind does not apply to the model.
Witness build_construction(ConstructionKind kind, const Model& model, const Rational& delta);

/// Exhaustive search ran out of budget; carries the best witness found.
class SearchBudgetError : public BudgetError {
 public:
  SearchBudgetError(const std::string& what, std::optional<Witness> best)
      : BudgetError(what), best_(std::move(best)) {}
  const std::optional<Witness>& best() const noexcept { return best_; }

 private:
  std::optional<Witness> best_;
};

/// Smallest feasible conditioning set (sizes ascending, lexicographic within
/// a size). log_cost is +∞ when no set is feasible. `budget` bounds the
/// number of candidate sets examined.
Witness phi_bruteforce(const Model& model, const Rational& delta, std::uint64_t budget);
Witness phi_bruteforce(const Hypercube& cube, const Rational& delta, std::uint64_t budget);

/// Cheapest feasible subcube under −log Pr(Y ∈ F); ties by codimension then
/// lexicographic (coordinates, bits).
Witness phi_subcube_bruteforce(const Model& model, const Rational& delta, std::uint64_t budget);
Witness phi_subcube_bruteforce(const Hypercube& cube, const Rational& delta, std::uint64_t budget);

struct TailUpperBound {
  double value = kInfinity;
  /// εE[X] ≥ M: the logarithmic term is not positive.
  bool degenerate = false;
};

/// Φ_X(δ+ε) + log(M/(εE[X])), an upper bound on −log P(X ≥ (1+δ)E[X]).
TailUpperBound ut_upper_bound(const Hypercube& cube, double eps, double phi_value);

}  // namespace uptail
