#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "uptail/errors.hpp"
#include "uptail/graph.hpp"
#include "uptail/model.hpp"
#include "uptail/rational.hpp"

namespace uptail {

/// K and phi_plus are user inputs; phi_plus stands for Φ_X(δ+ε).
struct CoreParams {
  Rational delta;
  Rational eps;
  double K = 1;
  double phi_plus = 1;
};

struct CoreCheck {
  bool bias = false;     // E_I ≥ (1+δ−ε)E[X]
  bool size = false;     // |I| ≤ K·phi_plus
  bool min_gain = false; // min_i (E_I − E_{I∖i}) ≥ E[X]/(K·phi_plus); vacuous for I = ∅
  Rational conditional_mean;
  Rational bias_threshold;
  Rational gain_threshold;
  /// Smallest single-element gain, or none for I = ∅.
  std::optional<Rational> smallest_gain;

  bool holds() const noexcept { return bias && size && min_gain; }
};

CoreCheck is_core(const Hypercube& cube, const CoreParams& params, Mask I);

/// Peels elements whose gain is below s/|I| (the original size) until none is
/// left; the smallest gain goes first, ties to the smallest index.
/// The result J satisfies E_J ≥ E_I − s and min gain ≥ s/|I|.
Mask extract_core(const Hypercube& cube, Mask I, const Rational& s);

struct CoreReport {
  int size = 0;
  std::uint64_t count = 0;
  std::vector<Mask> witnesses;
  double stability_bound = 0;  // (1/p)^{ε·size/2}
  bool passes = false;
};

/// Budget exhausted before all size-m subsets were scanned.
class CoreBudgetError : public BudgetError {
 public:
  CoreBudgetError(const std::string& what, std::uint64_t partial_count)
      : BudgetError(what), partial_count_(partial_count) {}
  std::uint64_t partial_count() const noexcept { return partial_count_; }

 private:
  std::uint64_t partial_count_;
};

/// Scans every m-subset of the ground set; `budget` caps the subsets examined.
CoreReport enumerate_cores(const Hypercube& cube, const CoreParams& params, int m, std::uint64_t budget);

/// Witnesses as element lists (progression model) or edge lists (graph models).
nlohmann::json to_json(const CoreReport& report, const Model& model);

struct CoreEdgeClass {
  Edge edge;
  int t2 = 0;  // triangles of G* through the edge
  int t1 = 0;  // two-paths through the edge not closed in G*
  int t0 = 0;  // n − 2 − t2 − t1
  Rational gain;           // E_{G*} − E_{G*∖e}
  Rational decomposition;  // (1−p)(t2 + t1 p + t0 p²)
  bool inside_A = false;       // both endpoints have degree ≥ a_threshold
  bool endpoint_in_B = false;  // some endpoint has degree ≥ b_threshold
};

/// Per-edge gain decomposition for the triangle model. Throws
/// PreconditionError for any other pattern.
std::vector<CoreEdgeClass> classify_core_edges(const SubgraphModel& model, const Graph& core, double a_threshold,
                                               double b_threshold);

nlohmann::json to_json(const CoreCheck& check);
nlohmann::json to_json(const CoreEdgeClass& c);

}  // namespace uptail
