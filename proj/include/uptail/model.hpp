#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "uptail/graph.hpp"
#include "uptail/rational.hpp"

namespace uptail {

/// Number of copies of `pattern` in G(n,p).
struct SubgraphModel {
  Graph pattern;
  int n = 0;
  Rational p;
};

/// Number of k-term progressions in the p-random subset of {1..N}.
struct ApModel {
  int N = 0;
  int k = 3;
  Rational p;
};

/// Number of vertex subsets of G(n,p) inducing a copy of `pattern`.
/// Not monotone; used to exercise subcube conditioning.
struct InducedSubgraphModel {
  Graph pattern;
  int n = 0;
  Rational p;
};

using Model = std::variant<SubgraphModel, ApModel, InducedSubgraphModel>;

const Rational& model_p(const Model& m);
/// Number of Bernoulli coordinates: C(n,2) for graph models, N for APs.
int model_coordinates(const Model& m);
void validate(const Model& m);
std::string model_name(const Model& m);

using Mask = std::uint64_t;

/// X = sum over terms of 1[ones ⊆ Y and zeros ∩ Y = ∅] on {0,1}^N with
/// i.i.d. Bernoulli(p) coordinates, N ≤ 64.
class Hypercube {
 public:
  struct Term {
    Mask ones = 0;
    Mask zeros = 0;
  };

  Hypercube(int N, Rational p, std::vector<Term> terms);

  int dimension() const noexcept { return N_; }
  const Rational& p() const noexcept { return p_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool monotone() const noexcept { return monotone_; }
  /// Largest number of ones in a term (the polynomial degree for monotone X).
  int degree() const noexcept { return degree_; }

  std::uint64_t evaluate(Mask y) const;
  Rational mean() const;
  /// E[X | Y_i = 1 on `ones`, Y_i = 0 on `zeros`].
  Rational conditional(Mask ones, Mask zeros = 0) const;
  /// E_ones[X] - E_{ones \ {i}}[X] for i in `ones`.
  Rational gain(Mask ones, int i) const;
  /// Maximum value of X over {0,1}^N (all-ones input when monotone).
  std::uint64_t max_value() const;
  Mask full_mask() const noexcept { return N_ == 64 ? ~Mask{0} : (Mask{1} << N_) - 1; }

  /// p^a (1-p)^b, cached.
  const Rational& weight(int a, int b) const;

 private:
  int N_;
  Rational p_;
  std::vector<Term> terms_;
  bool monotone_ = true;
  int degree_ = 0;
  std::vector<std::vector<Rational>> weights_;
};

/// Builds the hypercube representation; throws BudgetError if the model has
/// more than 64 coordinates.
Hypercube to_hypercube(const Model& m);

/// Edge mask of a graph on [n] under the pair indexing.
Mask edge_mask(const Graph& g);
Graph graph_from_mask(Mask mask, int n);
/// Element i of {1..N} maps to coordinate i-1.
Mask set_mask(const std::vector<int>& elements);
std::vector<int> mask_elements(Mask mask);

}  // namespace uptail
