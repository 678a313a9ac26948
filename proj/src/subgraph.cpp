#include "uptail/subgraph.hpp"

#include <algorithm>

#include "uptail/combinatorics.hpp"
#include "uptail/embedding.hpp"
#include "uptail/errors.hpp"

namespace uptail {

namespace {

void check_host(const SubgraphModel& model, const Graph& G0) {
  validate(model);
  if (G0.order() != model.n) throw DomainError("conditioning graph must live on [n]");
}

Rational sum_histogram(const std::vector<std::uint64_t>& hist, const Rational& p) {
  Rational total = 0;
  Rational power = 1;
  for (std::size_t j = 0; j < hist.size(); ++j) {
    if (hist[j]) total += power * hist[j];
    power *= p;
  }
  return total;
}

}  // namespace

std::vector<std::uint64_t> missing_edge_histogram(const Graph& pattern, int n, const Graph& G0,
                                                  std::optional<Edge> through) {
  const int v = pattern.order();
  const auto copies = labelled_copies(pattern);
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(pattern.size() + 1), 0);
  auto tally = [&](const std::vector<int>& S) {
    for (const auto& c : copies) {
      int missing = 0;
      bool contains = !through;
      for (const auto& e : c) {
        const int a = S[static_cast<std::size_t>(e.u)];
        const int b = S[static_cast<std::size_t>(e.v)];
        if (!G0.has_edge(a, b)) ++missing;
        if (through && Edge(a, b) == *through) contains = true;
      }
      if (contains) ++hist[static_cast<std::size_t>(missing)];
    }
  };
  if (!through) {
    for_each_combination(n, v, tally);
    return hist;
  }
  // Vertex sets containing both endpoints: choose the other v-2 vertices.
  std::vector<int> others;
  for (int x = 0; x < n; ++x)
    if (x != through->u && x != through->v) others.push_back(x);
  for_each_combination(static_cast<int>(others.size()), v - 2, [&](const std::vector<int>& idx) {
    std::vector<int> S{through->u, through->v};
    for (int i : idx) S.push_back(others[static_cast<std::size_t>(i)]);
    std::sort(S.begin(), S.end());
    tally(S);
  });
  return hist;
}

Rational conditional_expectation_subgraph(const SubgraphModel& model, const Graph& G0) {
  check_host(model, G0);
  return sum_histogram(missing_edge_histogram(model.pattern, model.n, G0), model.p);
}

Rational edge_gain(const SubgraphModel& model, const Graph& G0, Edge e) {
  check_host(model, G0);
  if (!G0.has_edge(e.u, e.v)) throw DomainError("gain is defined for edges of the conditioning graph");
  return (1 - model.p) * sum_histogram(missing_edge_histogram(model.pattern, model.n, G0, e), model.p);
}

std::uint64_t copies_in_complete_graph(const Graph& pattern, int n) {
  return binomial(n, pattern.order()) * labelled_copies(pattern).size();
}

}  // namespace uptail
