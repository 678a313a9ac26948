#include "uptail/model.hpp"

#include <algorithm>
#include <bit>

#include "uptail/ap.hpp"
#include "uptail/combinatorics.hpp"
#include "uptail/embedding.hpp"
#include "uptail/errors.hpp"

namespace uptail {

const Rational& model_p(const Model& m) {
  return std::visit([](const auto& x) -> const Rational& { return x.p; }, m);
}

int model_coordinates(const Model& m) {
  if (const auto* ap = std::get_if<ApModel>(&m)) return ap->N;
  const int n = std::visit(
      [](const auto& x) {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, ApModel>) return 0;
        else return x.n;
      },
      m);
  return n * (n - 1) / 2;
}

void validate(const Model& m) {
  if (!in_open_unit_interval(model_p(m))) throw DomainError("p must lie strictly between 0 and 1");
  std::visit(
      [](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ApModel>) {
          if (x.k < 2) throw DomainError("progression length k must be at least 2");
          if (x.N < 0) throw DomainError("N must be nonnegative");
        } else {
          if (x.pattern.size() == 0) throw DomainError("pattern graph has no edges");
          if (x.pattern.has_isolated_vertex()) throw DomainError("pattern graph has an isolated vertex");
          if (x.n < 0) throw DomainError("n must be nonnegative");
        }
      },
      m);
}

std::string model_name(const Model& m) {
  if (const auto* ap = std::get_if<ApModel>(&m))
    return std::to_string(ap->k) + "-APs in [" + std::to_string(ap->N) + "]";
  if (const auto* s = std::get_if<SubgraphModel>(&m))
    return "copies of " + to_graph6(s->pattern) + " in G(" + std::to_string(s->n) + ",p)";
  const auto& ind = std::get<InducedSubgraphModel>(m);
  return "induced copies of " + to_graph6(ind.pattern) + " in G(" + std::to_string(ind.n) + ",p)";
}

Hypercube::Hypercube(int N, Rational p, std::vector<Term> terms)
    : N_(N), p_(std::move(p)), terms_(std::move(terms)) {
  if (N < 0 || N > 64) throw BudgetError("hypercube engine supports at most 64 coordinates");
  for (const auto& t : terms_) {
    if (t.zeros) monotone_ = false;
    degree_ = std::max(degree_, std::popcount(t.ones));
  }
  weights_.assign(static_cast<std::size_t>(N + 1), std::vector<Rational>(static_cast<std::size_t>(N + 1)));
  std::vector<Rational> pp(static_cast<std::size_t>(N + 1)), qq(static_cast<std::size_t>(N + 1));
  pp[0] = 1;
  qq[0] = 1;
  for (int i = 1; i <= N; ++i) {
    pp[static_cast<std::size_t>(i)] = pp[static_cast<std::size_t>(i - 1)] * p_;
    qq[static_cast<std::size_t>(i)] = qq[static_cast<std::size_t>(i - 1)] * (1 - p_);
  }
  for (int a = 0; a <= N; ++a)
    for (int b = 0; a + b <= N; ++b)
      weights_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          pp[static_cast<std::size_t>(a)] * qq[static_cast<std::size_t>(b)];
}

const Rational& Hypercube::weight(int a, int b) const {
  return weights_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

std::uint64_t Hypercube::evaluate(Mask y) const {
  std::uint64_t x = 0;
  for (const auto& t : terms_)
    if ((t.ones & ~y) == 0 && (t.zeros & y) == 0) ++x;
  return x;
}

Rational Hypercube::mean() const { return conditional(0, 0); }

Rational Hypercube::conditional(Mask ones, Mask zeros) const {
  // Histogram by (free ones, free zeros) and sum once.
  std::vector<std::vector<std::uint64_t>> hist(static_cast<std::size_t>(N_ + 1),
                                               std::vector<std::uint64_t>(static_cast<std::size_t>(N_ + 1), 0));
  for (const auto& t : terms_) {
    if ((t.ones & zeros) || (t.zeros & ones)) continue;
    ++hist[static_cast<std::size_t>(std::popcount(t.ones & ~ones))]
          [static_cast<std::size_t>(std::popcount(t.zeros & ~zeros))];
  }
  Rational total = 0;
  for (int a = 0; a <= N_; ++a)
    for (int b = 0; a + b <= N_; ++b)
      if (auto c = hist[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])
        total += weight(a, b) * c;
  return total;
}

Rational Hypercube::gain(Mask ones, int i) const {
  const Mask bit = Mask{1} << i;
  return conditional(ones, 0) - conditional(ones & ~bit, 0);
}

std::uint64_t Hypercube::max_value() const {
  if (monotone_) return evaluate(full_mask());
  if (N_ > 26) throw BudgetError("maximum of a non-monotone count needs 2^N evaluations");
  std::uint64_t best = 0;
  for (Mask y = 0; y <= full_mask(); ++y) best = std::max(best, evaluate(y));
  return best;
}

Mask edge_mask(const Graph& g) {
  const int n = g.order();
  if (n * (n - 1) / 2 > 64) throw BudgetError("graph has more than 64 vertex pairs");
  Mask m = 0;
  for (const auto& e : g.edges()) m |= Mask{1} << pair_index(e.u, e.v, n);
  return m;
}

Graph graph_from_mask(Mask mask, int n) {
  Graph g(n);
  while (mask) {
    int i = std::countr_zero(mask);
    auto e = pair_from_index(i, n);
    g.add_edge(e.u, e.v);
    mask &= mask - 1;
  }
  return g;
}

Mask set_mask(const std::vector<int>& elements) {
  Mask m = 0;
  for (int i : elements) {
    if (i < 1 || i > 64) throw DomainError("element outside 1..64");
    m |= Mask{1} << (i - 1);
  }
  return m;
}

std::vector<int> mask_elements(Mask mask) {
  std::vector<int> out;
  while (mask) {
    out.push_back(std::countr_zero(mask) + 1);
    mask &= mask - 1;
  }
  return out;
}

namespace {

std::vector<Hypercube::Term> graph_terms(const Graph& pattern, int n, bool induced) {
  const int v = pattern.order();
  const auto copies = labelled_copies(pattern);
  std::vector<Hypercube::Term> terms;
  for_each_combination(n, v, [&](const std::vector<int>& S) {
    Mask all_pairs = 0;
    if (induced)
      for (int a = 0; a < v; ++a)
        for (int b = a + 1; b < v; ++b)
          all_pairs |= Mask{1} << pair_index(S[static_cast<std::size_t>(a)], S[static_cast<std::size_t>(b)], n);
    for (const auto& c : copies) {
      Mask ones = 0;
      for (const auto& e : c)
        ones |= Mask{1} << pair_index(S[static_cast<std::size_t>(e.u)], S[static_cast<std::size_t>(e.v)], n);
      terms.push_back({ones, induced ? (all_pairs & ~ones) : Mask{0}});
    }
  });
  return terms;
}

}  // namespace

Hypercube to_hypercube(const Model& m) {
  validate(m);
  const int N = model_coordinates(m);
  if (N > 64) throw BudgetError("model has " + std::to_string(N) + " coordinates; exact engine supports 64");
  if (const auto* ap = std::get_if<ApModel>(&m)) {
    std::vector<Hypercube::Term> terms;
    for (const auto& prog : enumerate_aps(ap->N, ap->k)) terms.push_back({set_mask(prog), 0});
    return Hypercube(N, ap->p, std::move(terms));
  }
  if (const auto* s = std::get_if<SubgraphModel>(&m)) return Hypercube(N, s->p, graph_terms(s->pattern, s->n, false));
  const auto& ind = std::get<InducedSubgraphModel>(m);
  return Hypercube(N, ind.p, graph_terms(ind.pattern, ind.n, true));
}

}  // namespace uptail
