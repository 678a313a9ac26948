#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "uptail/ap.hpp"
#include "uptail/errors.hpp"
#include "uptail/variational.hpp"

using namespace uptail;

namespace {

SubgraphModel triangles(int n, Rational p) { return {graphs::complete(3), n, std::move(p)}; }

std::int64_t triangle_count(std::uint64_t mask, int n) {
  return static_cast<std::int64_t>(oracle::embeddings(graphs::complete(3), oracle::graph_of_mask(mask, n)) / 6);
}

std::int64_t ap_count_of_mask(std::uint64_t mask, int N, int k) {
  std::vector<int> I;
  for (int i = 0; i < N; ++i)
    if ((mask >> i) & 1U) I.push_back(i + 1);
  return oracle::aps_by_subsets(I, k);
}

// Smallest |S| with E[f | S present] ≥ target, over all 2^N sets.
int min_feasible_size(const std::function<std::int64_t(std::uint64_t)>& f, int N, const Rational& p,
                      const Rational& target) {
  int best = N + 1;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << N); ++s) {
    const int size = __builtin_popcountll(s);
    if (size >= best) continue;
    if (oracle::conditional_by_outcomes(f, N, p, s, 0) >= target) best = size;
  }
  return best;
}

}  // namespace

TEST_CASE("psi at the listed points") {
  CHECK(psi(3, 1, 1.5, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(psi(3, 1, 1.5, 1) == doctest::Approx(std::sqrt(0.5) / 1.5).epsilon(1e-14));
  CHECK(psi(3, 1, 1.5, 1) == doctest::Approx(0.4714).epsilon(1e-4));
  // xδc/r integral: the hub term collapses to xδ/r.
  for (int r : {3, 4, 5})
    for (double x : {0.25, 0.5, 1.0}) {
      const double delta = 2, c = 2 * r;  // xδc/r = 4x
      CHECK(psi(r, delta, c, x) == doctest::Approx(std::pow(delta * (1 - x), 2.0 / r) / 2 + x * delta / r));
    }
  CHECK_THROWS_AS(psi(3, 1, 0, 0.5), DomainError);
  CHECK_THROWS_AS(psi(3, 1, kInfinity, 0.5), DomainError);
  CHECK(psi_limit(3, 1, kInfinity, 1) == doctest::Approx(1.0 / 3));
  CHECK(psi_limit(3, 1, 0, 0) == doctest::Approx(0.5));
  CHECK(psi_limit(3, 1, 0, 0.1) == kInfinity);
}

TEST_CASE("phi at the listed points") {
  auto m = phi_clique_hub(3, 1, kInfinity);
  CHECK(m.phi == doctest::Approx(1.0 / 3));
  CHECK(m.argmins == std::vector<double>{1.0});
  CHECK(argmin_label(m) == "hub");

  m = phi_clique_hub(3, 1, 3);
  CHECK(m.phi == doctest::Approx(1.0 / 3));
  CHECK(m.x_star == 1.0);
  CHECK(m.argmins == std::vector<double>{1.0});

  m = phi_clique_hub(3, 3.375, kInfinity);
  CHECK(m.phi == doctest::Approx(1.125));
  CHECK(m.argmins == std::vector<double>{0.0, 1.0});
  CHECK(argmin_label(m) == "tie");

  m = phi_clique_hub(4, 2, 0);
  CHECK(m.phi == doctest::Approx(std::sqrt(2.0) / 2));
  CHECK(argmin_label(m) == "clique");
}

TEST_CASE("phi minimises psi: candidates attain it and a dense grid never goes below") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ud(0.01, 5), uc(0.01, 10);
  for (int r : {3, 4, 5}) {
    for (int trial = 0; trial < 200; ++trial) {
      const double delta = ud(rng), c = uc(rng);
      const auto m = phi_clique_hub(r, delta, c);
      // ψ jumps up just right of x*, so approach it from the left.
      auto left = [&](double x) { return std::min(psi(r, delta, c, x), x > 0 ? psi(r, delta, c, std::nextafter(x, 0.0)) : kInfinity); };
      for (double x : m.argmins) CHECK(std::abs(left(x) - m.phi) <= 1e-9);
      double grid = kInfinity;
      for (int i = 0; i <= 4000; ++i) grid = std::min(grid, psi(r, delta, c, i / 4000.0));
      CHECK(grid >= m.phi - 1e-9);
      // With x* added to the grid the minimum is attained exactly.
      grid = std::min(grid, left(m.x_star));
      CHECK(grid == doctest::Approx(m.phi).epsilon(1e-12));
    }
  }
}

TEST_CASE("phi approaches its limits in c") {
  for (int r : {3, 4, 5})
    for (double delta = 0.25; delta <= 5; delta += 0.25) {
      const double small = std::pow(delta, 2.0 / r) / 2;
      CHECK(std::abs(phi_clique_hub(r, delta, 1e-6).phi - small) <= 1e-3);
      CHECK(std::abs(phi_clique_hub(r, delta, 1e6).phi - std::min(small, delta / r)) <= 1e-3);
    }
}

TEST_CASE("clique/hub crossover") {
  CHECK(std::abs(clique_hub_crossover(3) - 3.375) <= 1e-12);
  CHECK(std::abs(clique_hub_crossover_bisection(3) - 3.375) <= 1e-9);
  for (int r : {4, 5, 6}) CHECK(clique_hub_crossover_bisection(r) == doctest::Approx(clique_hub_crossover(r)));
  CHECK(argmin_label(phi_clique_hub(3, 3.3, kInfinity)) == "hub");
  CHECK(argmin_label(phi_clique_hub(3, 3.5, kInfinity)) == "clique");
}

TEST_CASE("Poisson rate") {
  CHECK(poisson_rate(0, 5) == 0);
  CHECK(poisson_rate(1, 1) == doctest::Approx(2 * std::log(2.0) - 1));
  CHECK(poisson_rate(std::exp(1.0) - 1, 1) == doctest::Approx(1.0));
}

TEST_CASE("independence polynomial and its root") {
  CHECK(independence_polynomial(graphs::complete(4)) == std::vector<std::uint64_t>{1, 4});
  CHECK(independence_polynomial(graphs::cycle(4)) == std::vector<std::uint64_t>{1, 4, 2});
  CHECK(independence_polynomial(graphs::cycle(5)) == std::vector<std::uint64_t>{1, 5, 5});
  CHECK(independence_root(graphs::complete(3), 1) == doctest::Approx(1.0 / 3));
  // C_4: 1 + 4θ + 2θ² = 2.
  CHECK(independence_root(graphs::cycle(4), 1) == doctest::Approx((-4 + std::sqrt(24.0)) / 4));
  const auto rr = regular_rate(graphs::complete(3), 1, kInfinity);
  CHECK(rr.rate == doctest::Approx(1.0 / 3));
  CHECK(regular_rate(graphs::complete(3), 1, 0).rate == doctest::Approx(0.5));
  CHECK_THROWS_AS(regular_rate(graphs::path(3), 1, 0), PreconditionError);
}

TEST_CASE("clique construction") {
  const auto w = build_construction(ConstructionKind::clique, triangles(100, Rational(3, 10)), Rational(728, 1000));
  REQUIRE(w.graph);
  CHECK(w.graph->size() == 36 * 35 / 2);
  CHECK(w.graph->degree(35) == 35);
  CHECK(w.graph->degree(36) == 0);
  CHECK(w.log_cost == doctest::Approx(630 * std::log(10.0 / 3)));
  CHECK(w.feasible);
  CHECK_THROWS_AS(build_construction(ConstructionKind::clique, triangles(5, Rational(9, 10)), Rational(5)),
                  InfeasibleError);
}

TEST_CASE("interval construction is the shortest feasible initial segment") {
  const ApModel model{100, 3, Rational(1, 10)};
  const auto w = build_construction(ConstructionKind::interval, model, Rational(1));
  const Rational p3 = Rational(1, 1000);
  const Rational need = p3 * oracle::aps_by_subsets([] {
    std::vector<int> v(100);
    std::iota(v.begin(), v.end(), 1);
    return v;
  }(), 3) / (1 - p3);
  int m = 0;
  for (;; ++m) {
    std::vector<int> seg(static_cast<std::size_t>(m));
    std::iota(seg.begin(), seg.end(), 1);
    if (oracle::aps_by_subsets(seg, 3) >= need) break;
  }
  CHECK(static_cast<int>(w.elements.size()) == m);
  CHECK(w.elements.front() == 1);
  CHECK(w.feasible);
  CHECK_THROWS_AS(build_construction(ConstructionKind::interval, ApModel{5, 3, Rational(1, 2)}, Rational(50)),
                  InfeasibleError);
}

TEST_CASE("hub construction") {
  // ℓ = 1·20·(1/4)²/3 < 1: a star of ⌊ℓ^{1/2}·19⌋ edges.
  const auto star = build_construction(ConstructionKind::hub, triangles(20, Rational(1, 4)), Rational(1));
  REQUIRE(star.graph);
  const double ell = 20.0 / 16 / 3;
  CHECK(star.graph->size() == static_cast<int>(std::floor(std::sqrt(ell) * 19)));
  CHECK(star.graph->degree(0) == star.graph->size());

  // ℓ = 3·30·(1/2)²/3 = 7.5: U_2 = {1..7} complete to the other 22 vertices.
  const auto hub = build_construction(ConstructionKind::hub, triangles(30, Rational(1, 2)), Rational(3));
  REQUIRE(hub.graph);
  for (int a = 1; a <= 7; ++a) CHECK(hub.graph->degree(a) == 22);
  CHECK(hub.graph->degree(0) == static_cast<int>(std::floor(std::sqrt(0.5) * 22)));
  CHECK(hub.graph->size() == 7 * 22 + hub.graph->degree(0));

  CHECK_THROWS_AS(build_construction(ConstructionKind::hub, SubgraphModel{graphs::cycle(4), 8, Rational(1, 2)},
                                     Rational(1)),
                  PreconditionError);
  CHECK_THROWS_AS(build_construction(ConstructionKind::interval, triangles(5, Rational(1, 2)), Rational(1)),
                  PreconditionError);
}

TEST_CASE("brute-force Phi on the listed instances") {
  auto w = phi_bruteforce(triangles(4, Rational(1, 2)), Rational(9, 10), 1000);
  REQUIRE(w.graph);
  CHECK(w.graph->size() == 2);
  CHECK(w.log_cost == doctest::Approx(2 * std::log(2.0)));
  CHECK(w.feasible);
  const auto f = [](std::uint64_t y) { return triangle_count(y, 4); };
  CHECK(min_feasible_size(f, 6, Rational(1, 2), Rational(19, 10) / 2) == 2);
  CHECK(w.conditional_mean == oracle::conditional_by_outcomes(f, 6, Rational(1, 2), edge_mask(*w.graph), 0));

  w = phi_bruteforce(triangles(4, Rational(1, 2)), Rational(0), 1000);
  CHECK(w.graph->size() == 0);
  CHECK(w.log_cost == 0);

  const ApModel ap{5, 3, Rational(1, 2)};
  w = phi_bruteforce(ap, Rational(3), 1000);
  CHECK(conditional_expectation_ap(ap, {1, 2, 3}) == Rational(9, 4));
  const auto g = [](std::uint64_t y) { return ap_count_of_mask(y, 5, 3); };
  CHECK(static_cast<int>(w.elements.size()) == min_feasible_size(g, 5, Rational(1, 2), Rational(2)));
  CHECK(w.feasible);
  CHECK(w.log_cost <= 3 * std::log(2.0) + 1e-12);

  w = phi_bruteforce(triangles(4, Rational(1, 2)), Rational(100), 1000);
  CHECK_FALSE(w.feasible);
  CHECK(w.log_cost == kInfinity);
  CHECK(to_json(w)["log_cost"] == "inf");
}

TEST_CASE("brute-force budget errors") {
  try {
    phi_bruteforce(triangles(5, Rational(1, 2)), Rational(7), 20);
    FAIL("expected a budget error");
  } catch (const SearchBudgetError& e) {
    CHECK_FALSE(e.best().has_value());
  }
  CHECK_THROWS_AS(phi_subcube_bruteforce(triangles(4, Rational(1, 2)), Rational(1), 10), BudgetError);
}

TEST_CASE("subcube search on induced path counts matches a 3^N scan") {
  for (int len : {3, 4}) {
    const Graph P = graphs::path(len);
    const auto f = [&](std::uint64_t y) { return oracle::induced_copies(P, oracle::graph_of_mask(y, 4)); };
    for (const Rational p : {Rational(1, 2), Rational(1, 3)}) {
      const InducedSubgraphModel model{P, 4, p};
      const Rational mean = oracle::conditional_by_outcomes(f, 6, p, 0, 0);
      const double c1 = -std::log(to_double(p)), c0 = -std::log(to_double(1 - p));
      for (const Rational delta : {Rational(1, 6), Rational(1, 4), Rational(1, 2), Rational(1), Rational(3)}) {
        double best = kInfinity;
        for (int code = 0; code < 729; ++code) {
          std::uint64_t ones = 0, zeros = 0;
          int c = code;
          for (int i = 0; i < 6; ++i, c /= 3) {
            if (c % 3 == 1) ones |= 1U << i;
            if (c % 3 == 2) zeros |= 1U << i;
          }
          const double cost = __builtin_popcountll(ones) * c1 + __builtin_popcountll(zeros) * c0;
          if (cost < best && oracle::conditional_by_outcomes(f, 6, p, ones, zeros) >= (1 + delta) * mean) best = cost;
        }
        const auto w = phi_subcube_bruteforce(model, delta, 1000);
        CHECK(std::isinf(w.log_cost) == std::isinf(best));
        if (!std::isinf(best)) CHECK(w.log_cost == doctest::Approx(best));
        if (w.feasible) {
          std::uint64_t ones = 0, zeros = 0;
          for (std::size_t i = 0; i < w.elements.size(); ++i)
            (w.bits[i] ? ones : zeros) |= std::uint64_t{1} << (w.elements[i] - 1);
          CHECK(w.conditional_mean == oracle::conditional_by_outcomes(f, 6, p, ones, zeros));
        }
      }
    }
  }
  // One present edge lifts the induced P_3 count from 3/2 to 7/4.
  const auto w = phi_subcube_bruteforce(InducedSubgraphModel{graphs::path(3), 4, Rational(1, 2)}, Rational(1, 6), 1000);
  CHECK(w.elements == std::vector<int>{1});
  CHECK(w.bits == std::vector<int>{1});
  CHECK(w.conditional_mean == Rational(7, 4));
}

TEST_CASE("subcube search never loses to subsets and ties on monotone models") {
  std::vector<Model> models = {triangles(4, Rational(1, 2)), triangles(4, Rational(1, 3)),
                               ApModel{6, 3, Rational(1, 2)}, ApModel{7, 3, Rational(2, 5)},
                               InducedSubgraphModel{graphs::path(3), 4, Rational(1, 3)},
                               InducedSubgraphModel{graphs::path(4), 4, Rational(1, 2)}};
  for (const auto& model : models)
    for (const Rational delta : {Rational(1, 10), Rational(1, 2), Rational(1), Rational(3)}) {
      const auto subset = phi_bruteforce(model, delta, 1 << 20);
      const auto cube = phi_subcube_bruteforce(model, delta, 1 << 20);
      CHECK(cube.log_cost <= subset.log_cost + 1e-12);
      if (to_hypercube(model).monotone()) {
        CHECK(std::isinf(cube.log_cost) == std::isinf(subset.log_cost));
        if (!std::isinf(subset.log_cost)) CHECK(cube.log_cost == doctest::Approx(subset.log_cost));
        CHECK(std::count(cube.bits.begin(), cube.bits.end(), 0) == 0);
      }
    }
}

TEST_CASE("constructions are feasible where flagged and dominate brute force") {
  for (int n = 3; n <= 5; ++n)
    for (const Rational p : {Rational(1, 2), Rational(1, 3), Rational(3, 4)})
      for (const Rational delta : {Rational(1, 4), Rational(1), Rational(2)}) {
        const auto model = triangles(n, p);
        const Rational target = (1 + delta) * (n * (n - 1) * (n - 2) / 6) * pow(p, 3);
        const auto best = phi_bruteforce(model, delta, 1 << 20);
        for (auto kind : {ConstructionKind::clique, ConstructionKind::hub}) {
          std::optional<Witness> w;
          try {
            w = build_construction(kind, model, delta);
          } catch (const InfeasibleError&) {
            continue;
          }
          CHECK(w->feasible == (oracle::conditional_by_completion(model.pattern, n, *w->graph, p) >= target));
          if (w->feasible) CHECK(best.log_cost <= w->log_cost + 1e-12);
        }
      }
  for (int N = 3; N <= 12; ++N)
    for (const Rational delta : {Rational(1, 2), Rational(2)}) {
      const ApModel model{N, 3, Rational(1, 2)};
      std::optional<Witness> w;
      try {
        w = build_construction(ConstructionKind::interval, model, delta);
      } catch (const InfeasibleError&) {
        continue;
      }
      CHECK(w->feasible);
      CHECK(phi_bruteforce(model, delta, 1 << 20).log_cost <= w->log_cost + 1e-12);
    }
}

TEST_CASE("upper bound from Phi dominates the exact tail") {
  const auto model = triangles(4, Rational(1, 2));
  const auto cube = to_hypercube(model);
  const auto phi = phi_bruteforce(model, Rational(19, 10), 1 << 20);
  const auto ub = ut_upper_bound(cube, 0.9, phi.log_cost);
  CHECK_FALSE(ub.degenerate);
  CHECK(ub.value >= -std::log(23.0 / 64));
  const auto far = ut_upper_bound(cube, 0.9, phi_bruteforce(model, Rational(50), 1 << 20).log_cost);
  CHECK(far.value == kInfinity);
  CHECK(ut_upper_bound(cube, 100, 0).degenerate);
}
