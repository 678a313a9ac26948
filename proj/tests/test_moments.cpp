#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "uptail/ap.hpp"
#include "uptail/combinatorics.hpp"
#include "uptail/errors.hpp"
#include "uptail/moments.hpp"

using namespace uptail;

namespace {

SubgraphModel triangles(int n, Rational p) { return {graphs::complete(3), n, std::move(p)}; }

// Σ over all s-subsets of edges that are connected under pairwise
// intersection (checked with union-find) of p^{|union|}.
Rational clusters_by_subsets(const Hypergraph& H, const Rational& p, int s) {
  const int E = static_cast<int>(H.edges.size());
  Rational total = 0;
  if (s > E) return total;
  for_each_combination(E, s, [&](const std::vector<int>& idx) {
    UnionFind uf(s);
    std::vector<std::uint64_t> masks;
    for (int i : idx) {
      std::uint64_t m = 0;
      for (int v : H.edges[static_cast<std::size_t>(i)]) m |= std::uint64_t{1} << v;
      masks.push_back(m);
    }
    for (int a = 0; a < s; ++a)
      for (int b = a + 1; b < s; ++b)
        if (masks[static_cast<std::size_t>(a)] & masks[static_cast<std::size_t>(b)]) uf.unite(a, b);
    for (int a = 1; a < s; ++a)
      if (uf.find(a) != uf.find(0)) return;
    std::uint64_t u = 0;
    for (auto m : masks) u |= m;
    total += pow(p, static_cast<unsigned>(std::popcount(u)));
  });
  return total;
}

}  // namespace

TEST_CASE("exact distribution of triangles in G(4, 1/2)") {
  const auto dist = exact_distribution(Model{triangles(4, Rational(1, 2))});
  CHECK(dist.N == 6);
  CHECK(dist.tail(1) == Rational(23, 64));
  CHECK(dist.pmf.at(4) == Rational(1, 64));
  CHECK(dist.mean() == Rational(1, 2));
  Rational sum = 0;
  for (const auto& [x, pr] : dist.pmf) {
    CHECK(pr > 0);
    sum += pr;
  }
  CHECK(sum == 1);
  CHECK(dist.tail(Rational(1, 3)) == Rational(23, 64));
  CHECK(dist.tail(0) == 1);
  CHECK(to_json(dist)["4"] == "1/64");
  CHECK_THROWS_AS(exact_distribution(Model{triangles(8, Rational(1, 2))}), BudgetError);
}

TEST_CASE("factorial moments") {
  const auto cube = to_hypercube(triangles(4, Rational(1, 2)));
  const auto fm = factorial_moments(cube, 3);
  CHECK(fm.from_distribution[0] == 1);
  CHECK(fm.from_distribution[1] == Rational(1, 2));
  CHECK(fm.from_distribution[2] == Rational(3, 8));
  REQUIRE(fm.tuple_sum);
  CHECK(*fm.tuple_sum == fm.from_distribution);
  CHECK_FALSE(factorial_moments(cube, 3, 2).tuple_sum.has_value());
  CHECK_THROWS_AS(tuple_sum_moments(cube, 2, 3), BudgetError);
}

TEST_CASE("tuple-sum moments match the distribution") {
  std::vector<Model> models = {triangles(4, Rational(1, 3)),
                               triangles(5, Rational(1, 2)),
                               SubgraphModel{graphs::cycle(4), 5, Rational(2, 5)},
                               SubgraphModel{graphs::path(3), 5, Rational(1, 4)},
                               ApModel{10, 3, Rational(1, 2)},
                               ApModel{15, 3, Rational(1, 5)},
                               ApModel{12, 4, Rational(3, 4)},
                               InducedSubgraphModel{graphs::path(3), 5, Rational(1, 2)}};
  for (const auto& model : models) {
    const auto cube = to_hypercube(model);
    REQUIRE(cube.dimension() <= 15);
    const auto fm = factorial_moments(cube, 4, 50'000'000);
    REQUIRE(fm.tuple_sum);
    CHECK(*fm.tuple_sum == fm.from_distribution);
    CHECK(fm.from_distribution[1] == cube.mean());
  }
}

TEST_CASE("Markov bound via factorial moments") {
  const auto dist = exact_distribution(Model{triangles(4, Rational(1, 2))});
  const auto b = poisson_markov_bound(dist, 1, 1);
  CHECK(b.bound == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(b.exact_neg_log_tail == doctest::Approx(-std::log(23.0 / 64)).epsilon(1e-12));
  CHECK(b.holds);
  CHECK(b.bound <= b.exact_neg_log_tail);
  CHECK_THROWS_AS(poisson_markov_bound(dist, 1, 0), DomainError);
  CHECK_THROWS_AS(poisson_markov_bound(dist, Rational(1, 2), 1), DomainError);

  // Every (δ, t) in range on small instances.
  std::vector<Model> models = {triangles(4, Rational(1, 2)), triangles(5, Rational(1, 3)),
                               triangles(5, Rational(3, 4)), ApModel{12, 3, Rational(1, 2)},
                               ApModel{15, 3, Rational(2, 5)}, SubgraphModel{graphs::cycle(4), 5, Rational(1, 2)}};
  for (const auto& model : models) {
    const auto d = exact_distribution(model);
    for (const Rational delta : {Rational(0), Rational(1, 4), Rational(1), Rational(2), Rational(5)}) {
      const Rational y = (1 + delta) * d.mean();
      for (int t = 1; Rational(t) <= y; ++t) {
        const auto mb = poisson_markov_bound(d, delta, t);
        CHECK(mb.holds);
        CHECK(mb.bound <= mb.exact_neg_log_tail + 1e-12);
      }
    }
  }
}

TEST_CASE("log of a rising product") {
  const auto zero = falling_factorial_log(3.5, 0);
  CHECK(zero.main == 0);
  CHECK(zero.lambda == 0);
  const auto one = falling_factorial_log(1, 1);
  CHECK(one.lambda == doctest::Approx(1 - std::log(2.0)).epsilon(1e-12));
  CHECK(one.main == doctest::Approx(2 * std::log(2.0) - 1).epsilon(1e-12));
  const auto ten = falling_factorial_log(10, 5);
  CHECK(ten.lambda >= 0);
  CHECK(ten.lambda <= 0.6);
  CHECK_THROWS_AS(falling_factorial_log(0, 1), DomainError);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> logx(std::log(0.1), std::log(1e4));
  std::uniform_int_distribution<int> tdist(0, 1000);
  int bad = 0;
  for (int i = 0; i < 10'000; ++i) {
    const double x = std::exp(logx(rng));
    const int t = tdist(rng);
    const auto r = falling_factorial_log(x, t);
    if (r.lambda < -1e-12 * (1 + std::abs(r.main)) || r.lambda > (t + 1) / x + 1e-12 * (1 + std::abs(r.main)))
      ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("stability of the upper tail") {
  const auto cube = to_hypercube(triangles(4, Rational(1, 2)));
  for (int ell = 1; ell <= 3; ++ell)
    for (const auto& [delta, eps] : std::vector<std::pair<Rational, Rational>>{
             {Rational(1), Rational(1, 2)}, {Rational(1), Rational(1, 10)}, {Rational(2), Rational(1)},
             {Rational(1, 2), Rational(1, 4)}, {Rational(3), Rational(1, 5)}}) {
      const auto s = stability_check(cube, delta, eps, ell);
      CHECK(s.holds);
      CHECK(s.lhs <= s.rhs);
      CHECK(s.rhs == pow((1 + delta - eps) / (1 + delta), static_cast<unsigned>(ell)));
    }
  // 𝓘 recounted on graphs: ≤ 3 edges with E_I ≥ (1+δ−ε)E = 3/4.
  const auto s = stability_check(cube, 1, Rational(1, 2), 1);
  std::size_t family = 0;
  for (std::uint64_t m = 0; m < 64; ++m)
    if (std::popcount(m) <= 3 &&
        oracle::conditional_by_completion(graphs::complete(3), 4, oracle::graph_of_mask(m, 4), Rational(1, 2)) >=
            Rational(3, 4))
      ++family;
  CHECK(s.family_size == family);
  // Every graph with X ≥ 1 contains a triangle, which is in 𝓘.
  CHECK(s.lhs == 0);
  CHECK_THROWS_AS(stability_check(to_hypercube(InducedSubgraphModel{graphs::path(3), 4, Rational(1, 2)}), 1,
                                  Rational(1, 2), 1),
                  PreconditionError);
  CHECK_THROWS_AS(stability_check(cube, 1, Rational(1, 2), 0), DomainError);
}

TEST_CASE("dependency-graph cluster census") {
  const auto H = ap_hypergraph(5, 3);
  CHECK(H.edges.size() == 4);
  CHECK(H.uniform());
  for (const Rational p : {Rational(1, 2), Rational(1, 3)}) {
    const auto c = dependency_clusters(H, p, 6, 1 << 20);
    CHECK(c.complete);
    CHECK(c.by_size.at(1) == 4 * pow(p, 3));
    CHECK(c.by_size.at(2) == 4 * pow(p, 4) + 2 * pow(p, 5));
    CHECK(c.by_size.at(5) == 0);
    CHECK(c.by_size.at(6) == 0);
  }
  // Against subset enumeration with union-find connectivity.
  std::vector<Hypergraph> hs = {ap_hypergraph(9, 3), ap_hypergraph(10, 4), copy_hypergraph(graphs::complete(3), 5),
                                copy_hypergraph(graphs::path(3), 4)};
  for (const auto& h : hs)
    for (const Rational p : {Rational(1, 2), Rational(2, 7)}) {
      const auto c = dependency_clusters(h, p, 4, 1 << 22);
      CHECK(c.complete);
      for (int s = 1; s <= 4; ++s) CHECK(c.by_size.at(s) == clusters_by_subsets(h, p, s));
    }
  // (s,k,m) refinement sums back to D_s.
  const auto tri = copy_hypergraph(graphs::complete(3), 5);
  CHECK(tri.graph_order == 5);
  const auto c = dependency_clusters(tri, Rational(1, 2), 3, 1 << 22);
  for (int s = 1; s <= 3; ++s) {
    Rational sum = 0;
    for (const auto& [key, v] : c.by_size_km)
      if (std::get<0>(key) == s) sum += v;
    CHECK(sum == c.by_size.at(s));
  }
  // Two triangles sharing an edge: 4 vertices, 5 edges; C(5,4)·6 = 30 such pairs (unordered).
  CHECK(c.by_size_km.at({2, 4, 5}) == Rational(30) * pow(Rational(1, 2), 5));
  CHECK(census_csv(c).rfind("s,k,m,expectation\n", 0) == 0);

  const auto partial = dependency_clusters(ap_hypergraph(12, 3), Rational(1, 2), 5, 100);
  CHECK_FALSE(partial.complete);
}

TEST_CASE("AP cluster union counts") {
  CHECK(ap_cluster_union_count(5, 3, 3) == 4);
  CHECK(ap_cluster_union_count(5, 3, 4) == 4);
  CHECK(ap_cluster_union_count(5, 3, 2) == 0);
  CHECK(ap_cluster_union_count(5, 3, 5) == 1);  // {1..5} is covered by 1-2-3, 3-4-5 and friends
  CHECK_THROWS_AS(ap_cluster_union_count(20, 3, 10, 1000), BudgetError);

  for (int k = 3; k <= 4; ++k)
    for (int N = k; N <= 12; ++N) {
      std::vector<std::int64_t> a;
      for (int m = 0; m <= N; ++m) a.push_back(ap_cluster_union_count(N, k, m));
      CHECK(a[static_cast<std::size_t>(k)] == static_cast<std::int64_t>(enumerate_aps(N, k).size()));
      for (int m = k + 1; m <= N; ++m) {
        CHECK(am_recurrence_holds(a, N, k, m));
        if (am_upper_condition(N, k, m)) CHECK(static_cast<double>(a[static_cast<std::size_t>(m)]) <= am_upper_bound(N, k, m));
      }
    }
}

TEST_CASE("hypergeometric Janson") {
  std::vector<std::vector<int>> pairs;
  for_each_combination(4, 2, [&](const std::vector<int>& c) { pairs.push_back(c); });
  const auto j = hypergeometric_janson_check(pairs, 4, 2, Rational(1, 2));
  // Each 2-subset contains exactly one pair, so Z = 1 always and μ = 6·(1/2)² = 3/2.
  CHECK(j.mu == Rational(3, 2));
  CHECK(j.exact_prob == 0);
  CHECK(j.holds);
  CHECK(hypergeometric_janson_check(pairs, 4, 2, Rational(1, 3)).exact_prob == 1);
  // 6 pairs, each meeting 4 others; unions have 3 elements.
  CHECK(j.Delta == 24 * Rational(1, 8));

  const auto boundary = hypergeometric_janson_check(pairs, 4, 2, 1);
  CHECK(boundary.exact_prob == 0);
  CHECK(boundary.bound == doctest::Approx(2 * std::exp(-2.25 / (2 * (1.5 + 3)))));

  const auto empty = hypergeometric_janson_check({}, 6, 3, Rational(1, 2));
  CHECK(empty.mu == 0);
  CHECK(empty.holds);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int t = 6 + trial % 7;
    std::vector<std::vector<int>> fam;
    for (int b = 0; b < 8; ++b) {
      std::vector<int> set;
      for (int x = 0; x < t; ++x)
        if (rng() % 3 == 0) set.push_back(x);
      if (!set.empty()) fam.push_back(set);
    }
    const int s = 1 + static_cast<int>(rng() % static_cast<unsigned>(t));
    CHECK(hypergeometric_janson_check(fam, t, s, Rational(1 + trial % 4, 4)).holds);
  }
  CHECK_THROWS_AS(hypergeometric_janson_check(pairs, 4, 5, 1), DomainError);
}
