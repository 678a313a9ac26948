#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "uptail/embedding.hpp"
#include "uptail/errors.hpp"
#include "uptail/extremal.hpp"

using namespace uptail;

namespace {

// Plain enumeration of {0,1/2,1}^V, no pruning.
Rational alpha_by_enumeration(const Graph& J) {
  const int v = J.order();
  int total = 1;
  for (int i = 0; i < v; ++i) total *= 3;
  int best = 0;
  for (int code = 0; code < total; ++code) {
    std::vector<int> t(static_cast<std::size_t>(v));
    int c = code, sum = 0;
    for (int i = 0; i < v; ++i) {
      t[static_cast<std::size_t>(i)] = c % 3;
      sum += c % 3;
      c /= 3;
    }
    bool ok = true;
    for (const auto& e : J.edges()) ok = ok && t[e.u] + t[e.v] <= 2;
    if (ok) best = std::max(best, sum);
  }
  return Rational(best, 2);
}

void check_fractional_result(const Graph& J) {
  auto r = fractional_independence(J);
  Rational sum = 0;
  for (const auto& a : r.assignment) {
    CHECK((a == 0 || a == Rational(1, 2) || a == 1));
    sum += a;
  }
  CHECK(sum == r.alpha_star);
  for (const auto& e : J.edges()) CHECK(r.assignment[e.u] + r.assignment[e.v] <= 1);
  CHECK(Rational(static_cast<int>(r.V1.size()), 2) + static_cast<int>(r.V2.size()) == r.alpha_star);
  CHECK(r.alpha_star * 2 >= J.order());
  CHECK(r.alpha_star <= J.order());
  // Cover: vertex-disjoint edges/cycles of J whose union is V1.
  std::vector<int> covered;
  for (const auto& piece : r.cover) {
    REQUIRE(piece.size() >= 2);
    if (piece.size() == 2) {
      CHECK(J.has_edge(piece[0], piece[1]));
    } else {
      for (std::size_t i = 0; i < piece.size(); ++i) CHECK(J.has_edge(piece[i], piece[(i + 1) % piece.size()]));
    }
    covered.insert(covered.end(), piece.begin(), piece.end());
  }
  std::sort(covered.begin(), covered.end());
  CHECK(std::adjacent_find(covered.begin(), covered.end()) == covered.end());
  CHECK(covered == r.V1);
}

Graph random_regular_like(std::mt19937_64& rng) {
  switch (rng() % 5) {
    case 0: return graphs::complete(3 + static_cast<int>(rng() % 2));
    case 1: return graphs::cycle(3 + static_cast<int>(rng() % 3));
    case 2: return graphs::complete(2);
    case 3: return graphs::complete_bipartite(2, 2);
    default: return graphs::perfect_matching(2);
  }
}

}  // namespace

TEST_CASE("fractional independence on named graphs") {
  CHECK(fractional_independence(graphs::complete(3)).alpha_star == Rational(3, 2));
  auto star = fractional_independence(graphs::star(3));
  CHECK(star.alpha_star == 3);
  CHECK(star.assignment[0] == 0);
  for (int leaf = 1; leaf <= 3; ++leaf) CHECK(star.assignment[static_cast<std::size_t>(leaf)] == 1);
  CHECK(fractional_independence(graphs::complete(2)).alpha_star == 1);
  CHECK(fractional_independence(graphs::cycle(5)).alpha_star == Rational(5, 2));
  CHECK(fractional_independence(graphs::path(5)).alpha_star == 3);
  CHECK(fractional_independence(Graph(3)).alpha_star == 3);
}

TEST_CASE("fractional independence agrees with enumeration on all graphs up to 5 vertices") {
  for (int n = 1; n <= 5; ++n) {
    const int pairs = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      Graph J(n);
      for (int i = 0; i < pairs; ++i)
        if ((mask >> i) & 1U) {
          auto e = pair_from_index(i, n);
          J.add_edge(e.u, e.v);
        }
      const auto oracle = alpha_by_enumeration(J);
      REQUIRE(fractional_independence(J).alpha_star == oracle);
      REQUIRE(fractional_independence_bruteforce(J) == oracle);
    }
  }
}

TEST_CASE("fractional independence structure on random graphs") {
  std::mt19937_64 rng(101);
  for (int rep = 0; rep < 150; ++rep) {
    auto J = oracle::random_graph(1 + static_cast<int>(rng() % 7), 0.45, rng);
    CHECK(fractional_independence(J).alpha_star == alpha_by_enumeration(J));
    check_fractional_result(J);
  }
}

TEST_CASE("bound examples") {
  auto cyc = embedding_bound(BoundKind::cycle, graphs::complete(3), graphs::complete(4));
  CHECK(cyc.actual == 24);
  CHECK(cyc.bound == doctest::Approx(std::pow(12.0, 1.5)));
  CHECK(cyc.holds);
  std::mt19937_64 rng(4);
  auto G = oracle::random_graph(7, 0.5, rng);
  auto jor = embedding_bound(BoundKind::jor, graphs::complete(2), G);
  CHECK(jor.actual == static_cast<std::uint64_t>(2 * G.size()));
  REQUIRE(jor.exact_bound.has_value());
  CHECK(*jor.exact_bound == 2 * G.size());
  CHECK(jor.holds);
  BoundExtra extra;
  extra.stars = StarsArgs{Rational(2), 2, std::nullopt};
  auto stars = embedding_bound(BoundKind::stars, graphs::star(2), graphs::complete_bipartite(2, 3), extra);
  CHECK(stars.actual == 12);
  CHECK(*stars.exact_bound == 18);
  CHECK(stars.holds);
}

TEST_CASE("bound preconditions are named") {
  CHECK_THROWS_AS(embedding_bound(BoundKind::cycle, graphs::path(3), graphs::complete(4)), PreconditionError);
  CHECK_THROWS_AS(embedding_bound(BoundKind::edge_regular, graphs::path(3), graphs::complete(4)), PreconditionError);
  CHECK_THROWS_AS(embedding_bound(BoundKind::edge_bipartite, graphs::cycle(4), graphs::complete(4)),
                  PreconditionError);
  BoundExtra extra;
  extra.stars = StarsArgs{Rational(1), 2, std::nullopt};
  CHECK_THROWS_AS(embedding_bound(BoundKind::stars, graphs::star(2), graphs::complete(3), extra), PreconditionError);
  // e_G = 6 > q|V| = 3.
  CHECK_THROWS_AS(embedding_bound(BoundKind::stars, graphs::star(2), graphs::complete_bipartite(2, 3), extra),
                  PreconditionError);
  try {
    embedding_bound(BoundKind::jor, Graph(2), graphs::complete(3));
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("nonempty") != std::string::npos);
  }
}

TEST_CASE("all six bounds hold on random instances") {
  std::mt19937_64 rng(2024);
  const std::vector<Graph> bipartite_js = {graphs::star(2), graphs::star(3), graphs::complete_bipartite(2, 3),
                                           graphs::path(5)};
  for (int rep = 0; rep < 60; ++rep) {
    auto G = oracle::random_graph(3 + static_cast<int>(rng() % 6), 0.2 + 0.6 * (rng() % 100) / 100.0, rng);
    auto H = random_regular_like(rng);
    CHECK(embedding_bound(BoundKind::cycle, graphs::cycle(3 + static_cast<int>(rng() % 4)), G).holds);
    auto J = oracle::random_graph(2 + static_cast<int>(rng() % 4), 0.6, rng).without_isolated_vertices();
    if (J.size() == 0) J = graphs::complete(2);
    CHECK(embedding_bound(BoundKind::jor, J, G).holds);
    CHECK(embedding_bound(BoundKind::edge_regular, H, G).holds);
    CHECK(embedding_bound(BoundKind::edge_bipartite, bipartite_js[rng() % bipartite_js.size()], G).holds);
    BoundExtra bad;
    Graph sub(G.order());
    for (const auto& e : G.edges())
      if (rng() % 2) sub.add_edge(e.u, e.v);
    bad.subgraph = sub;
    CHECK(embedding_bound(BoundKind::bad_edges, H, G, bad).holds);
  }
  // Stars on random bipartite hosts with q at the tightest admissible value.
  for (int rep = 0; rep < 60; ++rep) {
    const int a = 1 + static_cast<int>(rng() % 4), b = 1 + static_cast<int>(rng() % 5);
    Graph G(a + b);
    for (int i = 0; i < a; ++i)
      for (int j = 0; j < b; ++j)
        if (rng() % 3) G.add_edge(i, a + j);
    if (G.size() == 0) continue;
    std::vector<int> U(static_cast<std::size_t>(a));
    std::iota(U.begin(), U.end(), 0);
    BoundExtra extra;
    extra.stars = StarsArgs{Rational(G.size(), b), 2 + static_cast<int>(rng() % 3), U};
    auto report = embedding_bound(BoundKind::stars, graphs::star(2), G, extra);
    CHECK(report.holds);
    CHECK(report.actual == star_embeddings_from(G, U, extra.stars->s));
  }
}

TEST_CASE("q family examples") {
  auto c4 = q_family(graphs::cycle(4));
  REQUIRE(c4.size() == 2);
  CHECK(std::any_of(c4.begin(), c4.end(), [](const Graph& g) { return isomorphic(g, graphs::cycle(4)); }));
  CHECK(std::any_of(c4.begin(), c4.end(), [](const Graph& g) { return isomorphic(g, graphs::path(3)); }));
  auto k4 = q_family(graphs::complete(4));
  REQUIRE(k4.size() == 2);
  CHECK(std::any_of(k4.begin(), k4.end(), [](const Graph& g) { return isomorphic(g, graphs::complete(4)); }));
  CHECK(std::any_of(k4.begin(), k4.end(), [](const Graph& g) { return isomorphic(g, graphs::star(3)); }));
  auto k2 = q_family(graphs::complete(2));
  REQUIRE(k2.size() == 1);
  CHECK(isomorphic(k2[0], graphs::complete(2)));
  CHECK_THROWS_AS(q_family(graphs::path(3)), PreconditionError);
  CHECK_THROWS_AS(q_family(graphs::perfect_matching(2)), PreconditionError);
}

TEST_CASE("e_J versus alpha* for subgraphs of regular graphs") {
  const std::vector<Graph> hosts = {graphs::complete(3), graphs::complete(4), graphs::cycle(4), graphs::cycle(5),
                                    graphs::cycle(6), graphs::complete_bipartite(3, 3), graphs::complete(5)};
  for (const auto& H : hosts) {
    const int delta = H.max_degree();
    const auto family = q_family(H);
    const auto edges = H.edges();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << edges.size()); ++mask) {
      Graph J(H.order());
      for (std::size_t i = 0; i < edges.size(); ++i)
        if ((mask >> i) & 1U) J.add_edge(edges[i].u, edges[i].v);
      J = J.without_isolated_vertices();
      const Rational alpha = fractional_independence(J).alpha_star;
      const Rational lhs(J.size());
      const Rational mid = delta * (J.order() - alpha);
      REQUIRE(lhs <= mid);
      REQUIRE(mid <= delta * alpha);
      if (lhs == mid) {
        const bool in_family =
            std::any_of(family.begin(), family.end(), [&](const Graph& g) { return isomorphic(g, J); });
        CHECK(in_family);
        if (mid == delta * alpha) CHECK(isomorphic(J, H));
      }
    }
  }
}

TEST_CASE("dense subgraph extraction") {
  auto k40 = extract_dense_subgraph(graphs::complete(40), 3);
  REQUIRE(k40.has_value());
  CHECK(k40->subgraph.min_degree() == 39);
  CHECK(k40->subgraph.min_degree() >= k40->guarantee);
  CHECK(k40->guarantee > 8.0);
  CHECK_FALSE(extract_dense_subgraph(graphs::perfect_matching(6), 3).has_value());
  auto mixed = graphs::disjoint_union(graphs::complete(20), graphs::perfect_matching(40));
  CHECK_FALSE(extract_dense_subgraph(mixed, 3).has_value());
  auto peeled = extract_dense_subgraph(mixed, 3, 1.0);
  REQUIRE(peeled.has_value());
  std::vector<int> clique(20);
  std::iota(clique.begin(), clique.end(), 0);
  CHECK(peeled->vertices == clique);
}

TEST_CASE("dense subgraph guarantee on random dense graphs") {
  std::mt19937_64 rng(77);
  for (int rep = 0; rep < 20; ++rep) {
    auto G = graphs::disjoint_union(graphs::complete(14 + static_cast<int>(rng() % 6)),
                                    oracle::random_graph(6, 0.3, rng));
    for (int r : {3, 4}) {
      auto out = extract_dense_subgraph(G, r);
      if (out) CHECK(out->subgraph.min_degree() >= out->guarantee);
    }
  }
}

TEST_CASE("high-degree split") {
  auto star = split_high_degree(graphs::star(50), 10, 3);
  CHECK(star.U == std::vector<int>{0});
  CHECK(split_high_degree(Graph(5), 1, 3).U.empty());
  CHECK(split_high_degree(graphs::cycle(8), 3, 3).U.empty());
  CHECK_THROWS_AS(split_high_degree(graphs::cycle(8), 0, 3), DomainError);
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 40; ++rep) {
    auto G = oracle::random_graph(9, 0.5, rng);
    for (int r : {3, 4}) {
      auto out = split_high_degree(G, 2.0 + static_cast<double>(rng() % 6), r);
      CHECK(out.report.kr_identity_holds);
      CHECK(out.report.u_size_holds);
      CHECK(out.report.star_identity_holds);
      CHECK(out.report.t_bounds_hold);
      CHECK(out.U.size() + out.V.size() == 9);
    }
  }
}

TEST_CASE("star witness") {
  auto k25 = star_witness(graphs::complete_bipartite(2, 5), {0, 1}, Rational(2), 2, 0.1);
  REQUIRE(k25.has_value());
  CHECK(k25->W == std::vector<int>{0, 1});
  CHECK(k25->W_prime == k25->W);
  CHECK_FALSE(star_witness(Graph(6), {0, 1}, Rational(1), 2, 0.1).has_value());
  Graph g(7);  // U = {0,1}, V = {2..6}
  for (int v = 2; v < 7; ++v) g.add_edge(0, v);
  g.add_edge(1, 2);
  auto one = star_witness(g, {0, 1}, Rational(1), 2, 0.1);
  REQUIRE(one.has_value());
  CHECK(one->W == std::vector<int>{0});
  CHECK(one->W_prime == std::vector<int>{0});
  CHECK_THROWS_AS(star_witness(graphs::complete(3), {0}, Rational(1), 2, 0.1), PreconditionError);
}
