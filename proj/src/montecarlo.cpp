#include "uptail/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

#include "uptail/ap.hpp"
#include "uptail/combinatorics.hpp"
#include "uptail/embedding.hpp"
#include "uptail/errors.hpp"
#include "uptail/parallel.hpp"
#include "uptail/subgraph.hpp"

namespace uptail {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// splitmix64 stream for one sample.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t index) : state_(mix64(seed ^ mix64(index + kGamma))) {}
  std::uint64_t next() { return mix64(state_ += kGamma); }

 private:
  std::uint64_t state_;
};

// Y = 1 iff a uniform 64-bit word is below floor(p·2^64).
std::uint64_t bernoulli_threshold(const Rational& p) {
  const BigInt t = (numerator(p) << 64) / denominator(p);
  return static_cast<std::uint64_t>(t);
}

std::uint64_t ceil_rational(const Rational& q) {
  if (q <= 0) return 0;
  BigInt c = numerator(q) / denominator(q);
  if (Rational(c) < q) ++c;
  return static_cast<std::uint64_t>(c);
}

Graph graph_from_coordinates(const std::vector<char>& y, int n) {
  Graph g(n);
  for (std::size_t i = 0; i < y.size(); ++i)
    if (y[i]) {
      const Edge e = pair_from_index(static_cast<int>(i), n);
      g.add_edge(e.u, e.v);
    }
  return g;
}

std::uint64_t induced_count(const Graph& pattern, const Graph& g) {
  const int v = pattern.order();
  const std::string code = canonical_code(pattern);
  std::uint64_t count = 0;
  for_each_combination(g.order(), v, [&](const std::vector<int>& S) {
    const Graph sub = g.induced(S);
    if (sub.size() == pattern.size() && canonical_code(sub) == code) ++count;
  });
  return count;
}

void check_detector_args(double eps, double x, double p, int r) {
  if (!(eps > 0 && eps < 1)) throw DomainError("eps must lie in (0, 1)");
  if (!(x >= 0)) throw DomainError("x must be nonnegative");
  if (!(p > 0 && p < 1)) throw DomainError("p must lie in (0, 1)");
  if (r < 2) throw DomainError("r must be at least 2");
}

double clique_size_threshold(int n, double eps, double x, double p, int r) {
  return (1 - eps) * std::pow(x, 1.0 / r) * n * std::pow(p, (r - 1) / 2.0);
}

double hub_cut_threshold(int n, double eps, double x, double p, int r) {
  const double ell = x * n * std::pow(p, r - 1) / r;
  const double whole = std::floor(ell);
  return (1 - eps) * n * (whole + std::pow(ell - whole, 1.0 / (r - 1)));
}

// Removes minimum-degree vertices (ties: smallest label) until
// δ(G[U]) ≥ (1−ε)|U|.
std::vector<int> peel(const Graph& G, std::vector<int> U, double eps) {
  std::vector<int> deg(static_cast<std::size_t>(G.order()), 0);
  for (int u : U)
    for (int w : U)
      if (G.has_edge(u, w)) ++deg[static_cast<std::size_t>(u)];
  while (!U.empty()) {
    auto it = std::min_element(U.begin(), U.end(), [&](int a, int b) {
      const int da = deg[static_cast<std::size_t>(a)], db = deg[static_cast<std::size_t>(b)];
      return da != db ? da < db : a < b;
    });
    if (deg[static_cast<std::size_t>(*it)] >= (1 - eps) * static_cast<double>(U.size())) break;
    const int w = *it;
    U.erase(it);
    for (int u : U)
      if (G.has_edge(u, w)) --deg[static_cast<std::size_t>(u)];
  }
  return U;
}

std::vector<int> by_degree(const Graph& G) {
  std::vector<int> order(static_cast<std::size_t>(G.order()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return G.degree(a) > G.degree(b); });
  return order;
}

}  // namespace

Rational model_mean(const Model& model) {
  validate(model);
  return std::visit(
      [](const auto& m) -> Rational {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, SubgraphModel>) {
          return pow(m.p, static_cast<unsigned>(m.pattern.size())) * copies_in_complete_graph(m.pattern, m.n);
        } else if constexpr (std::is_same_v<T, ApModel>) {
          return pow(m.p, static_cast<unsigned>(m.k)) * static_cast<std::uint64_t>(enumerate_aps(m.N, m.k).size());
        } else {
          const int v = m.pattern.order(), e = m.pattern.size();
          BigInt labelled = 1;
          for (int i = 2; i <= v; ++i) labelled *= i;
          labelled /= automorphism_count(m.pattern);
          return Rational(labelled * BigInt(binomial(m.n, v))) * pow(m.p, static_cast<unsigned>(e)) *
                 pow(1 - m.p, static_cast<unsigned>(v * (v - 1) / 2 - e));
        }
      },
      model);
}

std::uint64_t evaluate_model(const Model& model, const std::vector<char>& y) {
  return std::visit(
      [&](const auto& m) -> std::uint64_t {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, SubgraphModel>) {
          return count_embeddings(m.pattern, graph_from_coordinates(y, m.n)) / automorphism_count(m.pattern);
        } else if constexpr (std::is_same_v<T, ApModel>) {
          std::vector<int> I;
          for (std::size_t i = 0; i < y.size(); ++i)
            if (y[i]) I.push_back(static_cast<int>(i) + 1);
          return static_cast<std::uint64_t>(count_aps(I, m.k));
        } else {
          return induced_count(m.pattern, graph_from_coordinates(y, m.n));
        }
      },
      model);
}

McEstimate sample_tail(const McConfig& cfg) {
  validate(cfg.model);
  if (cfg.samples < 1) throw DomainError("samples must be at least 1");
  if (cfg.delta < 0) throw DomainError("delta must be nonnegative");
  const int N = model_coordinates(cfg.model);
  for (int c : cfg.plant)
    if (c < 0 || c >= N) throw DomainError("plant coordinate outside the ground set");
  const std::uint64_t target = ceil_rational((1 + cfg.delta) * model_mean(cfg.model));
  const std::uint64_t thr = bernoulli_threshold(model_p(cfg.model));

  std::optional<Hypercube> cube;
  if (N <= 64) cube.emplace(to_hypercube(cfg.model));
  Mask plant_mask = 0;
  std::vector<char> planted(static_cast<std::size_t>(N), 0);
  for (int c : cfg.plant) {
    planted[static_cast<std::size_t>(c)] = 1;
    if (N <= 64) plant_mask |= Mask{1} << c;
  }

  constexpr std::uint64_t kBlock = 1 << 14;
  const std::uint64_t blocks = (cfg.samples + kBlock - 1) / kBlock;
  std::uint64_t hits = 0;
  BigInt sum_x = 0;
  std::mutex merge;
  parallel_blocks(static_cast<int>(blocks), [&](int b) {
    const std::uint64_t lo = static_cast<std::uint64_t>(b) * kBlock;
    const std::uint64_t hi = std::min(cfg.samples, lo + kBlock);
    std::uint64_t local_hits = 0, local_sum = 0;
    std::vector<char> y(static_cast<std::size_t>(N));
    for (std::uint64_t i = lo; i < hi; ++i) {
      Stream rng(cfg.seed, i);
      std::uint64_t x;
      if (cube) {
        Mask m = 0;
        for (int j = 0; j < N; ++j)
          if (rng.next() < thr) m |= Mask{1} << j;
        x = cube->evaluate(m | plant_mask);
      } else {
        for (int j = 0; j < N; ++j) y[static_cast<std::size_t>(j)] = (rng.next() < thr) || planted[static_cast<std::size_t>(j)];
        x = evaluate_model(cfg.model, y);
      }
      local_sum += x;
      if (x >= target) ++local_hits;
    }
    std::lock_guard lock(merge);
    hits += local_hits;
    sum_x += local_sum;
  });

  McEstimate est;
  est.hits = hits;
  est.samples = cfg.samples;
  est.seed = cfg.seed;
  est.sum_x = sum_x;
  est.p_hat = static_cast<double>(hits) / static_cast<double>(cfg.samples);
  est.std_error = std::sqrt(est.p_hat * (1 - est.p_hat) / static_cast<double>(cfg.samples));
  return est;
}

nlohmann::json to_json(const McEstimate& est) {
  return {{"p_hat", est.p_hat}, {"stderr", est.std_error}, {"hits", est.hits}, {"samples", est.samples},
          {"seed", est.seed}};
}

bool clique_event_holds(const Graph& G, const std::vector<int>& U, double eps, double x, double p, int r) {
  check_detector_args(eps, x, p, r);
  if (x == 0) return true;
  if (U.empty() || static_cast<double>(U.size()) < clique_size_threshold(G.order(), eps, x, p, r)) return false;
  for (int u : U) {
    int d = 0;
    for (int w : U)
      if (G.has_edge(u, w)) ++d;
    if (d < (1 - eps) * static_cast<double>(U.size())) return false;
  }
  return true;
}

bool hub_event_holds(const Graph& G, const std::vector<int>& U, double eps, double x, double p, int r) {
  check_detector_args(eps, x, p, r);
  if (x == 0) return true;
  const int n = G.order();
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (int u : U) in[static_cast<std::size_t>(u)] = 1;
  std::int64_t high = 0, cut = 0;
  for (int u : U) {
    if (G.degree(u) >= (1 - eps) * n) ++high;
    for (int w = 0; w < n; ++w)
      if (!in[static_cast<std::size_t>(w)] && G.has_edge(u, w)) ++cut;
  }
  return static_cast<double>(high) >= std::floor((1 - eps) * static_cast<double>(U.size())) &&
         static_cast<double>(cut) >= hub_cut_threshold(n, eps, x, p, r);
}

std::optional<std::vector<int>> detect_clique_event(const Graph& G, double eps, double x, double p, int r) {
  check_detector_args(eps, x, p, r);
  if (x == 0) return std::vector<int>{};
  const int n = G.order();
  std::vector<std::vector<int>> starts;
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  starts.push_back(all);
  for (int v : by_degree(G)) {
    std::vector<int> closed{v};
    for (int w = 0; w < n; ++w)
      if (G.has_edge(v, w)) closed.push_back(w);
    std::sort(closed.begin(), closed.end());
    starts.push_back(std::move(closed));
  }
  for (auto& s : starts) {
    auto U = peel(G, std::move(s), eps);
    std::sort(U.begin(), U.end());
    if (clique_event_holds(G, U, eps, x, p, r)) return U;
  }
  return std::nullopt;
}

std::optional<std::vector<int>> detect_hub_event(const Graph& G, double eps, double x, double p, int r) {
  check_detector_args(eps, x, p, r);
  if (x == 0) return std::vector<int>{};
  const int n = G.order();
  const double target = hub_cut_threshold(n, eps, x, p, r);
  std::vector<int> U;
  std::int64_t cut = 0, high = 0;
  for (int w : by_degree(G)) {
    int inside = 0;
    for (int u : U)
      if (G.has_edge(u, w)) ++inside;
    cut += G.degree(w) - 2 * inside;
    if (G.degree(w) >= (1 - eps) * n) ++high;
    U.push_back(w);
    if (static_cast<double>(high) >= std::floor((1 - eps) * static_cast<double>(U.size())) &&
        static_cast<double>(cut) >= target) {
      std::sort(U.begin(), U.end());
      return U;
    }
  }
  return std::nullopt;
}

}  // namespace uptail
