#include "uptail/moments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>

#include "uptail/ap.hpp"
#include "uptail/combinatorics.hpp"
#include "uptail/embedding.hpp"
#include "uptail/errors.hpp"
#include "uptail/parallel.hpp"

namespace uptail {

namespace {

// Smallest integer value ≥ q.
std::uint64_t ceil_nonnegative(const Rational& q) {
  if (q <= 0) return 0;
  BigInt c = numerator(q) / denominator(q);
  if (Rational(c) < q) ++c;
  return static_cast<std::uint64_t>(c);
}

// (y)_t = y(y−1)···(y−t+1).
Rational falling(const Rational& y, int t) {
  Rational out = 1;
  for (int i = 0; i < t; ++i) out *= y - i;
  return out;
}

// log z for z > 0, scaled by a power of two so that huge values stay finite.
double log_bigint(const BigInt& z) {
  if (z == 0) return -std::numeric_limits<double>::infinity();
  const auto bits = static_cast<long>(boost::multiprecision::msb(z));
  const long shift = std::max(0L, bits - 60);
  return std::log((z >> shift).convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

double log_rational(const Rational& q) { return log_bigint(numerator(q)) - log_bigint(denominator(q)); }

}  // namespace

Rational ExactDist::mean() const {
  Rational m = 0;
  for (const auto& [x, pr] : pmf) m += pr * x;
  return m;
}

Rational ExactDist::tail(const Rational& threshold) const {
  Rational total = 0;
  for (auto it = pmf.lower_bound(ceil_nonnegative(threshold)); it != pmf.end(); ++it) total += it->second;
  return total;
}

Rational ExactDist::factorial_moment(int t) const {
  if (t < 0) throw DomainError("t must be nonnegative");
  Rational total = 0;
  for (const auto& [x, pr] : pmf) {
    if (x < static_cast<std::uint64_t>(t)) continue;
    BigInt f = 1;
    for (int i = 0; i < t; ++i) f *= BigInt(x - static_cast<std::uint64_t>(i));
    total += pr * Rational(f);
  }
  return total;
}

ExactDist exact_distribution(const Hypercube& cube) {
  const int N = cube.dimension();
  if (N > kMaxDistributionCoordinates)
    throw BudgetError("exact distribution enumerates 2^N outcomes; N = " + std::to_string(N) + " exceeds " +
                      std::to_string(kMaxDistributionCoordinates));
  // Outcomes are split on their top bits; each block tallies (X, #ones).
  const int high = std::min(N, 6);
  const int low = N - high;
  std::map<std::pair<std::uint64_t, int>, std::uint64_t> counts;
  std::mutex merge;
  parallel_blocks(1 << high, [&](int block) {
    std::map<std::pair<std::uint64_t, int>, std::uint64_t> local;
    const Mask prefix = static_cast<Mask>(block) << low;
    for (Mask rest = 0; rest < (Mask{1} << low); ++rest) {
      const Mask y = prefix | rest;
      ++local[{cube.evaluate(y), std::popcount(y)}];
    }
    std::lock_guard lock(merge);
    for (const auto& [key, c] : local) counts[key] += c;
  });
  ExactDist dist;
  dist.N = N;
  for (const auto& [key, c] : counts) dist.pmf[key.first] += cube.weight(key.second, N - key.second) * c;
  return dist;
}

ExactDist exact_distribution(const Model& model) {
  validate(model);
  if (model_coordinates(model) > kMaxDistributionCoordinates)
    throw BudgetError("exact distribution supports at most " + std::to_string(kMaxDistributionCoordinates) +
                      " coordinates");
  return exact_distribution(to_hypercube(model));
}

nlohmann::json to_json(const ExactDist& dist) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [x, pr] : dist.pmf) j[std::to_string(x)] = to_fraction_string(pr);
  return j;
}

std::vector<Rational> tuple_sum_moments(const Hypercube& cube, int t_max, std::uint64_t budget) {
  if (t_max < 0) throw DomainError("t_max must be nonnegative");
  const auto& terms = cube.terms();
  const int T = static_cast<int>(terms.size());
  const int N = cube.dimension();
  std::uint64_t total_sets = 0;
  for (int t = 0; t <= t_max; ++t) {
    const auto c = binomial(T, t);
    if (c > budget || total_sets > budget - c)
      throw BudgetError("tuple sum needs more than " + std::to_string(budget) + " term sets");
    total_sets += c;
  }
  // hist[t][(a,b)]: unordered t-sets of distinct terms whose union fixes a ones and b zeros.
  std::vector<std::map<std::pair<int, int>, std::uint64_t>> hist(static_cast<std::size_t>(t_max + 1));
  auto dfs = [&](auto&& self, int start, int depth, Mask ones, Mask zeros) -> void {
    ++hist[static_cast<std::size_t>(depth)][{std::popcount(ones), std::popcount(zeros)}];
    if (depth == t_max) return;
    for (int i = start; i < T; ++i) {
      const Mask o = ones | terms[static_cast<std::size_t>(i)].ones;
      const Mask z = zeros | terms[static_cast<std::size_t>(i)].zeros;
      if (o & z) continue;  // weight 0, and so is every extension
      self(self, i + 1, depth + 1, o, z);
    }
  };
  dfs(dfs, 0, 0, 0, 0);
  std::vector<Rational> out(static_cast<std::size_t>(t_max + 1), Rational(0));
  BigInt fact = 1;
  for (int t = 0; t <= t_max; ++t) {
    if (t > 0) fact *= t;
    Rational sum = 0;
    for (const auto& [ab, c] : hist[static_cast<std::size_t>(t)]) {
      if (ab.first + ab.second > N) continue;
      sum += cube.weight(ab.first, ab.second) * c;
    }
    out[static_cast<std::size_t>(t)] = sum * Rational(fact);
  }
  return out;
}

FactorialMoments factorial_moments(const Hypercube& cube, int t_max, std::uint64_t tuple_budget) {
  if (t_max < 0) throw DomainError("t_max must be nonnegative");
  FactorialMoments out;
  const auto dist = exact_distribution(cube);
  for (int t = 0; t <= t_max; ++t) out.from_distribution.push_back(dist.factorial_moment(t));
  try {
    out.tuple_sum = tuple_sum_moments(cube, t_max, tuple_budget);
  } catch (const BudgetError&) {
    out.tuple_sum.reset();
  }
  return out;
}

MarkovBound poisson_markov_bound(const ExactDist& dist, const Rational& delta, int t) {
  if (delta < 0) throw DomainError("delta must be nonnegative");
  const Rational y = (1 + delta) * dist.mean();
  if (t < 1 || Rational(t) > y)
    throw DomainError("t must satisfy 1 <= t <= (1+delta)E[X]");
  MarkovBound out;
  out.tail = dist.tail(y);
  out.moment = dist.factorial_moment(t);
  out.falling = falling(y, t);
  out.bound = log_rational(out.falling) - log_rational(out.moment);
  out.exact_neg_log_tail = out.tail > 0 ? -log_rational(out.tail) : std::numeric_limits<double>::infinity();
  out.holds = out.tail * out.falling <= out.moment;
  return out;
}

StabilityCheck stability_check(const Hypercube& cube, const Rational& delta, const Rational& eps, int ell) {
  if (!cube.monotone()) throw PreconditionError("hypothesis violated: X must have nonnegative coefficients");
  if (delta <= 0 || eps <= 0) throw DomainError("delta and eps must be positive");
  if (eps >= 1 + delta) throw DomainError("eps must be below 1 + delta");
  if (ell < 1) throw DomainError("ell must be a positive integer");
  const int N = cube.dimension();
  if (N > kMaxDistributionCoordinates) throw BudgetError("stability check enumerates 2^N outcomes");
  const Rational mean = cube.mean();
  const Rational bar = (1 + delta - eps) * mean;
  const int max_size = cube.degree() * ell;
  const std::size_t outcomes = std::size_t{1} << N;

  StabilityCheck out;
  std::vector<char> hit(outcomes, 0);  // hit[y]: some I ∈ 𝓘 lies inside y
  for (Mask S = 0; S < outcomes; ++S) {
    if (std::popcount(S) <= max_size && cube.conditional(S) >= bar) {
      hit[S] = 1;
      ++out.family_size;
    }
  }
  for (int i = 0; i < N; ++i)
    for (Mask y = 0; y < outcomes; ++y)
      if ((y >> i) & 1U) hit[y] |= hit[y & ~(Mask{1} << i)];

  const Rational target = (1 + delta) * mean;
  out.lhs = 0;
  for (Mask y = 0; y < outcomes; ++y) {
    if (hit[y] || Rational(cube.evaluate(y)) < target) continue;
    const int k = std::popcount(y);
    out.lhs += cube.weight(k, N - k);
  }
  out.rhs = pow((1 + delta - eps) / (1 + delta), static_cast<unsigned>(ell));
  out.holds = out.lhs <= out.rhs;
  return out;
}

FallingFactorialLog falling_factorial_log(double x, int t) {
  if (!(x > 0)) throw DomainError("x must be positive");
  if (t < 0) throw DomainError("t must be nonnegative");
  FallingFactorialLog out;
  if (t == 0) return out;
  const double u = t / x;
  out.main = ((1 + u) * std::log1p(u) - u) * x + t * std::log(x);
  double sum = 0;
  for (int s = 1; s <= t; ++s) sum += std::log(x + s);
  out.lambda = sum - out.main;
  return out;
}

bool Hypergraph::uniform() const {
  return std::all_of(edges.begin(), edges.end(), [&](const auto& e) { return e.size() == edges.front().size(); });
}

Hypergraph ap_hypergraph(int N, int k) {
  Hypergraph H;
  H.N = N;
  for (auto ap : enumerate_aps(N, k)) {
    for (auto& x : ap) --x;
    H.edges.push_back(std::move(ap));
  }
  return H;
}

Hypergraph copy_hypergraph(const Graph& pattern, int n) {
  Hypergraph H;
  H.N = n * (n - 1) / 2;
  H.graph_order = n;
  const auto copies = labelled_copies(pattern);
  for_each_combination(n, pattern.order(), [&](const std::vector<int>& S) {
    for (const auto& c : copies) {
      std::vector<int> e;
      for (const auto& uv : c)
        e.push_back(pair_index(S[static_cast<std::size_t>(uv.u)], S[static_cast<std::size_t>(uv.v)], n));
      std::sort(e.begin(), e.end());
      H.edges.push_back(std::move(e));
    }
  });
  return H;
}

ClusterCensus dependency_clusters(const Hypergraph& H, const Rational& p, int s_max, std::uint64_t budget) {
  if (!in_open_unit_interval(p)) throw DomainError("p must lie strictly between 0 and 1");
  if (H.N > 64) throw BudgetError("cluster census supports at most 64 hypergraph vertices");
  const int E = static_cast<int>(H.edges.size());
  std::vector<Mask> masks;
  for (const auto& e : H.edges) {
    Mask m = 0;
    for (int v : e) m |= Mask{1} << v;
    masks.push_back(m);
  }
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(E));
  for (int a = 0; a < E; ++a)
    for (int b = 0; b < E; ++b)
      if (a != b && (masks[static_cast<std::size_t>(a)] & masks[static_cast<std::size_t>(b)]))
        adj[static_cast<std::size_t>(a)].push_back(b);

  ClusterCensus census;
  std::map<std::pair<int, Mask>, std::uint64_t> seen;  // (s, union) → count
  std::uint64_t visited = 0;

  // Connected edge sets with minimum element `root`, each produced once
  // (extension-set enumeration over the dependency graph).
  std::vector<int> in_sub(static_cast<std::size_t>(E), 0), in_nbhd(static_cast<std::size_t>(E), 0);
  auto extend = [&](auto&& self, int root, int size, Mask uni, std::vector<int> ext) -> void {
    if (!census.complete) return;
    if (++visited > budget) {
      census.complete = false;
      return;
    }
    ++seen[{size, uni}];
    if (size == s_max) return;
    while (!ext.empty()) {
      const int w = ext.back();
      ext.pop_back();
      std::vector<int> next = ext;
      std::vector<int> added;
      for (int u : adj[static_cast<std::size_t>(w)]) {
        if (u <= root || in_sub[static_cast<std::size_t>(u)] || in_nbhd[static_cast<std::size_t>(u)]) continue;
        next.push_back(u);
        added.push_back(u);
        in_nbhd[static_cast<std::size_t>(u)] = 1;
      }
      in_sub[static_cast<std::size_t>(w)] = 1;
      self(self, root, size + 1, uni | masks[static_cast<std::size_t>(w)], std::move(next));
      in_sub[static_cast<std::size_t>(w)] = 0;
      for (int u : added) in_nbhd[static_cast<std::size_t>(u)] = 0;
    }
  };
  if (s_max >= 1) {
    for (int root = 0; root < E && census.complete; ++root) {
      std::vector<int> ext;
      in_sub[static_cast<std::size_t>(root)] = 1;
      for (int u : adj[static_cast<std::size_t>(root)]) in_nbhd[static_cast<std::size_t>(u)] = 1;
      for (int u : adj[static_cast<std::size_t>(root)])
        if (u > root) ext.push_back(u);
      extend(extend, root, 1, masks[static_cast<std::size_t>(root)], ext);
      in_sub[static_cast<std::size_t>(root)] = 0;
      for (int u : adj[static_cast<std::size_t>(root)]) in_nbhd[static_cast<std::size_t>(u)] = 0;
    }
  }

  for (int s = 1; s <= s_max; ++s) census.by_size[s] = 0;
  for (const auto& [key, count] : seen) {
    const auto& [s, uni] = key;
    const Rational w = pow(p, static_cast<unsigned>(std::popcount(uni))) * count;
    census.by_size[s] += w;
    if (H.graph_order) {
      const int n = *H.graph_order;
      Mask verts = 0;
      for (Mask rest = uni; rest; rest &= rest - 1) {
        const Edge e = pair_from_index(std::countr_zero(rest), n);
        verts |= (Mask{1} << e.u) | (Mask{1} << e.v);
      }
      census.by_size_km[{s, std::popcount(verts), std::popcount(uni)}] += w;
    }
  }
  return census;
}

std::string census_csv(const ClusterCensus& census) {
  std::ostringstream out;
  out << "s,k,m,expectation\n";
  if (!census.by_size_km.empty()) {
    for (const auto& [key, value] : census.by_size_km)
      out << std::get<0>(key) << ',' << std::get<1>(key) << ',' << std::get<2>(key) << ','
          << to_fraction_string(value) << '\n';
  } else {
    for (const auto& [s, value] : census.by_size) out << s << ",,," << to_fraction_string(value) << '\n';
  }
  return out.str();
}

std::int64_t ap_cluster_union_count(int N, int k, int m, std::uint64_t budget) {
  if (k < 2) throw DomainError("k must be at least 2");
  if (N > 64) throw BudgetError("N must be at most 64");
  if (m < k || m > N) return 0;
  if (binomial(N, m) > budget) throw BudgetError("C(N, m) exceeds the enumeration budget");
  std::vector<Mask> aps;
  for (const auto& ap : enumerate_aps(N, k)) aps.push_back(set_mask(ap));
  std::int64_t count = 0;
  for_each_combination(N, m, [&](const std::vector<int>& idx) {
    Mask S = 0;
    for (int i : idx) S |= Mask{1} << i;
    std::vector<Mask> inside;
    for (Mask a : aps)
      if ((a & ~S) == 0) inside.push_back(a);
    UnionFind uf(static_cast<int>(inside.size()));
    for (std::size_t a = 0; a < inside.size(); ++a)
      for (std::size_t b = a + 1; b < inside.size(); ++b)
        if (inside[a] & inside[b]) uf.unite(static_cast<int>(a), static_cast<int>(b));
    std::map<int, Mask> unions;
    for (std::size_t a = 0; a < inside.size(); ++a) unions[uf.find(static_cast<int>(a))] |= inside[a];
    for (const auto& [root, u] : unions)
      if (u == S) {
        ++count;
        break;
      }
  });
  return count;
}

double am_upper_bound(int N, int k, int m) {
  return static_cast<double>(N) * N * std::pow(2.0 * k * m * N, static_cast<double>(m - k) / (k - 1));
}

bool am_upper_condition(int N, int k, int m) {
  for (int mp = k + 1; mp <= m; ++mp) {
    const double lhs = std::pow(static_cast<double>(k), 3) * mp * mp * std::pow(2.0 * k * mp * N, -1.0 / (k - 1));
    if (lhs > 0.5) return false;
  }
  return true;
}

bool am_recurrence_holds(const std::vector<std::int64_t>& a, int N, int k, int m) {
  if (m < k + 1) return true;
  if (static_cast<int>(a.size()) <= m) throw DomainError("a must hold a_0..a_m");
  auto at = [&](int j) { return j >= 0 ? static_cast<double>(a[static_cast<std::size_t>(j)]) : 0.0; };
  double rhs = static_cast<double>(k) * m * N * at(m - k + 1);
  double tail = 0;
  for (int j = m - k + 2; j <= m - 1; ++j) tail += at(j);
  rhs += static_cast<double>(k) * k * m * m * tail;
  return at(m) <= rhs;
}

JansonCheck hypergeometric_janson_check(const std::vector<std::vector<int>>& family, int t, int s,
                                        const Rational& eps) {
  if (t < 1 || t > 24) throw DomainError("t must lie in 1..24");
  if (s < 0 || s > t) throw DomainError("s must lie in 0..t");
  if (eps <= 0 || eps > 1) throw DomainError("eps must lie in (0, 1]");
  std::vector<Mask> B;
  for (const auto& b : family) {
    Mask m = 0;
    for (int x : b) {
      if (x < 0 || x >= t) throw DomainError("family member outside {0..t-1}");
      m |= Mask{1} << x;
    }
    B.push_back(m);
  }
  const Rational q(s, t);
  JansonCheck out;
  out.mu = 0;
  out.Delta = 0;
  for (Mask b : B) out.mu += pow(q, static_cast<unsigned>(std::popcount(b)));
  for (std::size_t a = 0; a < B.size(); ++a)
    for (std::size_t c = 0; c < B.size(); ++c)
      if (a != c && (B[a] & B[c])) out.Delta += pow(q, static_cast<unsigned>(std::popcount(B[a] | B[c])));

  const Rational cut = (1 - eps) * out.mu;
  std::uint64_t low = 0;
  const std::uint64_t total = binomial(t, s);
  for_each_combination(t, s, [&](const std::vector<int>& idx) {
    Mask S = 0;
    for (int i : idx) S |= Mask{1} << i;
    std::int64_t Z = 0;
    for (Mask b : B)
      if ((b & ~S) == 0) ++Z;
    if (Rational(Z) <= cut) ++low;
  });
  out.exact_prob = Rational(BigInt(low), BigInt(total));
  const double mu = to_double(out.mu), D = to_double(out.Delta), e = to_double(eps);
  out.bound = mu + D > 0 ? 2 * std::exp(-e * e / 2 * mu * mu / (mu + D)) : 2.0;
  out.holds = to_double(out.exact_prob) <= out.bound * (1 + 1e-12);
  return out;
}

}  // namespace uptail
