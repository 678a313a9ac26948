#include "uptail/variational.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>

#include "uptail/ap.hpp"
#include "uptail/combinatorics.hpp"
#include "uptail/subgraph.hpp"

namespace uptail {

namespace {

void check_rate_args(int r, double delta) {
  if (r < 3) throw DomainError("r must be at least 3");
  if (!(delta > 0) || !std::isfinite(delta)) throw DomainError("delta must be positive and finite");
}

double clique_term(int r, double delta, double x) {
  return std::pow(delta * (1 - x), 2.0 / r) / 2;
}

// (⌊y⌋ + {y}^{1/(r−1)})/c at y = xδc/r.
double hub_term(int r, double delta, double c, double x) {
  const double y = x * delta * c / r;
  const double whole = std::floor(y);
  return (whole + std::pow(y - whole, 1.0 / (r - 1))) / c;
}

bool is_complete(const Graph& g) {
  const int n = g.order();
  return g.size() == static_cast<std::int64_t>(n) * (n - 1) / 2;
}

double log_inverse(const Rational& p) { return -std::log(to_double(p)); }

Mask mask_from_indices(const std::vector<int>& idx) {
  Mask m = 0;
  for (int i : idx) m |= Mask{1} << i;
  return m;
}

Witness subset_witness(const Hypercube& cube, Mask ones, const Rational& target) {
  Witness w;
  w.kind = WitnessKind::subset;
  w.elements = mask_elements(ones);
  w.conditional_mean = cube.conditional(ones);
  w.feasible = w.conditional_mean >= target;
  w.log_cost = static_cast<double>(std::popcount(ones)) * log_inverse(cube.p());
  return w;
}

// Re-expresses a coordinate witness on the model's own ground set.
Witness relabel(const Model& model, Witness w) {
  if (std::holds_alternative<ApModel>(model) || w.kind != WitnessKind::subset) return w;
  const int n = std::visit([](const auto& m) -> int {
    if constexpr (std::is_same_v<std::decay_t<decltype(m)>, ApModel>) return m.N;
    else return m.n;
  }, model);
  w.graph = graph_from_mask(set_mask(w.elements), n);
  w.kind = WitnessKind::graph;
  w.elements.clear();
  return w;
}

}  // namespace

double psi(int r, double delta, double c, double x) {
  check_rate_args(r, delta);
  if (!(c > 0) || !std::isfinite(c)) throw DomainError("psi needs finite c > 0; use psi_limit for c = 0 or inf");
  if (!(x >= 0 && x <= 1)) throw DomainError("x must lie in [0,1]");
  return clique_term(r, delta, x) + hub_term(r, delta, c, x);
}

double psi_limit(int r, double delta, double c, double x) {
  check_rate_args(r, delta);
  if (!(x >= 0 && x <= 1)) throw DomainError("x must lie in [0,1]");
  if (c == 0) return x == 0 ? clique_term(r, delta, 0) : kInfinity;
  if (c == kInfinity) return clique_term(r, delta, x) + x * delta / r;
  throw DomainError("psi_limit is defined for c = 0 or c = inf");
}

MinimiserSet phi_clique_hub(int r, double delta, double c) {
  check_rate_args(r, delta);
  if (!(c >= 0)) throw DomainError("c must be nonnegative");
  MinimiserSet out;
  const double at_zero = clique_term(r, delta, 0);
  if (c == 0) {
    out.phi = at_zero;
    out.argmins = {0.0};
    return out;
  }
  std::vector<std::pair<double, double>> cand;  // (x, value)
  if (c == kInfinity) {
    out.x_star = 1;
    cand = {{0.0, at_zero}, {1.0, delta / r}};
  } else {
    const double y = delta * c / r;
    const double whole = std::floor(y);
    const double frac = y - whole;
    out.x_star = whole / y;
    cand.emplace_back(0.0, at_zero);
    if (out.x_star > 0 && out.x_star < 1)
      cand.emplace_back(out.x_star, whole / c + std::pow(r * frac / c, 2.0 / r) / 2);
    cand.emplace_back(1.0, (whole + std::pow(frac, 1.0 / (r - 1))) / c);
  }
  out.phi = kInfinity;
  for (const auto& [x, v] : cand) out.phi = std::min(out.phi, v);
  for (const auto& [x, v] : cand)
    if (v <= out.phi + kArgminTolerance) out.argmins.push_back(x);
  return out;
}

std::string argmin_label(const MinimiserSet& m) {
  if (m.argmins.size() != 1) return "tie";
  const double x = m.argmins.front();
  if (x == 0) return "clique";
  if (x == 1) return "hub";
  char buf[48];
  std::snprintf(buf, sizeof buf, "mixed:%.17g", x);
  return buf;
}

double clique_hub_crossover(int r) {
  if (r < 3) throw DomainError("r must be at least 3");
  return std::pow(r / 2.0, static_cast<double>(r) / (r - 2));
}

double clique_hub_crossover_bisection(int r, double tol) {
  if (r < 3) throw DomainError("r must be at least 3");
  // Hub side (δ/r smaller) for small δ, clique side for large δ.
  auto gap = [r](double d) { return psi_limit(r, d, kInfinity, 0) - psi_limit(r, d, kInfinity, 1); };
  double lo = 1e-6, hi = 2;
  while (gap(hi) > 0) hi *= 2;
  while (hi - lo > tol) {
    const double mid = lo + (hi - lo) / 2;
    if (mid == lo || mid == hi) break;
    (gap(mid) > 0 ? lo : hi) = mid;
  }
  return lo + (hi - lo) / 2;
}

double poisson_rate(double delta, double mean) {
  if (delta < 0 || mean < 0) throw DomainError("delta and mean must be nonnegative");
  return ((1 + delta) * std::log1p(delta) - delta) * mean;
}

std::vector<std::uint64_t> independence_polynomial(const Graph& H) {
  const int v = H.order();
  if (v > 24) throw BudgetError("independence polynomial enumerates 2^v subsets; v <= 24");
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(v), 0);
  for (const auto& e : H.edges()) {
    adj[static_cast<std::size_t>(e.u)] |= 1U << e.v;
    adj[static_cast<std::size_t>(e.v)] |= 1U << e.u;
  }
  std::vector<std::uint64_t> coeff(static_cast<std::size_t>(v + 1), 0);
  // independent[mask] built from mask without its lowest bit.
  std::vector<char> independent(std::size_t{1} << v, 0);
  independent[0] = 1;
  ++coeff[0];
  for (std::uint32_t mask = 1; mask < (1U << v); ++mask) {
    const int low = std::countr_zero(mask);
    const std::uint32_t rest = mask & (mask - 1);
    if (independent[rest] && !(adj[static_cast<std::size_t>(low)] & rest)) {
      independent[mask] = 1;
      ++coeff[static_cast<std::size_t>(std::popcount(mask))];
    }
  }
  while (coeff.size() > 1 && coeff.back() == 0) coeff.pop_back();
  return coeff;
}

double independence_root(const Graph& H, double delta) {
  if (!(delta > 0) || !std::isfinite(delta)) throw DomainError("delta must be positive and finite");
  if (H.order() == 0) throw DomainError("pattern must have vertices");
  const auto coeff = independence_polynomial(H);
  auto P = [&](double t) {
    double acc = 0;
    for (std::size_t i = coeff.size(); i-- > 0;) acc = acc * t + static_cast<double>(coeff[i]);
    return acc;
  };
  double lo = 0, hi = 1;
  while (P(hi) < 1 + delta) hi *= 2;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = (lo + hi) / 2;
    (P(mid) < 1 + delta ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

RegularRate regular_rate(const Graph& H, double delta, double c) {
  if (!H.is_connected() || !H.is_regular() || H.max_degree() < 2)
    throw PreconditionError("hypothesis violated: pattern must be connected and Delta-regular with Delta >= 2");
  if (c != 0 && c != kInfinity) throw DomainError("closed form known only for c = 0 or c = inf");
  RegularRate out;
  out.clique = std::pow(delta, 2.0 / H.order()) / 2;
  out.theta = independence_root(H, delta);
  out.rate = c == 0 ? out.clique : std::min(out.clique, out.theta);
  return out;
}

double ap_rate(int N, int k, double p, double delta) {
  if (!(p > 0 && p < 1)) throw DomainError("p must lie in (0,1)");
  if (delta < 0) throw DomainError("delta must be nonnegative");
  return std::sqrt(delta) * N * std::pow(p, k / 2.0) * std::log(1 / p);
}

std::string to_string(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::subset: return "subset";
    case WitnessKind::subcube: return "subcube";
    case WitnessKind::graph: return "graph";
  }
  return "subset";
}

nlohmann::json to_json(const Witness& w) {
  nlohmann::json j;
  j["kind"] = to_string(w.kind);
  switch (w.kind) {
    case WitnessKind::subset: j["payload"] = w.elements; break;
    case WitnessKind::subcube: j["payload"] = {{"coordinates", w.elements}, {"bits", w.bits}}; break;
    case WitnessKind::graph: j["payload"] = w.graph ? graph_to_json(*w.graph) : nlohmann::json(); break;
  }
  if (std::isfinite(w.log_cost)) j["log_cost"] = w.log_cost;
  else j["log_cost"] = "inf";
  j["conditional_mean"] = to_fraction_string(w.conditional_mean);
  j["feasible"] = w.feasible;
  return j;
}

ConstructionKind construction_kind_from_string(const std::string& name) {
  if (name == "clique") return ConstructionKind::clique;
  if (name == "hub") return ConstructionKind::hub;
  if (name == "interval") return ConstructionKind::interval;
  throw DomainError("unknown construction '" + name + "'");
}

namespace {

Witness graph_construction(const SubgraphModel& model, const Graph& G, const Rational& delta) {
  Witness w;
  w.kind = WitnessKind::graph;
  w.graph = G;
  w.log_cost = static_cast<double>(G.size()) * log_inverse(model.p);
  w.conditional_mean = conditional_expectation_subgraph(model, G);
  const Rational mean = copies_in_complete_graph(model.pattern, model.n) *
                        pow(model.p, static_cast<unsigned>(model.pattern.size()));
  w.feasible = w.conditional_mean >= (1 + delta) * mean;
  return w;
}

// Smallest m with m ≥ (1+δ)^{1/v} n p^{Δ/2}, decided exactly on the
// 2v-th powers.
int clique_size(const SubgraphModel& model, const Rational& delta) {
  const int v = model.pattern.order();
  const int D = model.pattern.max_degree();
  const Rational rhs = pow(1 + delta, 2) * pow(Rational(model.n), 2 * v) *
                       pow(model.p, static_cast<unsigned>(D * v));
  auto enough = [&](int m) { return pow(Rational(m), 2 * v) >= rhs; };
  const double guess = std::pow(to_double(1 + delta), 1.0 / v) * model.n * std::pow(to_double(model.p), D / 2.0);
  int m = std::max(0, static_cast<int>(std::ceil(guess)));
  while (m > 0 && enough(m - 1)) --m;
  while (!enough(m)) ++m;
  return m;
}

Witness clique_construction(const SubgraphModel& model, const Rational& delta) {
  const int m = clique_size(model, delta);
  if (m > model.n)
    throw InfeasibleError("clique on " + std::to_string(m) + " vertices does not fit into n = " + std::to_string(model.n));
  Graph G(model.n);
  for (int u = 0; u < m; ++u)
    for (int v = u + 1; v < m; ++v) G.add_edge(u, v);
  return graph_construction(model, G, delta);
}

// u = 0, U_2 = {1..⌊ℓ⌋}, U_3 = the rest; U_2 complete to U_3 and a star from u
// to the first ⌊{ℓ}^{1/(r−1)}|U_3|⌋ vertices of U_3, with ℓ = δnp^{r−1}/r.
Witness hub_construction(const SubgraphModel& model, const Rational& delta) {
  if (!is_complete(model.pattern) || model.pattern.order() < 3)
    throw PreconditionError("hypothesis violated: hub construction needs a clique pattern K_r with r >= 3");
  const int r = model.pattern.order();
  const int n = model.n;
  const Rational ell = delta * n * pow(model.p, static_cast<unsigned>(r - 1)) / r;
  const BigInt whole_big = numerator(ell) / denominator(ell);
  if (whole_big > n - 2)
    throw InfeasibleError("hub part of size " + whole_big.str() + " leaves no room for U_3 when n = " + std::to_string(n));
  const int whole = static_cast<int>(whole_big);
  const int u3 = n - 1 - whole;
  const double frac = to_double(ell - whole);
  int leaves = static_cast<int>(std::floor(std::pow(frac, 1.0 / (r - 1)) * u3 + 1e-12));
  leaves = std::clamp(leaves, 0, u3);
  Graph G(n);
  for (int a = 1; a <= whole; ++a)
    for (int b = whole + 1; b < n; ++b) G.add_edge(a, b);
  for (int i = 0; i < leaves; ++i) G.add_edge(0, whole + 1 + i);
  return graph_construction(model, G, delta);
}

Witness interval_construction(const ApModel& model, const Rational& delta) {
  const Rational pk = pow(model.p, static_cast<unsigned>(model.k));
  const Rational need = delta * pk * extremal_ap_count(model.N, model.k);
  int m = 0;
  while (m <= model.N && (1 - pk) * extremal_ap_count(m, model.k) < need) ++m;
  if (m > model.N) throw InfeasibleError("no initial segment of [N] carries enough progressions");
  Witness w;
  w.kind = WitnessKind::subset;
  for (int i = 1; i <= m; ++i) w.elements.push_back(i);
  w.log_cost = m * log_inverse(model.p);
  w.conditional_mean = conditional_expectation_ap(model, w.elements);
  w.feasible = w.conditional_mean >= (1 + delta) * pk * extremal_ap_count(model.N, model.k);
  return w;
}

}  // namespace

Witness build_construction(ConstructionKind kind, const Model& model, const Rational& delta) {
  validate(model);
  if (delta <= 0) throw DomainError("delta must be positive");
  if (kind == ConstructionKind::interval) {
    const auto* ap = std::get_if<ApModel>(&model);
    if (!ap) throw PreconditionError("interval construction applies to the progression model");
    return interval_construction(*ap, delta);
  }
  const auto* sub = std::get_if<SubgraphModel>(&model);
  if (!sub) throw PreconditionError("clique and hub constructions apply to the subgraph-count model");
  return kind == ConstructionKind::clique ? clique_construction(*sub, delta) : hub_construction(*sub, delta);
}

Witness phi_bruteforce(const Hypercube& cube, const Rational& delta, std::uint64_t budget) {
  if (delta < 0) throw DomainError("delta must be nonnegative");
  const Rational target = (1 + delta) * cube.mean();
  const int N = cube.dimension();
  Witness none;
  none.conditional_mean = cube.mean();
  if (cube.monotone() && cube.conditional(cube.full_mask()) < target) return none;

  std::uint64_t examined = 0;
  for (int m = 0; m <= N; ++m) {
    std::optional<Mask> found;
    for_each_combination(N, m, [&](const std::vector<int>& idx) {
      if (++examined > budget) throw SearchBudgetError("phi_bruteforce: budget of " + std::to_string(budget) +
                                                           " sets exhausted at size " + std::to_string(m), std::nullopt);
      const Mask ones = mask_from_indices(idx);
      if (cube.conditional(ones) >= target) {
        found = ones;
        return false;
      }
      return true;
    });
    if (found) return subset_witness(cube, *found, target);
  }
  return none;
}

Witness phi_bruteforce(const Model& model, const Rational& delta, std::uint64_t budget) {
  validate(model);
  try {
    return relabel(model, phi_bruteforce(to_hypercube(model), delta, budget));
  } catch (const SearchBudgetError& e) {
    throw SearchBudgetError(e.what(), e.best() ? std::optional(relabel(model, *e.best())) : std::nullopt);
  }
}

Witness phi_subcube_bruteforce(const Hypercube& cube, const Rational& delta, std::uint64_t budget) {
  if (delta < 0) throw DomainError("delta must be nonnegative");
  const Rational target = (1 + delta) * cube.mean();
  const int N = cube.dimension();
  const double cost_one = log_inverse(cube.p());
  const double cost_zero = -std::log1p(-to_double(cube.p()));
  constexpr double kTieSlack = 1e-12;

  Witness best;
  best.kind = WitnessKind::subcube;
  best.conditional_mean = cube.mean();
  std::uint64_t examined = 0;
  for (int m = 0; m <= N; ++m) {
    for_each_combination(N, m, [&](const std::vector<int>& idx) {
      // bits in lexicographic order: the first coordinate is the most significant.
      for (std::uint64_t a = 0; a < (std::uint64_t{1} << m); ++a) {
        if (++examined > budget) {
          throw SearchBudgetError("phi_subcube_bruteforce: budget of " + std::to_string(budget) + " subcubes exhausted",
                                  best.feasible ? std::optional(best) : std::nullopt);
        }
        Mask ones = 0, zeros = 0;
        for (int i = 0; i < m; ++i) {
          const Mask bit = Mask{1} << idx[static_cast<std::size_t>(i)];
          if ((a >> (m - 1 - i)) & 1U) ones |= bit;
          else zeros |= bit;
        }
        const int a1 = std::popcount(ones), a0 = m - a1;
        const double cost = a1 * cost_one + a0 * cost_zero;
        if (best.feasible && cost >= best.log_cost - kTieSlack) continue;
        const Rational cm = cube.conditional(ones, zeros);
        if (cm < target) continue;
        best.feasible = true;
        best.log_cost = cost;
        best.conditional_mean = cm;
        best.elements.clear();
        best.bits.clear();
        for (int i = 0; i < m; ++i) {
          best.elements.push_back(idx[static_cast<std::size_t>(i)] + 1);
          best.bits.push_back(static_cast<int>((a >> (m - 1 - i)) & 1U));
        }
      }
    });
  }
  return best;
}

Witness phi_subcube_bruteforce(const Model& model, const Rational& delta, std::uint64_t budget) {
  validate(model);
  return phi_subcube_bruteforce(to_hypercube(model), delta, budget);
}

TailUpperBound ut_upper_bound(const Hypercube& cube, double eps, double phi_value) {
  if (!(eps > 0)) throw DomainError("eps must be positive");
  const double mean = to_double(cube.mean());
  if (!(mean > 0)) throw DomainError("E[X] must be positive");
  const double M = static_cast<double>(cube.max_value());
  TailUpperBound out;
  out.degenerate = eps * mean >= M;
  out.value = phi_value + std::log(M / (eps * mean));
  return out;
}

}  // namespace uptail
