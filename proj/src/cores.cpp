#include "uptail/cores.hpp"

#include <bit>
#include <cmath>

#include "uptail/combinatorics.hpp"
#include "uptail/subgraph.hpp"

namespace uptail {

namespace {

Rational size_budget(const CoreParams& params) {
  if (!(params.K > 0) || !(params.phi_plus > 0)) throw DomainError("K and phi_plus must be positive");
  return rational_from_double(params.K) * rational_from_double(params.phi_plus);
}

void check_eps(const CoreParams& params) {
  if (params.eps <= 0 || params.eps >= Rational(1, 2)) throw DomainError("eps must lie in (0, 1/2)");
}

}  // namespace

CoreCheck is_core(const Hypercube& cube, const CoreParams& params, Mask I) {
  check_eps(params);
  const Rational budget = size_budget(params);
  const Rational mean = cube.mean();
  CoreCheck out;
  out.conditional_mean = cube.conditional(I);
  out.bias_threshold = (1 + params.delta - params.eps) * mean;
  out.gain_threshold = mean / budget;
  out.bias = out.conditional_mean >= out.bias_threshold;
  out.size = std::popcount(I) <= budget;
  for (Mask rest = I; rest; rest &= rest - 1) {
    const Rational g = cube.gain(I, std::countr_zero(rest));
    if (!out.smallest_gain || g < *out.smallest_gain) out.smallest_gain = g;
  }
  out.min_gain = !out.smallest_gain || *out.smallest_gain >= out.gain_threshold;
  return out;
}

Mask extract_core(const Hypercube& cube, Mask I, const Rational& s) {
  if (s < 0) throw DomainError("s must be nonnegative");
  if (!I) return I;
  const Rational threshold = s / std::popcount(I);
  while (I) {
    int victim = -1;
    Rational worst;
    for (Mask rest = I; rest; rest &= rest - 1) {
      const int i = std::countr_zero(rest);
      Rational g = cube.gain(I, i);
      if (g < threshold && (victim < 0 || g < worst)) {
        victim = i;
        worst = std::move(g);
      }
    }
    if (victim < 0) break;
    I &= ~(Mask{1} << victim);
  }
  return I;
}

CoreReport enumerate_cores(const Hypercube& cube, const CoreParams& params, int m, std::uint64_t budget) {
  check_eps(params);
  const Rational limit = size_budget(params);
  const int N = cube.dimension();
  if (m < 0) throw DomainError("m must be nonnegative");
  CoreReport report;
  report.size = m;
  report.stability_bound = std::pow(1 / to_double(cube.p()), to_double(params.eps) * m / 2);
  if (m <= limit && m <= N) {
    std::uint64_t examined = 0;
    for_each_combination(N, m, [&](const std::vector<int>& idx) {
      if (++examined > budget)
        throw CoreBudgetError("enumerate_cores: budget of " + std::to_string(budget) + " subsets exhausted after " +
                                  std::to_string(report.count) + " cores",
                              report.count);
      Mask I = 0;
      for (int i : idx) I |= Mask{1} << i;
      if (is_core(cube, params, I).holds()) {
        ++report.count;
        report.witnesses.push_back(I);
      }
    });
  }
  report.passes = static_cast<double>(report.count) <= report.stability_bound;
  return report;
}

nlohmann::json to_json(const CoreReport& report, const Model& model) {
  nlohmann::json witnesses = nlohmann::json::array();
  const bool graph_model = !std::holds_alternative<ApModel>(model);
  const int n = graph_model ? std::visit([](const auto& m) {
    if constexpr (std::is_same_v<std::decay_t<decltype(m)>, ApModel>) return m.N;
    else return m.n;
  }, model) : 0;
  for (Mask w : report.witnesses) {
    if (!graph_model) {
      witnesses.push_back(mask_elements(w));
      continue;
    }
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : graph_from_mask(w, n).edges()) edges.push_back({e.u, e.v});
    witnesses.push_back(edges);
  }
  return {{"size", report.size},
          {"count", report.count},
          {"witnesses", witnesses},
          {"stability_bound", report.stability_bound},
          {"passes", report.passes}};
}

std::vector<CoreEdgeClass> classify_core_edges(const SubgraphModel& model, const Graph& core, double a_threshold,
                                               double b_threshold) {
  validate(model);
  if (model.pattern.order() != 3 || model.pattern.size() != 3)
    throw PreconditionError("classify_core_edges supports the triangle model only");
  if (core.order() != model.n) throw DomainError("core must live on [n]");
  const Rational& p = model.p;
  std::vector<CoreEdgeClass> out;
  for (const auto& e : core.edges()) {
    CoreEdgeClass c;
    c.edge = e;
    for (int w = 0; w < model.n; ++w) {
      if (w == e.u || w == e.v) continue;
      const int present = core.has_edge(e.u, w) + core.has_edge(e.v, w);
      if (present == 2) ++c.t2;
      else if (present == 1) ++c.t1;
    }
    c.t0 = model.n - 2 - c.t2 - c.t1;
    c.gain = edge_gain(model, core, e);
    c.decomposition = (1 - p) * (c.t2 + c.t1 * p + c.t0 * p * p);
    const int du = core.degree(e.u), dv = core.degree(e.v);
    c.inside_A = du >= a_threshold && dv >= a_threshold;
    c.endpoint_in_B = du >= b_threshold || dv >= b_threshold;
    out.push_back(std::move(c));
  }
  return out;
}

nlohmann::json to_json(const CoreCheck& check) {
  nlohmann::json j = {{"bias", check.bias},
                      {"size", check.size},
                      {"min_gain", check.min_gain},
                      {"is_core", check.holds()},
                      {"conditional_mean", to_fraction_string(check.conditional_mean)},
                      {"bias_threshold", to_fraction_string(check.bias_threshold)},
                      {"gain_threshold", to_fraction_string(check.gain_threshold)}};
  j["smallest_gain"] = check.smallest_gain ? nlohmann::json(to_fraction_string(*check.smallest_gain)) : nlohmann::json();
  return j;
}

nlohmann::json to_json(const CoreEdgeClass& c) {
  return {{"edge", {c.edge.u, c.edge.v}},
          {"t2", c.t2},
          {"t1", c.t1},
          {"t0", c.t0},
          {"gain", to_fraction_string(c.gain)},
          {"decomposition", to_fraction_string(c.decomposition)},
          {"inside_A", c.inside_A},
          {"endpoint_in_B", c.endpoint_in_B}};
}

}  // namespace uptail
