#include "uptail/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "uptail/ap.hpp"
#include "uptail/cores.hpp"
#include "uptail/errors.hpp"
#include "uptail/extremal.hpp"
#include "uptail/graph.hpp"
#include "uptail/model.hpp"
#include "uptail/moments.hpp"
#include "uptail/montecarlo.hpp"
#include "uptail/variational.hpp"

namespace uptail {

namespace {

using nlohmann::json;

double parse_real(const std::string& text) {
  if (text == "inf" || text == "+inf") return kInfinity;
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw DomainError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw DomainError("not a number: '" + text + "'");
  return v;
}

json real_json(double v) { return std::isinf(v) ? json(v > 0 ? "inf" : "-inf") : json(v); }

std::string format_g17(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& part : split(text, ','))
    if (!part.empty()) out.push_back(static_cast<int>(parse_real(part)));
  return out;
}

// Named patterns: K<r>, C<n>, P<n>, S<s> (star with s leaves); otherwise
// graph6 or adjacency JSON.
Graph parse_pattern(const std::string& text) {
  if (text.size() >= 2 && std::string("KCPS").find(text[0]) != std::string::npos &&
      std::all_of(text.begin() + 1, text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    const int a = std::stoi(text.substr(1));
    switch (text[0]) {
      case 'K': return graphs::complete(a);
      case 'C': return graphs::cycle(a);
      case 'P': return graphs::path(a);
      default: return graphs::star(a);
    }
  }
  return parse_graph(text);
}

struct ModelOpts {
  std::string kind = "triangles";
  std::string pattern;
  int n = 0;
  int N = 0;
  int k = 3;
  std::string p;

  void add(CLI::App* app) {
    app->add_option("--model", kind, "triangles | subgraph | induced | ap")
        ->check(CLI::IsMember({"triangles", "subgraph", "induced", "ap"}));
    app->add_option("--pattern", pattern, "pattern graph: K3, C4, P3, S2, graph6 or JSON");
    app->add_option("--n", n, "host vertices (graph models)");
    app->add_option("--N", N, "ground set size (ap)");
    app->add_option("--k", k, "progression length (ap)");
    app->add_option("--p", p, "edge or element probability, a/b or decimal")->required();
  }

  Model build() const {
    const Rational prob = parse_rational(p);
    Model m;
    if (kind == "ap") {
      m = ApModel{N, k, prob};
    } else if (kind == "triangles") {
      m = SubgraphModel{graphs::complete(3), n, prob};
    } else {
      if (pattern.empty()) throw DomainError("--pattern is required for --model " + kind);
      if (kind == "subgraph") m = SubgraphModel{parse_pattern(pattern), n, prob};
      else m = InducedSubgraphModel{parse_pattern(pattern), n, prob};
    }
    validate(m);
    return m;
  }
};

bool is_graph_model(const Model& m) { return !std::holds_alternative<ApModel>(m); }

int graph_order(const Model& m) {
  return std::visit(
      [](const auto& x) -> int {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, ApModel>) return 0;
        else return x.n;
      },
      m);
}

// Conditioning set given as a graph (graph models) or a list of elements (ap).
Mask parse_conditioning(const Model& m, const std::string& text) {
  if (is_graph_model(m)) {
    const Graph g = parse_graph(text);
    if (g.order() != graph_order(m)) throw DomainError("graph must have exactly n vertices");
    return edge_mask(g);
  }
  const auto elements = parse_int_list(text);
  for (int e : elements)
    if (e < 1 || e > model_coordinates(m)) throw DomainError("element outside [N]");
  return set_mask(elements);
}

json mask_json(const Model& m, Mask mask) {
  if (is_graph_model(m)) return graph_to_json(graph_from_mask(mask, graph_order(m)));
  return mask_elements(mask);
}

json fractions(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(to_fraction_string(q));
  return a;
}

void print(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

}  // namespace

std::vector<double> parse_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) return {parse_real(parts[0])};
  if (parts.size() != 3) throw DomainError("range must be start:stop:step");
  const double a = parse_real(parts[0]), b = parse_real(parts[1]), s = parse_real(parts[2]);
  if (!std::isfinite(a) || !std::isfinite(b) || !(s > 0) || !std::isfinite(s) || b < a)
    throw DomainError("range needs finite start <= stop and a positive step");
  const auto count = static_cast<long>(std::floor((b - a) / s + 1e-9)) + 1;
  std::vector<double> out;
  for (long i = 0; i < count; ++i) out.push_back(a + static_cast<double>(i) * s);
  return out;
}

void emit_phase_diagram(int r, const std::vector<double>& deltas, const std::vector<double>& cs, std::ostream& out) {
  out << "delta,c,phi,argmin_label\n";
  for (double d : deltas)
    for (double c : cs) {
      const auto m = phi_clique_hub(r, d, c);
      out << format_g17(d) << ',' << format_g17(c) << ',' << format_g17(m.phi) << ',' << argmin_label(m) << '\n';
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"upper-tail large deviation toolkit", "uptail"};
  app.require_subcommand(1);
  std::function<void()> action;

  // rate ---------------------------------------------------------------
  auto* rate = app.add_subcommand("rate", "variational rate formulas")->require_subcommand(1);
  int r = 3;
  std::string delta_s, c_s = "inf";
  double mean = 0;
  auto* rate_clique = rate->add_subcommand("clique", "phi_r(delta, c) over the clique/hub candidates");
  rate_clique->add_option("--r", r)->required();
  rate_clique->add_option("--delta", delta_s)->required();
  rate_clique->add_option("--c", c_s, "0, a positive number or inf");
  rate_clique->callback([&] {
    action = [&] {
      const double d = parse_real(delta_s), c = parse_real(c_s);
      const auto m = phi_clique_hub(r, d, c);
      print(out, {{"r", r},
                  {"delta", d},
                  {"c", real_json(c)},
                  {"phi", real_json(m.phi)},
                  {"argmins", m.argmins},
                  {"x_star", m.x_star},
                  {"label", argmin_label(m)}});
    };
  });
  std::string pattern_s;
  auto* rate_regular = rate->add_subcommand("regular", "rate for a connected regular pattern, c in {0, inf}");
  rate_regular->add_option("--pattern", pattern_s)->required();
  rate_regular->add_option("--delta", delta_s)->required();
  rate_regular->add_option("--c", c_s, "0 or inf");
  rate_regular->callback([&] {
    action = [&] {
      const auto rr = regular_rate(parse_pattern(pattern_s), parse_real(delta_s), parse_real(c_s));
      print(out, {{"clique", rr.clique}, {"theta", rr.theta}, {"rate", rr.rate}});
    };
  });
  int N = 0, k = 3;
  std::string p_s;
  auto* rate_ap = rate->add_subcommand("ap", "sqrt(delta) N p^{k/2} log(1/p)");
  rate_ap->add_option("--N", N)->required();
  rate_ap->add_option("--k", k);
  rate_ap->add_option("--p", p_s)->required();
  rate_ap->add_option("--delta", delta_s)->required();
  rate_ap->callback([&] {
    action = [&] { print(out, {{"rate", ap_rate(N, k, parse_real(p_s), parse_real(delta_s))}}); };
  });
  auto* rate_poisson = rate->add_subcommand("poisson", "((1+delta)log(1+delta) - delta) * mean");
  rate_poisson->add_option("--delta", delta_s)->required();
  rate_poisson->add_option("--mean", mean)->required();
  rate_poisson->callback([&] { action = [&] { print(out, {{"rate", poisson_rate(parse_real(delta_s), mean)}}); }; });

  // phi ----------------------------------------------------------------
  ModelOpts mo;
  std::uint64_t budget = 10'000'000;
  std::string kind_s;
  auto* phi = app.add_subcommand("phi", "exact and constructive Phi_X(delta)")->require_subcommand(1);
  auto search = [&](bool subcube) {
    action = [&, subcube] {
      const Model model = mo.build();
      const Rational delta = parse_rational(delta_s);
      try {
        print(out, to_json(subcube ? phi_subcube_bruteforce(model, delta, budget)
                                   : phi_bruteforce(model, delta, budget)));
      } catch (const SearchBudgetError& e) {
        if (e.best()) print(out, {{"best_so_far", to_json(*e.best())}});
        throw;
      }
    };
  };
  for (const auto& [name, subcube] : {std::pair{"brute", false}, std::pair{"subcube", true}}) {
    auto* sub = phi->add_subcommand(name, subcube ? "cheapest feasible subcube" : "smallest feasible set");
    mo.add(sub);
    sub->add_option("--delta", delta_s)->required();
    sub->add_option("--budget", budget);
    sub->callback([&, subcube = subcube] { search(subcube); });
  }
  auto* construct = phi->add_subcommand("construct", "planted clique, hub or interval");
  mo.add(construct);
  construct->add_option("--delta", delta_s)->required();
  construct->add_option("--kind", kind_s)->required()->check(CLI::IsMember({"clique", "hub", "interval"}));
  construct->callback([&] {
    action = [&] {
      print(out, to_json(build_construction(construction_kind_from_string(kind_s), mo.build(),
                                            parse_rational(delta_s))));
    };
  });

  // dist ---------------------------------------------------------------
  auto* dist = app.add_subcommand("dist", "exact distributions")->require_subcommand(1);
  auto* dist_exact = dist->add_subcommand("exact", "pmf of X over all 2^N outcomes");
  mo.add(dist_exact);
  std::string threshold_s;
  dist_exact->add_option("--at-least", threshold_s, "also report P(X >= value)");
  dist_exact->callback([&] {
    action = [&] {
      const Model model = mo.build();
      const auto d = exact_distribution(model);
      json j = {{"model", model_name(model)},
                {"N", d.N},
                {"outcomes", std::uint64_t{1} << d.N},
                {"mean", to_fraction_string(d.mean())},
                {"pmf", to_json(d)}};
      if (!threshold_s.empty()) j["tail"] = to_fraction_string(d.tail(parse_rational(threshold_s)));
      print(out, j);
    };
  });

  // moments ------------------------------------------------------------
  auto* moments = app.add_subcommand("moments", "factorial moments, Markov bound, cluster census");
  mo.add(moments);
  int t_max = 4, markov_t = 0, census = 0;
  std::uint64_t tuple_budget = 5'000'000;
  moments->add_option("--t-max", t_max);
  moments->add_option("--tuple-budget", tuple_budget);
  moments->add_option("--delta", delta_s, "with --markov-t: the Markov bound at (1+delta)E[X]");
  moments->add_option("--markov-t", markov_t);
  moments->add_option("--census", census, "print the cluster census CSV up to this size instead");
  moments->add_option("--budget", budget, "census budget");
  moments->callback([&] {
    action = [&] {
      const Model model = mo.build();
      if (census > 0) {
        Hypergraph H = std::visit(
            [](const auto& m) -> Hypergraph {
              using T = std::decay_t<decltype(m)>;
              if constexpr (std::is_same_v<T, ApModel>) return ap_hypergraph(m.N, m.k);
              else if constexpr (std::is_same_v<T, SubgraphModel>) return copy_hypergraph(m.pattern, m.n);
              else throw DomainError("the cluster census needs a monotone model");
            },
            model);
        const auto c = dependency_clusters(H, model_p(model), census, budget);
        out << census_csv(c);
        if (!c.complete) {
          err << "census stopped at the budget; rows are partial\n";
          throw BudgetError("cluster census budget exhausted");
        }
        return;
      }
      const auto cube = to_hypercube(model);
      const auto fm = factorial_moments(cube, t_max, tuple_budget);
      const Rational mu = cube.mean();
      std::vector<Rational> poisson;
      json deviation = json::array();
      for (int t = 0; t <= t_max; ++t) {
        poisson.push_back(pow(mu, static_cast<unsigned>(t)));
        const Rational& mt = fm.from_distribution[static_cast<std::size_t>(t)];
        deviation.push_back(mu > 0 ? to_double(abs(mt - poisson.back()) / poisson.back()) : 0.0);
      }
      json j = {{"model", model_name(model)},
                {"mean", to_fraction_string(mu)},
                {"factorial_moments", fractions(fm.from_distribution)},
                {"tuple_sum", fm.tuple_sum ? fractions(*fm.tuple_sum) : json()},
                {"poisson_reference", fractions(poisson)},
                {"relative_deviation", deviation}};
      if (markov_t > 0) {
        if (delta_s.empty()) throw DomainError("--markov-t needs --delta");
        const auto b = poisson_markov_bound(exact_distribution(cube), parse_rational(delta_s), markov_t);
        j["markov"] = {{"t", markov_t},
                       {"bound", real_json(b.bound)},
                       {"exact_neg_log_tail", real_json(b.exact_neg_log_tail)},
                       {"tail", to_fraction_string(b.tail)},
                       {"moment", to_fraction_string(b.moment)},
                       {"falling", to_fraction_string(b.falling)},
                       {"holds", b.holds}};
      }
      print(out, j);
    };
  });

  // cores --------------------------------------------------------------
  auto* cores = app.add_subcommand("cores", "core enumeration and extraction")->require_subcommand(1);
  std::string eps_s;
  double K = 1, phi_plus = 1;
  int m_size = 0;
  auto* enumerate = cores->add_subcommand("enumerate", "count cores of one size");
  mo.add(enumerate);
  enumerate->add_option("--delta", delta_s)->required();
  enumerate->add_option("--eps", eps_s)->required();
  enumerate->add_option("--K", K)->required();
  enumerate->add_option("--phi-plus", phi_plus)->required();
  enumerate->add_option("--m", m_size)->required();
  enumerate->add_option("--budget", budget);
  enumerate->callback([&] {
    action = [&] {
      const Model model = mo.build();
      const CoreParams params{parse_rational(delta_s), parse_rational(eps_s), K, phi_plus};
      try {
        print(out, to_json(enumerate_cores(to_hypercube(model), params, m_size, budget), model));
      } catch (const CoreBudgetError& e) {
        print(out, {{"partial_count", e.partial_count()}});
        throw;
      }
    };
  });
  std::string set_s, s_s;
  auto* extract = cores->add_subcommand("extract", "peel low-gain elements");
  mo.add(extract);
  extract->add_option("--set", set_s, "graph (graph models) or comma-separated elements")->required();
  extract->add_option("--s", s_s)->required();
  extract->callback([&] {
    action = [&] {
      const Model model = mo.build();
      const auto cube = to_hypercube(model);
      const Mask I = parse_conditioning(model, set_s);
      const Rational s = parse_rational(s_s);
      if (s < 0) throw DomainError("s must be nonnegative");
      const Mask J = extract_core(cube, I, s);
      print(out, {{"input_mean", to_fraction_string(cube.conditional(I))},
                  {"core", mask_json(model, J)},
                  {"core_size", std::popcount(J)},
                  {"core_mean", to_fraction_string(cube.conditional(J))}});
    };
  });

  // mc -----------------------------------------------------------------
  auto* mc = app.add_subcommand("mc", "Monte Carlo")->require_subcommand(1);
  std::uint64_t samples = 100'000, seed = 1;
  std::string plant_s;
  auto* sample = mc->add_subcommand("sample", "estimate P(X >= (1+delta)E[X])");
  mo.add(sample);
  sample->add_option("--delta", delta_s)->required();
  sample->add_option("--samples", samples);
  sample->add_option("--seed", seed);
  sample->add_option("--plant", plant_s, "graph (graph models) or comma-separated elements");
  sample->callback([&] {
    action = [&] {
      const Model model = mo.build();
      McConfig cfg{model, parse_rational(delta_s), samples, seed, {}};
      if (!plant_s.empty()) {
        if (is_graph_model(model)) {
          const Graph g = parse_graph(plant_s);
          if (g.order() != graph_order(model)) throw DomainError("plant must have exactly n vertices");
          for (const Edge& e : g.edges()) cfg.plant.push_back(pair_index(e.u, e.v, g.order()));
        } else {
          for (int e : parse_int_list(plant_s)) cfg.plant.push_back(e - 1);
        }
      }
      print(out, to_json(sample_tail(cfg)));
    };
  });
  std::string graph_s, event_s;
  double eps_d = 0.1, x_d = 0, p_d = 0;
  auto* detect = mc->add_subcommand("detect", "certify the clique or hub event in a graph");
  detect->add_option("--graph", graph_s)->required();
  detect->add_option("--event", event_s)->required()->check(CLI::IsMember({"clique", "hub"}));
  detect->add_option("--eps", eps_d)->required();
  detect->add_option("--x", x_d)->required();
  detect->add_option("--p", p_d)->required();
  detect->add_option("--r", r);
  detect->callback([&] {
    action = [&] {
      const Graph g = parse_graph(graph_s);
      const auto U = event_s == "clique" ? detect_clique_event(g, eps_d, x_d, p_d, r)
                                         : detect_hub_event(g, eps_d, x_d, p_d, r);
      print(out, {{"event", event_s}, {"found", U.has_value()}, {"U", U ? json(*U) : json()}});
    };
  });

  // check --------------------------------------------------------------
  auto* check = app.add_subcommand("check", "exact verification of inequalities")->require_subcommand(1);
  auto* ext = check->add_subcommand("extremal-ap", "A_k(I) <= A_k([|I|]) over all subsets of [N]");
  ext->add_option("--N", N)->required();
  ext->add_option("--k", k);
  ext->callback([&] {
    action = [&] {
      const auto scan = scan_extremal_ap(N, k);
      print(out, {{"N", N},
                  {"k", k},
                  {"subsets", scan.subsets},
                  {"violations", scan.violations},
                  {"equalities", scan.equalities},
                  {"first_violation", scan.first_violation ? json(*scan.first_violation) : json()},
                  {"holds", scan.violations == 0}});
    };
  });
  std::string J_s, G_s, edge_s, sub_s, q_s, U_s;
  int s_int = 2;
  auto* bounds = check->add_subcommand("bounds", "embedding-count bounds against brute force");
  bounds->add_option("--kind", kind_s)->required();
  bounds->add_option("--J", J_s)->required();
  bounds->add_option("--G", G_s)->required();
  bounds->add_option("--edge", edge_s, "u,v for the edge-local kinds");
  bounds->add_option("--subgraph", sub_s, "G' for bad_edges");
  bounds->add_option("--q", q_s, "stars: q");
  bounds->add_option("--s", s_int, "stars: s");
  bounds->add_option("--U", U_s, "stars: comma-separated part U");
  bounds->callback([&] {
    action = [&] {
      BoundExtra extra;
      if (!edge_s.empty()) {
        const auto uv = parse_int_list(edge_s);
        if (uv.size() != 2) throw DomainError("--edge takes u,v");
        extra.edge = Edge(uv[0], uv[1]);
      }
      if (!sub_s.empty()) extra.subgraph = parse_graph(sub_s);
      if (!q_s.empty()) {
        StarsArgs st{parse_rational(q_s), s_int, std::nullopt};
        if (!U_s.empty()) st.U = parse_int_list(U_s);
        extra.stars = st;
      }
      print(out, to_json(embedding_bound(bound_kind_from_string(kind_s), parse_pattern(J_s), parse_pattern(G_s), extra)));
    };
  });
  auto* alpha = check->add_subcommand("alpha", "fractional independence via the double cover");
  alpha->add_option("--graph", graph_s)->required();
  alpha->callback([&] {
    action = [&] {
      const Graph g = parse_pattern(graph_s);
      json j = to_json(fractional_independence(g));
      if (g.order() <= 12) {
        const Rational brute = fractional_independence_bruteforce(g);
        j["bruteforce"] = to_fraction_string(brute);
        j["agrees"] = brute == fractional_independence(g).alpha_star;
      }
      print(out, j);
    };
  });
  int ell = 1;
  auto* stability = check->add_subcommand("stability", "tail without a dense conditioning set");
  mo.add(stability);
  stability->add_option("--delta", delta_s)->required();
  stability->add_option("--eps", eps_s)->required();
  stability->add_option("--ell", ell)->required();
  stability->callback([&] {
    action = [&] {
      const auto s = stability_check(to_hypercube(mo.build()), parse_rational(delta_s), parse_rational(eps_s), ell);
      print(out, {{"family_size", s.family_size},
                  {"lhs", to_fraction_string(s.lhs)},
                  {"rhs", to_fraction_string(s.rhs)},
                  {"holds", s.holds}});
    };
  });
  int t_int = 0;
  std::string family_s;
  auto* janson = check->add_subcommand("janson", "lower tail for a uniform s-subset of {0..t-1}");
  janson->add_option("--t", t_int)->required();
  janson->add_option("--s", s_int)->required();
  janson->add_option("--eps", eps_s)->required();
  janson->add_option("--family", family_s, "sets separated by ';', elements by ','");
  janson->callback([&] {
    action = [&] {
      std::vector<std::vector<int>> family;
      for (const auto& part : split(family_s, ';'))
        if (!part.empty()) family.push_back(parse_int_list(part));
      const auto jc = hypergeometric_janson_check(family, t_int, s_int, parse_rational(eps_s));
      print(out, {{"mu", to_fraction_string(jc.mu)},
                  {"Delta", to_fraction_string(jc.Delta)},
                  {"exact_prob", to_fraction_string(jc.exact_prob)},
                  {"bound", jc.bound},
                  {"holds", jc.holds}});
    };
  });

  // phase-diagram ------------------------------------------------------
  std::string deltas_s, cs_s, out_path;
  auto* phase = app.add_subcommand("phase-diagram", "CSV of phi_r and its minimiser over a (delta, c) grid");
  phase->add_option("--r", r)->required();
  phase->add_option("--delta", deltas_s, "start:stop:step")->required();
  phase->add_option("--c", cs_s, "start:stop:step")->required();
  phase->add_option("--out", out_path, "output file (default stdout)");
  phase->callback([&] {
    action = [&] {
      const auto deltas = parse_range(deltas_s), cs = parse_range(cs_s);
      if (out_path.empty()) {
        emit_phase_diagram(r, deltas, cs, out);
        return;
      }
      std::ofstream file(out_path);
      if (!file) throw std::runtime_error("cannot write " + out_path);
      emit_phase_diagram(r, deltas, cs, file);
      if (!file) throw std::runtime_error("write failed for " + out_path);
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (!action) {
    err << "usage error: no command\n";
    return kExitUsage;
  }
  try {
    action();
    return kExitOk;
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "precondition: " << e.what() << '\n';
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "input error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitOther;
  }
}

}  // namespace uptail
