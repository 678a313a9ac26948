#include "uptail/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>

#include "uptail/embedding.hpp"
#include "uptail/errors.hpp"

namespace uptail {

// ---------------------------------------------------------------------------
// Fractional independence

namespace {

struct DoubleCoverMatching {
  const Graph& J;
  std::vector<int> match_left;   // L_u -> x with L_u R_x matched
  std::vector<int> match_right;  // R_x -> u
  std::vector<char> seen;

  explicit DoubleCoverMatching(const Graph& g)
      : J(g),
        match_left(static_cast<std::size_t>(g.order()), -1),
        match_right(static_cast<std::size_t>(g.order()), -1) {
    for (int u = 0; u < J.order(); ++u) {
      seen.assign(static_cast<std::size_t>(J.order()), 0);
      augment(u);
    }
  }

  bool augment(int u) {
    for (int x : J.neighbours(u).members()) {
      if (seen[static_cast<std::size_t>(x)]) continue;
      seen[static_cast<std::size_t>(x)] = 1;
      if (match_right[static_cast<std::size_t>(x)] < 0 || augment(match_right[static_cast<std::size_t>(x)])) {
        match_left[static_cast<std::size_t>(u)] = x;
        match_right[static_cast<std::size_t>(x)] = u;
        return true;
      }
    }
    return false;
  }
};

}  // namespace

FracIndepResult fractional_independence(const Graph& J) {
  const int v = J.order();
  DoubleCoverMatching m(J);

  // König: Z = vertices reachable from unmatched left vertices by
  // alternating paths; I' = (L ∩ Z) ∪ (R \ Z) is a maximum independent set.
  std::vector<char> zl(static_cast<std::size_t>(v), 0), zr(static_cast<std::size_t>(v), 0);
  std::deque<int> queue;
  for (int u = 0; u < v; ++u)
    if (m.match_left[static_cast<std::size_t>(u)] < 0) {
      zl[static_cast<std::size_t>(u)] = 1;
      queue.push_back(u);
    }
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    J.neighbours(u).for_each([&](int x) {
      if (zr[static_cast<std::size_t>(x)]) return;
      zr[static_cast<std::size_t>(x)] = 1;
      int w = m.match_right[static_cast<std::size_t>(x)];
      if (w >= 0 && !zl[static_cast<std::size_t>(w)]) {
        zl[static_cast<std::size_t>(w)] = 1;
        queue.push_back(w);
      }
    });
  }

  FracIndepResult result;
  result.assignment.resize(static_cast<std::size_t>(v));
  int twice = 0;
  for (int u = 0; u < v; ++u) {
    int t = (zl[static_cast<std::size_t>(u)] ? 1 : 0) + (zr[static_cast<std::size_t>(u)] ? 0 : 1);
    result.assignment[static_cast<std::size_t>(u)] = Rational(t, 2);
    twice += t;
  }
  result.alpha_star = Rational(twice, 2);
  int matched = 0;
  for (int u = 0; u < v; ++u)
    if (m.match_left[static_cast<std::size_t>(u)] >= 0) ++matched;
  if (2 * v - matched != twice) throw std::logic_error("König set size disagrees with the matching");

  // Project the matching: arcs u -> match_left[u]. Every vertex has at most
  // one out-arc and one in-arc, so components are directed paths and cycles.
  std::vector<char> done(static_cast<std::size_t>(v), 0);
  auto succ = [&](int u) { return m.match_left[static_cast<std::size_t>(u)]; };
  auto pred = [&](int u) { return m.match_right[static_cast<std::size_t>(u)]; };
  for (int s = 0; s < v; ++s) {
    if (done[static_cast<std::size_t>(s)]) continue;
    // Walk back to a path start, or detect a cycle.
    int start = s;
    bool cycle = false;
    while (pred(start) >= 0) {
      start = pred(start);
      if (start == s) {
        cycle = true;
        break;
      }
    }
    std::vector<int> seq;
    int cur = start;
    do {
      seq.push_back(cur);
      done[static_cast<std::size_t>(cur)] = 1;
      cur = succ(cur);
    } while (cur >= 0 && cur != start);
    if (cycle) {
      for (int x : seq) result.V1.push_back(x);
      if (seq.size() == 2) {
        result.cover.push_back({std::min(seq[0], seq[1]), std::max(seq[0], seq[1])});
      } else {
        result.cover.push_back(seq);
      }
      continue;
    }
    if (seq.size() == 1) {
      result.V2.push_back(seq[0]);
      continue;
    }
    if (seq.size() % 2 == 0) throw std::logic_error("matching is not maximum: odd-length path in projection");
    // Even-length path: the smaller endpoint goes to V2, the rest is split
    // into consecutive edges.
    const bool drop_first = seq.front() < seq.back();
    const std::size_t begin = drop_first ? 1 : 0;
    result.V2.push_back(drop_first ? seq.front() : seq.back());
    for (std::size_t i = begin; i + 1 < begin + seq.size(); i += 2) {
      result.V1.push_back(seq[i]);
      result.V1.push_back(seq[i + 1]);
      result.cover.push_back({std::min(seq[i], seq[i + 1]), std::max(seq[i], seq[i + 1])});
    }
  }
  std::sort(result.V1.begin(), result.V1.end());
  std::sort(result.V2.begin(), result.V2.end());
  if (Rational(static_cast<int>(result.V1.size()), 2) + static_cast<int>(result.V2.size()) != result.alpha_star)
    throw std::logic_error("partition does not realise alpha*");
  return result;
}

Rational fractional_independence_bruteforce(const Graph& J) {
  const int v = J.order();
  std::vector<int> twice(static_cast<std::size_t>(v), 0);
  int best = 0;
  // Backtracking over {0,1,2}^v (twice the weights) with edge constraints.
  auto rec = [&](auto&& self, int i, int sum) -> void {
    if (i == v) {
      best = std::max(best, sum);
      return;
    }
    for (int t = 2; t >= 0; --t) {
      bool ok = true;
      J.neighbours(i).for_each([&](int w) {
        if (w < i && twice[static_cast<std::size_t>(w)] + t > 2) ok = false;
      });
      if (!ok) continue;
      twice[static_cast<std::size_t>(i)] = t;
      self(self, i + 1, sum + t);
    }
    twice[static_cast<std::size_t>(i)] = 0;
  };
  rec(rec, 0, 0);
  return Rational(best, 2);
}

// ---------------------------------------------------------------------------
// Embedding bounds

namespace {

struct Quantity {
  std::optional<Rational> exact;
  double approx = 0;
};

Quantity q_value(const Rational& x) { return {x, to_double(x)}; }

bool is_integer(const Rational& x) { return boost::multiprecision::denominator(x) == 1; }

Quantity q_pow(const Rational& base, const Rational& exponent) {
  if (is_integer(exponent)) {
    const BigInt e = boost::multiprecision::numerator(exponent);
    const long ei = e.convert_to<long>();
    if (ei >= 0) return q_value(pow(base, static_cast<unsigned>(ei)));
    if (base == 0) throw DomainError("negative power of zero");
    return q_value(1 / pow(base, static_cast<unsigned>(-ei)));
  }
  return {std::nullopt, std::pow(to_double(base), to_double(exponent))};
}

Quantity operator*(const Quantity& a, const Quantity& b) {
  Quantity out;
  if (a.exact && b.exact) {
    out.exact = *a.exact * *b.exact;
    out.approx = to_double(*out.exact);
  } else {
    out.approx = a.approx * b.approx;
  }
  return out;
}

bool within(std::uint64_t actual, const Quantity& bound) {
  if (bound.exact) return Rational(actual) <= *bound.exact;
  return static_cast<double>(actual) <= bound.approx * (1 + 1e-12);
}

void fill(BoundReport& report, std::uint64_t actual, const Quantity& bound) {
  report.actual = actual;
  report.bound = bound.approx;
  report.exact_bound = bound.exact;
  report.holds = within(actual, bound);
}

bool is_cycle(const Graph& J) {
  if (J.order() < 3 || !J.is_connected()) return false;
  for (int v = 0; v < J.order(); ++v)
    if (J.degree(v) != 2) return false;
  return true;
}

void require(bool condition, const std::string& hypothesis) {
  if (!condition) throw PreconditionError("hypothesis violated: " + hypothesis);
}

// Colour classes of a connected bipartite J with |A| < |B| and every vertex
// of A of degree Delta, if such a labelling exists.
std::optional<std::pair<std::vector<int>, std::vector<int>>> bipartite_sides(const Graph& J) {
  std::vector<int> side;
  if (!J.bipartition(side)) return std::nullopt;
  std::vector<int> c0, c1;
  for (int v = 0; v < J.order(); ++v) (side[static_cast<std::size_t>(v)] == 0 ? c0 : c1).push_back(v);
  const int delta = J.max_degree();
  auto full = [&](const std::vector<int>& s) {
    return std::all_of(s.begin(), s.end(), [&](int v) { return J.degree(v) == delta; });
  };
  if (c0.size() < c1.size() && full(c0)) return std::make_pair(c0, c1);
  if (c1.size() < c0.size() && full(c1)) return std::make_pair(c1, c0);
  return std::nullopt;
}

// Evaluates an edge-local bound over the given edges, keeping the edge with
// the largest actual/bound ratio.
template <class BoundFn>
void edge_local(BoundReport& report, const Graph& J, const Graph& G, const std::optional<Edge>& edge,
                BoundFn&& bound_for) {
  std::vector<Edge> edges;
  if (edge) {
    require(G.has_edge(edge->u, edge->v), "uv is an edge of G");
    edges.push_back(*edge);
  } else {
    edges = G.edges();
  }
  std::map<Edge, std::uint64_t> per_edge;
  if (edge) {
    per_edge[*edge] = count_embeddings_through(J, G, *edge);
  } else {
    per_edge = embeddings_per_edge(J, G);
  }
  report.holds = true;
  bool have = false;
  bool worst_fails = false;
  double worst = -1;
  for (const auto& e : edges) {
    const auto actual = per_edge[e];
    const Quantity bound = bound_for(e);
    const bool ok = within(actual, bound);
    const double ratio = bound.approx > 0 ? static_cast<double>(actual) / bound.approx
                                          : (actual > 0 ? INFINITY : 0.0);
    // Failing edges take precedence, then the largest ratio.
    const bool better = !have || (!ok && !worst_fails) || (!ok == worst_fails && ratio > worst);
    if (better) {
      report.actual = actual;
      report.bound = bound.approx;
      report.exact_bound = bound.exact;
      report.edge = e;
      worst = ratio;
      worst_fails = !ok;
      have = true;
    }
    report.holds = report.holds && ok;
  }
}

}  // namespace

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::cycle: return "cycle";
    case BoundKind::jor: return "jor";
    case BoundKind::edge_regular: return "edge_regular";
    case BoundKind::edge_bipartite: return "edge_bipartite";
    case BoundKind::bad_edges: return "bad_edges";
    case BoundKind::stars: return "stars";
  }
  return "?";
}

BoundKind bound_kind_from_string(const std::string& name) {
  for (auto k : {BoundKind::cycle, BoundKind::jor, BoundKind::edge_regular, BoundKind::edge_bipartite,
                 BoundKind::bad_edges, BoundKind::stars})
    if (to_string(k) == name) return k;
  throw DomainError("unknown bound kind '" + name + "'");
}

std::uint64_t star_embeddings_from(const Graph& G, const std::vector<int>& U, int s) {
  std::uint64_t total = 0;
  for (int u : U) {
    std::uint64_t f = 1;
    for (int i = 0; i < s; ++i) f *= static_cast<std::uint64_t>(std::max(0, G.degree(u) - i));
    total += f;
  }
  return total;
}

BoundReport embedding_bound(BoundKind kind, const Graph& J, const Graph& G, const BoundExtra& extra) {
  BoundReport report;
  report.kind = kind;
  const Rational twice_e(2 * G.size());
  switch (kind) {
    case BoundKind::cycle: {
      require(is_cycle(J), "J is a cycle C_l with l >= 3");
      fill(report, count_embeddings(J, G), q_pow(twice_e, Rational(J.order(), 2)));
      break;
    }
    case BoundKind::jor: {
      require(J.size() > 0, "J is nonempty");
      require(!J.has_isolated_vertex(), "J has no isolated vertices");
      const Rational alpha = fractional_independence(J).alpha_star;
      const Rational v(J.order());
      const Rational cap = std::min(twice_e, Rational(G.order()));
      fill(report, count_embeddings(J, G), q_pow(twice_e, v - alpha) * q_pow(cap, 2 * alpha - v));
      break;
    }
    case BoundKind::edge_regular: {
      require(J.size() > 0 && J.is_regular(), "J is a nonempty regular graph");
      const int delta = J.max_degree();
      const Rational exponent = Rational(J.order(), 2) - Rational(2 * delta - 1, delta);
      edge_local(report, J, G, extra.edge, [&](Edge e) {
        const Rational dd(4 * G.degree(e.u) * G.degree(e.v));
        return q_value(Rational(4 * J.size())) * q_pow(twice_e, exponent) * q_pow(dd, Rational(delta - 1, delta));
      });
      break;
    }
    case BoundKind::edge_bipartite: {
      require(J.size() > 0 && J.is_connected(), "J is nonempty and connected");
      auto sides = bipartite_sides(J);
      require(sides.has_value(), "J has a bipartition A,B with |A| < |B| and deg a = Delta on A");
      const int a = static_cast<int>(sides->first.size());
      const int b = static_cast<int>(sides->second.size());
      const Rational cap = std::min(Rational(G.size()), Rational(G.order()));
      edge_local(report, J, G, extra.edge, [&](Edge e) {
        return q_value(Rational(J.size() * (G.degree(e.u) + G.degree(e.v)))) * q_pow(twice_e, Rational(a - 1)) *
               q_pow(cap, Rational(b - a - 1));
      });
      break;
    }
    case BoundKind::bad_edges: {
      require(J.size() > 0 && J.is_regular(), "H is a nonempty regular graph");
      const Graph sub = extra.subgraph ? *extra.subgraph : G;
      require(sub.order() == G.order(), "G' lives on the vertex set of G");
      for (const auto& e : sub.edges()) require(G.has_edge(e.u, e.v), "G' is a subgraph of G");
      const int delta = J.max_degree();
      std::uint64_t actual = 0;
      if (sub.size() > 0) {
        auto per_edge = embeddings_per_edge(J, G);
        for (const auto& e : sub.edges()) actual += per_edge[e];
      }
      Quantity bound = q_value(Rational(J.size())) * q_pow(twice_e, Rational(J.order(), 2));
      if (G.size() > 0) bound = bound * q_pow(Rational(sub.size(), G.size()), Rational(1, delta));
      fill(report, actual, bound);
      break;
    }
    case BoundKind::stars: {
      require(extra.stars.has_value(), "stars bound needs (q, s)");
      const auto& args = *extra.stars;
      std::vector<int> U;
      if (args.U) {
        U = *args.U;
      } else {
        std::vector<int> side;
        require(G.bipartition(side), "G is bipartite");
        for (int v = 0; v < G.order(); ++v)
          if (side[static_cast<std::size_t>(v)] == 0) U.push_back(v);
      }
      Bitset inU(G.order());
      for (int u : U) inU.set(u);
      for (const auto& e : G.edges())
        require(inU.test(e.u) != inU.test(e.v), "G is bipartite with parts U and V");
      const int vsize = G.order() - static_cast<int>(U.size());
      require(args.s >= 2, "s >= 2");
      require(args.q > 0 && args.q <= static_cast<int>(U.size()), "q lies in (0, |U|]");
      require(Rational(G.size()) <= args.q * vsize, "e_G <= q|V|");
      const BigInt fl = boost::multiprecision::numerator(args.q) / boost::multiprecision::denominator(args.q);
      const Rational frac = args.q - Rational(fl);
      const Rational bound = (Rational(fl) + pow(frac, static_cast<unsigned>(args.s))) *
                             pow(Rational(vsize), static_cast<unsigned>(args.s));
      fill(report, star_embeddings_from(G, U, args.s), q_value(bound));
      break;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Q_H family

bool has_full_degree_side(const Graph& J, int delta) {
  const int v = J.order();
  std::vector<int> colour(static_cast<std::size_t>(v), -1);
  for (int s = 0; s < v; ++s) {
    if (colour[static_cast<std::size_t>(s)] >= 0) continue;
    std::vector<int> comp{s};
    colour[static_cast<std::size_t>(s)] = 0;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      const int u = comp[i];
      bool clash = false;
      J.neighbours(u).for_each([&](int w) {
        auto& cw = colour[static_cast<std::size_t>(w)];
        if (cw < 0) {
          cw = 1 - colour[static_cast<std::size_t>(u)];
          comp.push_back(w);
        } else if (cw == colour[static_cast<std::size_t>(u)]) {
          clash = true;
        }
      });
      if (clash) return false;
    }
    bool side_full[2] = {true, true};
    for (int u : comp)
      if (J.degree(u) != delta) side_full[colour[static_cast<std::size_t>(u)]] = false;
    if (!side_full[0] && !side_full[1]) return false;
  }
  return true;
}

std::vector<Graph> q_family(const Graph& H) {
  if (H.size() == 0 || !H.is_connected() || !H.is_regular())
    throw PreconditionError("hypothesis violated: H is connected and regular");
  const auto edges = H.edges();
  if (edges.size() > 24) throw BudgetError("q_family enumerates 2^{e_H} subgraphs; e_H <= 24 supported");
  const int delta = H.max_degree();
  std::map<std::string, Graph> classes;
  const std::uint64_t full = (std::uint64_t{1} << edges.size()) - 1;
  for (std::uint64_t mask = 1; mask <= full; ++mask) {
    Graph J(H.order());
    for (std::size_t i = 0; i < edges.size(); ++i)
      if ((mask >> i) & 1U) J.add_edge(edges[i].u, edges[i].v);
    J = J.without_isolated_vertices();
    if (mask != full && !has_full_degree_side(J, delta)) continue;
    auto code = canonical_code(J);
    classes.emplace(code, std::move(J));
  }
  std::vector<Graph> out;
  for (auto& [code, g] : classes) out.push_back(std::move(g));
  return out;
}

// ---------------------------------------------------------------------------
// Stability extractor

std::optional<DenseExtraction> extract_dense_subgraph(const Graph& G, int r, std::optional<double> threshold) {
  if (r < 3) throw DomainError("r must be at least 3");
  const int e = G.size();
  if (e == 0) return std::nullopt;
  const double two_e = 2.0 * e;
  const double emb = static_cast<double>(count_embeddings(graphs::complete(r), G));
  double eps = 1.0 - emb / std::pow(two_e, r / 2.0);
  eps = std::max(eps, 1.0 / std::sqrt(static_cast<double>(e)));
  const double guarantee = (1.0 - 4.0 * std::sqrt(eps)) * std::sqrt(two_e);
  if (!threshold && guarantee <= 0) return std::nullopt;
  const double eps_p4 = (r % 2 == 1) ? 3.0 * eps : eps;
  const double cut = threshold ? *threshold : (1.0 - 2.0 * std::sqrt(eps_p4)) * e;

  // Auxiliary graph F on E(G): uv ~ xy when disjoint and {u,v,x,y} spans K_4.
  const auto edges = G.edges();
  std::map<Edge, int> index;
  for (std::size_t i = 0; i < edges.size(); ++i) index[edges[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> f_adj(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto common = (G.neighbours(edges[i].u) & G.neighbours(edges[i].v)).members();
    for (std::size_t a = 0; a < common.size(); ++a)
      for (std::size_t b = a + 1; b < common.size(); ++b)
        if (G.has_edge(common[a], common[b])) f_adj[i].push_back(index.at(Edge(common[a], common[b])));
  }
  std::vector<int> degree(edges.size());
  std::vector<char> alive(edges.size(), 1);
  std::deque<int> queue;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    degree[i] = static_cast<int>(f_adj[i].size());
    if (degree[i] < cut) {
      alive[i] = 0;
      queue.push_back(static_cast<int>(i));
    }
  }
  while (!queue.empty()) {
    int i = queue.front();
    queue.pop_front();
    for (int j : f_adj[static_cast<std::size_t>(i)]) {
      if (!alive[static_cast<std::size_t>(j)]) continue;
      if (--degree[static_cast<std::size_t>(j)] < cut) {
        alive[static_cast<std::size_t>(j)] = 0;
        queue.push_back(j);
      }
    }
  }
  Bitset keep(G.order());
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (alive[i]) {
      keep.set(edges[i].u);
      keep.set(edges[i].v);
    }
  if (keep.none()) return std::nullopt;
  DenseExtraction out;
  out.vertices = keep.members();
  out.subgraph = G.induced(out.vertices);
  out.eps = eps;
  out.guarantee = guarantee;
  out.threshold = cut;
  return out;
}

// ---------------------------------------------------------------------------
// High-degree split

SplitResult split_high_degree(const Graph& G, double theta, int r) {
  if (!(theta > 0)) throw DomainError("theta must be positive");
  if (r < 3) throw DomainError("r must be at least 3");
  SplitResult out;
  Bitset inU(G.order());
  for (int v = 0; v < G.order(); ++v) {
    if (G.degree(v) >= theta) {
      out.U.push_back(v);
      inU.set(v);
    } else {
      out.V.push_back(v);
    }
  }
  auto& rep = out.report;
  const Graph kr = graphs::complete(r);
  rep.emb_kr = count_embeddings(kr, G);
  rep.emb_kr_inside_v = count_embeddings(kr, G.induced(out.V));
  const double emb_kr1 = static_cast<double>(count_embeddings(graphs::complete(r - 1), G));
  const double u = static_cast<double>(out.U.size());
  const double n = G.order();
  rep.kr_loss_bound = r * u * emb_kr1;
  rep.u_size_bound = 2.0 * G.size() / theta;
  const int s = r - 1;
  auto falling = [s](int d) {
    std::uint64_t f = 1;
    for (int i = 0; i < s; ++i) f *= static_cast<std::uint64_t>(std::max(0, d - i));
    return f;
  };
  rep.emb_star = star_embeddings(G, s);
  for (int x : out.U) {
    const int to_v = G.degree(x) - G.neighbours(x).intersection_count(inU);
    rep.emb_star_u += falling(to_v);
    rep.t1 += falling(G.degree(x)) - falling(to_v);
  }
  for (int x : out.V) rep.t2 += falling(G.degree(x));
  rep.t1_bound = (r - 1) * u * u * std::pow(n, r - 2);
  rep.t2_bound = (r - 1) * 2.0 * G.size() * std::pow(theta, r - 2);
  rep.kr_identity_holds = static_cast<double>(rep.emb_kr - rep.emb_kr_inside_v) <= rep.kr_loss_bound;
  rep.u_size_holds = u <= rep.u_size_bound * (1 + 1e-12);
  rep.star_identity_holds = rep.emb_star == rep.emb_star_u + rep.t1 + rep.t2;
  rep.t_bounds_hold = static_cast<double>(rep.t1) <= rep.t1_bound && static_cast<double>(rep.t2) <= rep.t2_bound;
  return out;
}

// ---------------------------------------------------------------------------
// Star witness

std::optional<StarWitness> star_witness(const Graph& G, const std::vector<int>& U, const Rational& q, int s,
                                        double eps) {
  Bitset inU(G.order());
  for (int u : U) {
    if (u < 0 || u >= G.order()) throw PreconditionError("part U contains a vertex outside G");
    inU.set(u);
  }
  for (const auto& e : G.edges())
    if (inU.test(e.u) == inU.test(e.v))
      throw PreconditionError("G is not bipartite with the given parts: edge " + std::to_string(e.u) + "-" +
                              std::to_string(e.v) + " lies inside a part");
  if (s < 2) throw PreconditionError("hypothesis violated: s >= 2");
  if (!(q > 0) || q > static_cast<int>(U.size())) throw PreconditionError("hypothesis violated: q lies in (0, |U|]");
  const int vsize = G.order() - static_cast<int>(U.size());
  std::vector<int> order = U;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return G.degree(a) != G.degree(b) ? G.degree(a) > G.degree(b) : a < b;
  });
  const BigInt ceil_q = (boost::multiprecision::numerator(q) + boost::multiprecision::denominator(q) - 1) /
                        boost::multiprecision::denominator(q);
  StarWitness w;
  w.W.assign(order.begin(), order.begin() + ceil_q.convert_to<long>());
  long cut = 0;
  for (int x : w.W) {
    cut += G.degree(x);
    if (G.degree(x) >= (1 - eps) * vsize) w.W_prime.push_back(x);
  }
  std::sort(w.W.begin(), w.W.end());
  const double need_cut = (1 - eps) * to_double(q) * vsize;
  const auto need_size = static_cast<std::size_t>(std::floor((1 - eps) * static_cast<double>(w.W.size())));
  if (static_cast<double>(cut) < need_cut || w.W_prime.size() < need_size) return std::nullopt;
  std::sort(w.W_prime.begin(), w.W_prime.end());
  return w;
}

// ---------------------------------------------------------------------------

nlohmann::json to_json(const FracIndepResult& r) {
  nlohmann::json assignment = nlohmann::json::array();
  for (const auto& a : r.assignment) assignment.push_back(to_fraction_string(a));
  return {{"alpha_star", to_fraction_string(r.alpha_star)},
          {"assignment", assignment},
          {"V1", r.V1},
          {"V2", r.V2},
          {"cover", r.cover}};
}

nlohmann::json to_json(const BoundReport& r) {
  nlohmann::json j = {{"kind", to_string(r.kind)}, {"bound", r.bound}, {"actual", r.actual}, {"holds", r.holds}};
  if (r.exact_bound) j["exact_bound"] = to_fraction_string(*r.exact_bound);
  if (r.edge) j["edge"] = {r.edge->u, r.edge->v};
  return j;
}

}  // namespace uptail
