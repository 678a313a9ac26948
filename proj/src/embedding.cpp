#include "uptail/embedding.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "uptail/errors.hpp"

namespace uptail {

namespace {

// Vertex order for backtracking: BFS from the highest-degree vertex of each
// component, so that most vertices have a mapped neighbour when placed.
std::vector<int> search_order(const Graph& J, std::span<const std::pair<int, int>> fixed) {
  const int v = J.order();
  std::vector<char> placed(static_cast<std::size_t>(v), 0);
  std::vector<int> order;
  for (auto [j, g] : fixed) {
    (void)g;
    if (!placed[static_cast<std::size_t>(j)]) {
      placed[static_cast<std::size_t>(j)] = 1;
      order.push_back(j);
    }
  }
  std::size_t head = 0;
  while (static_cast<int>(order.size()) < v) {
    if (head == order.size()) {
      int best = -1;
      for (int u = 0; u < v; ++u)
        if (!placed[static_cast<std::size_t>(u)] && (best < 0 || J.degree(u) > J.degree(best))) best = u;
      placed[static_cast<std::size_t>(best)] = 1;
      order.push_back(best);
    }
    int u = order[head++];
    std::vector<int> next;
    J.neighbours(u).for_each([&](int w) {
      if (!placed[static_cast<std::size_t>(w)]) next.push_back(w);
    });
    std::stable_sort(next.begin(), next.end(), [&](int a, int b) { return J.degree(a) > J.degree(b); });
    for (int w : next) {
      placed[static_cast<std::size_t>(w)] = 1;
      order.push_back(w);
    }
  }
  return order;
}

struct Search {
  const Graph& J;
  const Graph& G;
  const std::function<void(std::span<const int>)>& visit;
  std::vector<int> order;
  std::vector<int> image;
  Bitset used;
  std::size_t n_fixed = 0;

  void run(std::size_t depth) {
    if (depth == order.size()) {
      visit(image);
      return;
    }
    const int j = order[depth];
    Bitset candidates(G.order());
    bool constrained = false;
    J.neighbours(j).for_each([&](int w) {
      int gw = image[static_cast<std::size_t>(w)];
      if (gw < 0) return;
      if (!constrained) {
        candidates = G.neighbours(gw);
        constrained = true;
      } else {
        candidates &= G.neighbours(gw);
      }
    });
    const int need = J.degree(j);
    auto try_vertex = [&](int g) {
      if (used.test(g) || G.degree(g) < need) return;
      image[static_cast<std::size_t>(j)] = g;
      used.set(g);
      run(depth + 1);
      used.reset(g);
      image[static_cast<std::size_t>(j)] = -1;
    };
    if (constrained) {
      candidates.for_each(try_vertex);
    } else {
      for (int g = 0; g < G.order(); ++g) try_vertex(g);
    }
  }
};

}  // namespace

void for_each_embedding(const Graph& J, const Graph& G,
                        const std::function<void(std::span<const int>)>& visit,
                        std::span<const std::pair<int, int>> fixed) {
  if (J.order() > G.order()) return;
  Search s{J, G, visit, search_order(J, fixed), std::vector<int>(static_cast<std::size_t>(J.order()), -1),
           Bitset(G.order()), 0};
  // Validate and apply the pre-assignment.
  for (auto [j, g] : fixed) {
    if (j < 0 || j >= J.order() || g < 0 || g >= G.order()) throw DomainError("fixed vertex out of range");
    auto& slot = s.image[static_cast<std::size_t>(j)];
    if (slot >= 0 && slot != g) return;
    if (slot < 0 && s.used.test(g)) return;
    if (G.degree(g) < J.degree(j)) return;
    slot = g;
    s.used.set(g);
  }
  std::set<int> fixed_vertices;
  for (auto [j, g] : fixed) fixed_vertices.insert(j);
  for (int a : fixed_vertices)
    for (int b : fixed_vertices)
      if (a < b && J.has_edge(a, b) &&
          !G.has_edge(s.image[static_cast<std::size_t>(a)], s.image[static_cast<std::size_t>(b)]))
        return;
  s.run(fixed_vertices.size());
}

std::uint64_t count_embeddings(const Graph& J, const Graph& G, std::span<const std::pair<int, int>> fixed) {
  std::uint64_t count = 0;
  for_each_embedding(J, G, [&](std::span<const int>) { ++count; }, fixed);
  return count;
}

std::uint64_t automorphism_count(const Graph& J) { return count_embeddings(J, J); }

std::uint64_t count_embeddings_through(const Graph& J, const Graph& G, Edge uv) {
  if (!G.has_edge(uv.u, uv.v)) return 0;
  // The preimage of uv is a unique oriented edge of J.
  std::uint64_t total = 0;
  for (const auto& ab : J.edges()) {
    std::pair<int, int> f1[2] = {{ab.u, uv.u}, {ab.v, uv.v}};
    std::pair<int, int> f2[2] = {{ab.u, uv.v}, {ab.v, uv.u}};
    total += count_embeddings(J, G, f1);
    total += count_embeddings(J, G, f2);
  }
  return total;
}

std::map<Edge, std::uint64_t> embeddings_per_edge(const Graph& J, const Graph& G) {
  std::map<Edge, std::uint64_t> out;
  for (const auto& e : G.edges()) out[e] = 0;
  const auto jedges = J.edges();
  for_each_embedding(J, G, [&](std::span<const int> image) {
    for (const auto& ab : jedges)
      ++out[Edge(image[static_cast<std::size_t>(ab.u)], image[static_cast<std::size_t>(ab.v)])];
  });
  return out;
}

EmbeddingCount enumerate_embeddings(const Graph& J, const Graph& G, std::optional<Edge> restrict_edge,
                                    bool with_per_edge) {
  EmbeddingCount result;
  const std::uint64_t aut = automorphism_count(J);
  if (restrict_edge) {
    result.total = count_embeddings_through(J, G, *restrict_edge);
    result.copies = result.total / aut;
    result.per_edge = std::map<Edge, std::uint64_t>{{*restrict_edge, result.copies}};
    return result;
  }
  if (with_per_edge) {
    auto per = embeddings_per_edge(J, G);
    for (auto& [e, c] : per) c /= aut;
    result.per_edge = std::move(per);
  }
  result.total = count_embeddings(J, G);
  result.copies = result.total / aut;
  return result;
}

std::uint64_t star_embeddings(const Graph& G, int s) {
  std::uint64_t total = 0;
  for (int v = 0; v < G.order(); ++v) {
    std::uint64_t f = 1;
    const int d = G.degree(v);
    for (int i = 0; i < s; ++i) f *= static_cast<std::uint64_t>(std::max(0, d - i));
    total += f;
  }
  return total;
}

std::vector<std::vector<Edge>> labelled_copies(const Graph& H) {
  const int v = H.order();
  std::vector<int> perm(static_cast<std::size_t>(v));
  std::iota(perm.begin(), perm.end(), 0);
  const auto edges = H.edges();
  std::set<std::vector<Edge>> seen;
  do {
    std::vector<Edge> mapped;
    mapped.reserve(edges.size());
    for (const auto& e : edges)
      mapped.emplace_back(perm[static_cast<std::size_t>(e.u)], perm[static_cast<std::size_t>(e.v)]);
    std::sort(mapped.begin(), mapped.end());
    seen.insert(std::move(mapped));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {seen.begin(), seen.end()};
}

std::string canonical_code(const Graph& g) {
  const int v = g.order();
  if (v > 9) throw DomainError("canonical_code supports at most 9 vertices");
  std::vector<int> perm(static_cast<std::size_t>(v));
  std::iota(perm.begin(), perm.end(), 0);
  // Cheap pruning: only permutations listing vertices by non-increasing degree.
  std::string best;
  bool have = false;
  do {
    bool sorted = true;
    for (int i = 0; i + 1 < v && sorted; ++i)
      if (g.degree(perm[static_cast<std::size_t>(i)]) < g.degree(perm[static_cast<std::size_t>(i + 1)])) sorted = false;
    if (!sorted) continue;
    std::string code(static_cast<std::size_t>(v * (v - 1) / 2), '0');
    std::size_t k = 0;
    for (int a = 0; a < v; ++a)
      for (int b = a + 1; b < v; ++b, ++k)
        if (g.has_edge(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)])) code[k] = '1';
    if (!have || code < best) {
      best = std::move(code);
      have = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::to_string(v) + ":" + best;
}

bool isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return false;
  return canonical_code(a) == canonical_code(b);
}

}  // namespace uptail
