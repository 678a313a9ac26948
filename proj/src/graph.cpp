#include "uptail/graph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "uptail/errors.hpp"

namespace uptail {

Graph::Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n), Bitset(n)) {
  if (n < 0) throw DomainError("negative vertex count");
}

Graph::Graph(int n, std::span<const Edge> edges) : Graph(n) {
  for (const auto& e : edges) add_edge(e.u, e.v);
}

void Graph::add_edge(int u, int v) {
  if (u == v) throw DomainError("loops are not allowed");
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw DomainError("vertex out of range");
  if (adj_[static_cast<std::size_t>(u)].test(v)) return;
  adj_[static_cast<std::size_t>(u)].set(v);
  adj_[static_cast<std::size_t>(v)].set(u);
  ++m_;
}

void Graph::remove_edge(int u, int v) {
  if (!has_edge(u, v)) return;
  adj_[static_cast<std::size_t>(u)].reset(v);
  adj_[static_cast<std::size_t>(v)].reset(u);
  --m_;
}

int Graph::max_degree() const {
  int d = 0;
  for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
  return d;
}

int Graph::min_degree() const {
  if (n_ == 0) return 0;
  int d = n_;
  for (int v = 0; v < n_; ++v) d = std::min(d, degree(v));
  return d;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(m_));
  for (int u = 0; u < n_; ++u)
    adj_[static_cast<std::size_t>(u)].for_each([&](int v) {
      if (v > u) out.emplace_back(u, v);
    });
  return out;
}

bool Graph::has_isolated_vertex() const {
  for (int v = 0; v < n_; ++v)
    if (degree(v) == 0) return true;
  return false;
}

bool Graph::is_connected() const {
  if (n_ <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(n_), 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  int reached = 1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    neighbours(u).for_each([&](int w) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++reached;
        queue.push_back(w);
      }
    });
  }
  return reached == n_;
}

bool Graph::bipartition(std::vector<int>& side) const {
  side.assign(static_cast<std::size_t>(n_), -1);
  for (int s = 0; s < n_; ++s) {
    if (side[static_cast<std::size_t>(s)] != -1) continue;
    side[static_cast<std::size_t>(s)] = 0;
    std::deque<int> queue{s};
    bool ok = true;
    while (!queue.empty() && ok) {
      int u = queue.front();
      queue.pop_front();
      neighbours(u).for_each([&](int w) {
        auto& sw = side[static_cast<std::size_t>(w)];
        if (sw == -1) {
          sw = 1 - side[static_cast<std::size_t>(u)];
          queue.push_back(w);
        } else if (sw == side[static_cast<std::size_t>(u)]) {
          ok = false;
        }
      });
    }
    if (!ok) return false;
  }
  return true;
}

bool Graph::is_regular() const { return n_ == 0 || min_degree() == max_degree(); }

Graph Graph::induced(std::span<const int> vertices) const {
  Graph h(static_cast<int>(vertices.size()));
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (has_edge(vertices[i], vertices[j])) h.add_edge(static_cast<int>(i), static_cast<int>(j));
  return h;
}

Graph Graph::restricted_to(const Bitset& keep) const {
  Graph h(n_);
  for (const auto& e : edges())
    if (keep.test(e.u) && keep.test(e.v)) h.add_edge(e.u, e.v);
  return h;
}

Graph Graph::edge_subgraph(std::span<const Edge> es) const {
  Graph h(n_);
  for (const auto& e : es) {
    if (!has_edge(e.u, e.v)) throw DomainError("edge_subgraph: edge not present in graph");
    h.add_edge(e.u, e.v);
  }
  return h;
}

Graph Graph::without_isolated_vertices() const {
  std::vector<int> keep;
  for (int v = 0; v < n_; ++v)
    if (degree(v) > 0) keep.push_back(v);
  return induced(keep);
}

namespace graphs {

Graph empty(int n) { return Graph(n); }

Graph complete(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph cycle(int n) {
  if (n < 3) throw DomainError("cycle needs at least 3 vertices");
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph path(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph star(int s) {
  Graph g(s + 1);
  for (int i = 1; i <= s; ++i) g.add_edge(0, i);
  return g;
}

Graph complete_bipartite(int a, int b) {
  Graph g(a + b);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
  return g;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  Graph g(a.order() + b.order());
  for (const auto& e : a.edges()) g.add_edge(e.u, e.v);
  for (const auto& e : b.edges()) g.add_edge(a.order() + e.u, a.order() + e.v);
  return g;
}

Graph perfect_matching(int pairs) {
  Graph g(2 * pairs);
  for (int i = 0; i < pairs; ++i) g.add_edge(2 * i, 2 * i + 1);
  return g;
}

}  // namespace graphs

int pair_index(int u, int v, int n) {
  if (u > v) std::swap(u, v);
  // Pairs (0,1..n-1), (1,2..n-1), ...
  return u * n - u * (u + 1) / 2 + (v - u - 1);
}

Edge pair_from_index(int index, int n) {
  int u = 0;
  int row = n - 1;
  while (index >= row) {
    index -= row;
    ++u;
    --row;
  }
  return {u, u + 1 + index};
}

// graph6: header N(n), then the upper triangle in column-major order
// (x(0,1), x(0,2), x(1,2), x(0,3), ...), six bits per byte offset by 63.

Graph parse_graph6(std::string_view text) {
  std::size_t pos = 0;
  if (text.size() >= 10 && text.substr(0, 10) == ">>graph6<<") pos = 10;
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  auto byte_at = [&](std::size_t i) -> int {
    if (i >= text.size()) throw ParseError("graph6 record truncated", i);
    int c = static_cast<unsigned char>(text[i]);
    if (c < 63 || c > 126) throw ParseError("graph6 byte outside printable range 63..126", i);
    return c - 63;
  };
  if (pos >= text.size()) throw ParseError("empty graph6 record", pos);
  long n = 0;
  if (text[pos] != '~') {
    n = byte_at(pos);
    pos += 1;
  } else if (pos + 1 < text.size() && text[pos + 1] != '~') {
    n = (long{byte_at(pos + 1)} << 12) | (long{byte_at(pos + 2)} << 6) | byte_at(pos + 3);
    if (n < 63) throw ParseError("graph6 long header used for small order", pos);
    pos += 4;
  } else {
    throw ParseError("graph6 orders beyond 258047 are not supported", pos);
  }
  const long bits = n * (n - 1) / 2;
  const std::size_t expected = static_cast<std::size_t>((bits + 5) / 6);
  if (text.size() - pos != expected)
    throw ParseError("graph6 body has " + std::to_string(text.size() - pos) + " bytes, expected " +
                         std::to_string(expected),
                     std::min(text.size(), pos + expected));
  Graph g(static_cast<int>(n));
  long k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      std::size_t byte = pos + static_cast<std::size_t>(k / 6);
      int value = byte_at(byte);
      if ((value >> (5 - k % 6)) & 1) g.add_edge(i, j);
    }
  }
  if (bits % 6 != 0) {
    std::size_t last = pos + expected - 1;
    int pad_mask = (1 << (6 - bits % 6)) - 1;
    if (byte_at(last) & pad_mask) throw ParseError("graph6 padding bits are not zero", last);
  }
  return g;
}

std::string to_graph6(const Graph& g) {
  const int n = g.order();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(63 + n));
  } else if (n <= 258047) {
    out.push_back('~');
    out.push_back(static_cast<char>(63 + ((n >> 12) & 63)));
    out.push_back(static_cast<char>(63 + ((n >> 6) & 63)));
    out.push_back(static_cast<char>(63 + (n & 63)));
  } else {
    throw DomainError("graph6 orders beyond 258047 are not supported");
  }
  int acc = 0;
  int filled = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(63 + acc));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>(63 + (acc << (6 - filled))));
  return out;
}

nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json adjacency = nlohmann::json::array();
  for (int v = 0; v < g.order(); ++v) adjacency.push_back(g.neighbours(v).members());
  return {{"n", g.order()}, {"adjacency", adjacency}};
}

Graph graph_from_json(const nlohmann::json& j) {
  const auto& adjacency = j.at("adjacency");
  int n = j.contains("n") ? j.at("n").get<int>() : static_cast<int>(adjacency.size());
  if (static_cast<int>(adjacency.size()) != n)
    throw DomainError("adjacency list length does not match n");
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (const auto& w : adjacency[static_cast<std::size_t>(u)]) {
      int v = w.get<int>();
      if (v < 0 || v >= n) throw DomainError("adjacency entry out of range");
      g.add_edge(u, v);
    }
  for (int u = 0; u < n; ++u)
    for (const auto& w : adjacency[static_cast<std::size_t>(u)])
      if (std::find(adjacency[static_cast<std::size_t>(w.get<int>())].begin(),
                    adjacency[static_cast<std::size_t>(w.get<int>())].end(), u) ==
          adjacency[static_cast<std::size_t>(w.get<int>())].end())
        throw DomainError("adjacency list is not symmetric");
  return g;
}

Graph parse_graph(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{')
    return graph_from_json(nlohmann::json::parse(text));
  return parse_graph6(text);
}

}  // namespace uptail
