#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "uptail/graph.hpp"
#include "uptail/model.hpp"

namespace uptail {

/// hist[j] = number of copies H' of the pattern in K_n with |E(H') \ E(G0)| = j.
/// With `through`, only copies containing that edge are counted.
std::vector<std::uint64_t> missing_edge_histogram(const Graph& pattern, int n, const Graph& G0,
                                                  std::optional<Edge> through = std::nullopt);

/// E[X | G0 ⊆ G(n,p)] = sum over copies H' of p^{|E(H') \ E(G0)|}.
Rational conditional_expectation_subgraph(const SubgraphModel& model, const Graph& G0);

/// E_{G0}[X] - E_{G0 \ e}[X] for an edge e of G0, via the copies through e.
Rational edge_gain(const SubgraphModel& model, const Graph& G0, Edge e);

/// N(H, K_n).
std::uint64_t copies_in_complete_graph(const Graph& pattern, int n);

}  // namespace uptail
