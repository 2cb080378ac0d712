#pragma once

// Shared fixtures and independent re-implementations used as oracles by the
// test suites.  Anything here is deliberately written differently from the
// library code it checks.

#include <cstdint>
#include <numeric>
#include <vector>

#include <wnash/wnash.hpp>

namespace testutil {

// Instance with agents a1.., goods g1.., all weights 1 unless given.
inline wnash::Instance make_instance(
    std::vector<std::vector<std::uint8_t>> rows,
    std::vector<wnash::Rational> weights = {}) {
  wnash::Instance inst;
  const int n = static_cast<int>(rows.size());
  const int m = rows.empty() ? 0 : static_cast<int>(rows.front().size());
  for (int i = 1; i <= n; ++i)
    inst.agent_names.push_back("a" + std::to_string(i));
  for (int g = 1; g <= m; ++g)
    inst.good_names.push_back("g" + std::to_string(g));
  inst.weights = weights.empty()
                     ? std::vector<wnash::Rational>(rows.size(), 1)
                     : std::move(weights);
  inst.valuations = std::move(rows);
  return inst;
}

// Three agents valuing overlapping pairs of four goods; the solver's golden
// instance with utilities (2,1,1) and bundles {g1,g2},{g3},{g4}.
inline wnash::Instance three_agent_chain() {
  return make_instance({{1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}});
}

// The profitable joint misreport against three_agent_chain: under it the
// rule returns bundles {g1},{g2},{g3,g4} with utilities (1,1,2).
inline wnash::Instance three_agent_chain_misreport() {
  return make_instance({{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 1, 1, 1}});
}

// Independent utility recount: owner lookup by scanning bundles per good.
inline wnash::UtilityVector recount_utilities(const wnash::Instance& inst,
                                              const wnash::Allocation& alloc) {
  wnash::UtilityVector u(static_cast<std::size_t>(inst.agent_count()), 0);
  for (int g = 0; g < inst.good_count(); ++g) {
    int owner = -1;
    for (std::size_t i = 0; i < alloc.bundles.size(); ++i)
      for (int held : alloc.bundles[i])
        if (held == g) owner = static_cast<int>(i);
    if (owner >= 0 && inst.values(owner, g)) ++u[static_cast<std::size_t>(owner)];
  }
  return u;
}

// Independent acyclicity check: Kahn's algorithm instead of DFS colors.
inline bool kahn_acyclic(const wnash::TransformationGraph& g) {
  std::vector<int> indegree(static_cast<std::size_t>(g.node_count), 0);
  for (const auto& e : g.edges) ++indegree[static_cast<std::size_t>(e.to)];
  std::vector<int> queue;
  for (int v = 0; v < g.node_count; ++v)
    if (indegree[static_cast<std::size_t>(v)] == 0) queue.push_back(v);
  std::vector<char> removed(g.edges.size(), 0);
  int processed = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    ++processed;
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      if (!removed[e] && g.edges[e].from == v) {
        removed[e] = 1;
        if (--indegree[static_cast<std::size_t>(g.edges[e].to)] == 0)
          queue.push_back(g.edges[e].to);
      }
  }
  return processed == g.node_count;
}

// indegree - outdegree per node, recounted directly from the edge list.
inline std::vector<int> degree_deltas(const wnash::TransformationGraph& g) {
  std::vector<int> delta(static_cast<std::size_t>(g.node_count), 0);
  for (const auto& e : g.edges) {
    ++delta[static_cast<std::size_t>(e.to)];
    --delta[static_cast<std::size_t>(e.from)];
  }
  return delta;
}

}  // namespace testutil
