#pragma once

// Polynomial-time solver for maximum weighted Nash welfare with
// lexicographic tie-breaking.  Goods are added one at a time; each valued
// good triggers an augmentation along a shortest path in an exchange graph,
// raising exactly one agent's utility by one while every intermediate agent
// swaps one valued good for another.

#include <optional>
#include <vector>

#include "core.hpp"

namespace wnash {

// Nodes are the agents 0..n-1 plus a dummy d = n holding the incoming good.
// adjacency[x][y] != 0 iff the edge x -> y exists: between real agents when
// y values some good in x's current bundle, and from d to i when i values
// the incoming good.  No edge enters d.
struct ExchangeGraph {
  int agent_count = 0;
  std::vector<std::vector<char>> adjacency;  // (n+1) x (n+1)

  int dummy() const { return agent_count; }
};

// A reachable agent i together with the d -> i path that realizes giving i
// one more valued good, and the utility vector after doing so.
struct Candidate {
  int terminal_agent = -1;
  std::vector<int> path;  // node ids; front is the dummy
  UtilityVector resulting_utilities;
};

inline ExchangeGraph build_exchange_graph(const Instance& inst,
                                          const Allocation& partial,
                                          int good) {
  if (good < 0 || good >= inst.good_count())
    throw std::out_of_range("good index out of range");
  const int n = inst.agent_count();
  ExchangeGraph g;
  g.agent_count = n;
  g.adjacency.assign(static_cast<std::size_t>(n) + 1,
                     std::vector<char>(static_cast<std::size_t>(n) + 1, 0));
  for (int x = 0; x < n; ++x)
    for (int held : partial.bundles[static_cast<std::size_t>(x)])
      for (int y = 0; y < n; ++y)
        if (inst.values(y, held))
          g.adjacency[static_cast<std::size_t>(x)]
                     [static_cast<std::size_t>(y)] = 1;
  for (int y = 0; y < n; ++y)
    if (inst.values(y, good))
      g.adjacency[static_cast<std::size_t>(n)][static_cast<std::size_t>(y)] = 1;
  return g;
}

namespace detail {

// Single breadth-first search from the dummy, neighbors expanded in
// ascending node order.  parent[v] == -1 marks unreachable; parent[d] == d.
// The parent chain of any reachable node is the shortest d -> v path with
// ties resolved toward lower agent indices at each frontier expansion.
inline std::vector<int> bfs_parents(const ExchangeGraph& g) {
  const int d = g.dummy();
  std::vector<int> parent(static_cast<std::size_t>(d) + 1, -1);
  parent[static_cast<std::size_t>(d)] = d;
  std::vector<int> queue{d};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    for (int y = 0; y <= d; ++y)
      if (g.adjacency[static_cast<std::size_t>(v)][static_cast<std::size_t>(y)] &&
          parent[static_cast<std::size_t>(y)] == -1) {
        parent[static_cast<std::size_t>(y)] = v;
        queue.push_back(y);
      }
  }
  return parent;
}

inline std::vector<int> path_from_parents(const std::vector<int>& parent,
                                          int dummy, int target) {
  std::vector<int> path;
  for (int v = target; v != dummy; v = parent[static_cast<std::size_t>(v)])
    path.push_back(v);
  path.push_back(dummy);
  std::reverse(path.begin(), path.end());
  return path;
}

inline void insert_sorted(std::vector<int>& goods, int g) {
  goods.insert(std::lower_bound(goods.begin(), goods.end(), g), g);
}

}  // namespace detail

// Shortest d -> target path by edge count, ties toward lower agent indices;
// absent iff target is unreachable.
inline std::optional<std::vector<int>> find_path(const ExchangeGraph& g,
                                                 int target) {
  if (target < 0 || target >= g.agent_count)
    throw std::out_of_range("target agent out of range");
  const auto parent = detail::bfs_parents(g);
  if (parent[static_cast<std::size_t>(target)] == -1) return std::nullopt;
  return detail::path_from_parents(parent, g.dummy(), target);
}

// One Candidate per agent reachable from the dummy, ascending by agent.
inline std::vector<Candidate> collect_candidates(const Instance& inst,
                                                 const Allocation& partial,
                                                 int good) {
  const auto g = build_exchange_graph(inst, partial, good);
  const auto parent = detail::bfs_parents(g);
  const auto base = utility(inst, partial);
  std::vector<Candidate> out;
  for (int i = 0; i < inst.agent_count(); ++i) {
    if (parent[static_cast<std::size_t>(i)] == -1) continue;
    Candidate c;
    c.terminal_agent = i;
    c.path = detail::path_from_parents(parent, g.dummy(), i);
    c.resulting_utilities = base;
    ++c.resulting_utilities[static_cast<std::size_t>(i)];
    out.push_back(std::move(c));
  }
  return out;
}

// Extends a partial allocation by one good.  Unvalued goods go straight to
// the pool.  Otherwise the candidate whose resulting utilities win
// compare_outcomes is selected (candidate vectors differ from the base in
// one coordinate each, so stage 3 already favors the lowest-index agent on
// product ties) and its path is executed: the new good to the first agent,
// then each agent on the path passes one good from her pre-transfer bundle
// to the next agent, the lowest-indexed one the receiver values.
// The caller must pass a partial that is itself optimal for the goods it
// allocates; the main loop below maintains that inductively.
inline Allocation add_one_good(const Instance& inst, const Allocation& partial,
                               int good) {
  if (good < 0 || good >= inst.good_count())
    throw std::out_of_range("good index out of range");
  if (static_cast<int>(partial.bundles.size()) != inst.agent_count())
    throw std::invalid_argument("bundle count does not match agent count");
  for (const auto& bundle : partial.bundles)
    for (int g : bundle)
      if (g == good) throw std::invalid_argument("good already allocated");
  for (int g : partial.unallocated)
    if (g == good) throw std::invalid_argument("good already allocated");

  Allocation out = partial;
  if (!inst.valued_by_anyone(good)) {
    detail::insert_sorted(out.unallocated, good);
    return out;
  }

  const auto candidates = collect_candidates(inst, partial, good);
  const Candidate* best = nullptr;
  for (const auto& c : candidates)
    if (best == nullptr ||
        compare_outcomes(c.resulting_utilities, best->resulting_utilities,
                         inst.weights) == OutcomeOrdering::FirstPreferred)
      best = &c;
  if (best == nullptr)  // impossible: every valuer of the good is reachable
    throw std::logic_error("valued good with no candidate");

  const auto& path = best->path;
  const auto pre = partial.bundles;  // transfer sources are pre-path bundles
  detail::insert_sorted(out.bundles[static_cast<std::size_t>(path[1])], good);
  for (std::size_t k = 1; k + 1 < path.size(); ++k) {
    const int giver = path[k];
    const int receiver = path[k + 1];
    int moved = -1;
    for (int h : pre[static_cast<std::size_t>(giver)])
      if (inst.values(receiver, h)) {
        moved = h;  // pre-bundles are sorted, so this is the lowest index
        break;
      }
    if (moved == -1)
      throw std::logic_error("exchange edge without a qualifying good");
    auto& from = out.bundles[static_cast<std::size_t>(giver)];
    from.erase(std::find(from.begin(), from.end(), moved));
    detail::insert_sorted(out.bundles[static_cast<std::size_t>(receiver)],
                          moved);
  }
  return out;
}

// Processes the goods in input order, extending an initially empty
// allocation; every prefix allocation is optimal for its prefix of goods.
// The output is minimally complete, every agent values every good in her
// own bundle, and its utility vector is the unique optimum for the
// instance.  Deterministic: path and transfer tie rules are fixed above.
inline Allocation solve_mwnw_tie(const Instance& inst) {
  validate_instance(inst);
  Allocation alloc = Allocation::empty_for(inst.agent_count());
  for (int g = 0; g < inst.good_count(); ++g)
    alloc = add_one_good(inst, alloc, g);
  return alloc;
}

}  // namespace wnash
