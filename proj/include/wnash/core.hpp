#pragma once

// Data model for fair division of indivisible goods under binary valuations
// and positive rational entitlements, plus the three-stage outcome order of
// the maximum weighted Nash welfare rule with lexicographic tie-breaking.
// All arithmetic is exact: rationals for weights, big integers for welfare
// products.  No floating point is used anywhere in a comparison.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace wnash {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Utility vector (v_1(A_1), ..., v_n(A_n)); entries are nonnegative integers
// because valuations are binary and additive.
using UtilityVector = std::vector<int>;

// Malformed textual input (instance JSON, allocation JSON, rational strings).
// The message names the offending element.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A brute-force search space exceeded its configured guard.
struct GuardExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The manipulation search exceeded its solve budget.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses "p" or "p/q" with p, q base-10 integers (optional leading '-' on p,
// q >= 1).  The result is stored in lowest terms.
inline Rational parse_rational(std::string_view text) {
  const auto all_digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string_view num = text;
  std::string_view den = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  std::string_view magnitude = num;
  if (!magnitude.empty() && magnitude.front() == '-') magnitude.remove_prefix(1);
  if (!all_digits(magnitude) || !all_digits(den))
    throw ParseError("malformed rational \"" + std::string(text) + "\"");
  const BigInt n{std::string(num)};
  const BigInt d{std::string(den)};
  if (d == 0)
    throw ParseError("zero denominator in \"" + std::string(text) + "\"");
  return Rational(n, d);
}

// Inverse of parse_rational: "p" when the denominator is 1, else "p/q".
inline std::string format_rational(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

// An instance: n agents with names, positive weights, and 0/1 valuation rows
// over m named goods.
struct Instance {
  std::vector<std::string> agent_names;
  std::vector<std::string> good_names;
  std::vector<Rational> weights;
  std::vector<std::vector<std::uint8_t>> valuations;  // n rows of m entries

  int agent_count() const { return static_cast<int>(agent_names.size()); }
  int good_count() const { return static_cast<int>(good_names.size()); }

  bool values(int agent, int good) const {
    return valuations[static_cast<std::size_t>(agent)]
                     [static_cast<std::size_t>(good)] != 0;
  }

  bool valued_by_anyone(int good) const {
    for (int i = 0; i < agent_count(); ++i)
      if (values(i, good)) return true;
    return false;
  }

  int valued_good_count() const {
    int k = 0;
    for (int g = 0; g < good_count(); ++g)
      if (valued_by_anyone(g)) ++k;
    return k;
  }
};

// Structural checks shared by parsing and programmatic construction: n >= 1,
// matching dimensions, binary entries, positive weights, unique non-empty
// names.  Throws ParseError describing the first violation.
inline void validate_instance(const Instance& inst) {
  const std::size_t n = inst.agent_names.size();
  const std::size_t m = inst.good_names.size();
  if (n == 0) throw ParseError("instance must have at least one agent");
  if (inst.weights.size() != n)
    throw ParseError("weight count does not match agent count");
  if (inst.valuations.size() != n)
    throw ParseError("valuation row count does not match agent count");
  for (std::size_t i = 0; i < n; ++i) {
    if (inst.agent_names[i].empty())
      throw ParseError("agent " + std::to_string(i + 1) + ": empty name");
    if (inst.weights[i] <= 0)
      throw ParseError("agent \"" + inst.agent_names[i] +
                       "\": non-positive weight");
    if (inst.valuations[i].size() != m)
      throw ParseError("valuation row " + std::to_string(i + 1) +
                       " (agent \"" + inst.agent_names[i] + "\"): expected " +
                       std::to_string(m) + " entries, got " +
                       std::to_string(inst.valuations[i].size()));
    for (std::size_t j = 0; j < m; ++j)
      if (inst.valuations[i][j] > 1)
        throw ParseError("valuation row " + std::to_string(i + 1) +
                         ", column " + std::to_string(j + 1) +
                         ": entries must be 0 or 1");
  }
  for (std::size_t j = 0; j < m; ++j)
    if (inst.good_names[j].empty())
      throw ParseError("good " + std::to_string(j + 1) + ": empty name");
  std::unordered_map<std::string_view, int> seen;
  for (const auto& name : inst.agent_names)
    if (!seen.emplace(name, 0).second)
      throw ParseError("duplicate agent name \"" + name + "\"");
  seen.clear();
  for (const auto& name : inst.good_names)
    if (!seen.emplace(name, 0).second)
      throw ParseError("duplicate good name \"" + name + "\"");
}

// Owner codes used by Allocation::owners / Allocation::from_owners.
inline constexpr int kUnallocated = -1;  // in the explicit pool
inline constexpr int kAbsent = -2;       // not mentioned by the allocation

// Bundles plus an explicit unallocated pool.  Bundles and pool are pairwise
// disjoint; their union need not cover all goods (partial allocations arise
// inside the solver loop).  Good indices are kept sorted ascending.
struct Allocation {
  std::vector<std::vector<int>> bundles;
  std::vector<int> unallocated;

  bool operator==(const Allocation&) const = default;

  static Allocation empty_for(int agent_count) {
    Allocation a;
    a.bundles.resize(static_cast<std::size_t>(agent_count));
    return a;
  }

  // owners[g] is an agent index, kUnallocated, or kAbsent.
  static Allocation from_owners(std::span<const int> owners, int agent_count) {
    Allocation a = empty_for(agent_count);
    for (std::size_t g = 0; g < owners.size(); ++g) {
      const int o = owners[g];
      if (o == kAbsent) continue;
      if (o == kUnallocated) {
        a.unallocated.push_back(static_cast<int>(g));
      } else if (o >= 0 && o < agent_count) {
        a.bundles[static_cast<std::size_t>(o)].push_back(static_cast<int>(g));
      } else {
        throw std::out_of_range("owner code out of range");
      }
    }
    return a;
  }

  // Inverse view: owners[g] for each good under good_count.  Throws if a
  // good index is out of range or listed twice.
  std::vector<int> owners(int good_count) const {
    std::vector<int> o(static_cast<std::size_t>(good_count), kAbsent);
    const auto place = [&](int g, int code) {
      if (g < 0 || g >= good_count)
        throw std::out_of_range("good index out of range");
      if (o[static_cast<std::size_t>(g)] != kAbsent)
        throw std::invalid_argument("good listed twice in allocation");
      o[static_cast<std::size_t>(g)] = code;
    };
    for (std::size_t i = 0; i < bundles.size(); ++i)
      for (int g : bundles[i]) place(g, static_cast<int>(i));
    for (int g : unallocated) place(g, kUnallocated);
    return o;
  }
};

// u_i = |{g in bundles[i] : v_i(g) = 1}|.  Pool goods contribute nothing.
inline UtilityVector utility(const Instance& inst, const Allocation& alloc) {
  if (static_cast<int>(alloc.bundles.size()) != inst.agent_count())
    throw std::invalid_argument("bundle count does not match agent count");
  UtilityVector u(static_cast<std::size_t>(inst.agent_count()), 0);
  for (int i = 0; i < inst.agent_count(); ++i)
    for (int g : alloc.bundles[static_cast<std::size_t>(i)]) {
      if (g < 0 || g >= inst.good_count())
        throw std::out_of_range("good index out of range");
      if (inst.values(i, g)) ++u[static_cast<std::size_t>(i)];
    }
  return u;
}

// True iff the set of bundled goods equals the set of goods valued by at
// least one agent: all valued goods allocated, no unvalued good allocated.
inline bool is_minimally_complete(const Instance& inst,
                                  const Allocation& alloc) {
  std::vector<char> bundled(static_cast<std::size_t>(inst.good_count()), 0);
  for (const auto& bundle : alloc.bundles)
    for (int g : bundle) {
      if (g < 0 || g >= inst.good_count())
        throw std::out_of_range("good index out of range");
      bundled[static_cast<std::size_t>(g)] = 1;
    }
  for (int g = 0; g < inst.good_count(); ++g)
    if ((bundled[static_cast<std::size_t>(g)] != 0) !=
        inst.valued_by_anyone(g))
      return false;
  return true;
}

enum class OutcomeOrdering { FirstPreferred, SecondPreferred, Equal };

namespace detail {

// Common-denominator integer exponents: with L the lcm of the weight
// denominators, exponent i is w_i * L, a positive integer.  Raising the
// weighted Nash product to the power L preserves its order, which makes the
// product comparison exact over big integers.
inline std::vector<BigInt> nash_exponents(const std::vector<Rational>& weights) {
  BigInt l = 1;
  for (const auto& w : weights) l = lcm(l, denominator(w));
  std::vector<BigInt> exps;
  exps.reserve(weights.size());
  for (const auto& w : weights)
    exps.push_back(numerator(w) * (l / denominator(w)));
  return exps;
}

// prod u_i^{exps_i} over the positive entries of u; the empty product is 1.
inline BigInt nash_product(const UtilityVector& u,
                           const std::vector<BigInt>& exps) {
  BigInt prod = 1;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] <= 1) continue;  // factors 1^e contribute nothing
    if (exps[i] > std::numeric_limits<unsigned>::max())
      throw std::overflow_error("weight exponent exceeds supported range");
    prod *= pow(BigInt(u[i]), exps[i].convert_to<unsigned>());
  }
  return prod;
}

}  // namespace detail

// Three-stage total order on utility vectors under fixed positive weights.
// Stage 1: more agents with positive utility wins.  Stage 2: larger exact
// weighted Nash product over each vector's own positive support wins.
// Stage 3: lexicographic on the integer utilities, earliest differing index,
// larger entry preferred.  Equal only for entrywise-equal vectors; stage 3
// may therefore break stage-2 ties between distinct vectors.
inline OutcomeOrdering compare_outcomes(const UtilityVector& u,
                                        const UtilityVector& u2,
                                        const std::vector<Rational>& weights) {
  const std::size_t n = weights.size();
  if (u.size() != n || u2.size() != n)
    throw std::invalid_argument(
        "utility vectors and weights must have equal length");
  for (std::size_t i = 0; i < n; ++i)
    if (u[i] < 0 || u2[i] < 0)
      throw std::invalid_argument("negative utility");
  for (const auto& w : weights)
    if (w <= 0) throw std::invalid_argument("non-positive weight");

  const auto positive_count = [n](const UtilityVector& v) {
    int c = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (v[i] > 0) ++c;
    return c;
  };
  const int c1 = positive_count(u);
  const int c2 = positive_count(u2);
  if (c1 != c2)
    return c1 > c2 ? OutcomeOrdering::FirstPreferred
                   : OutcomeOrdering::SecondPreferred;

  const auto exps = detail::nash_exponents(weights);
  const BigInt p1 = detail::nash_product(u, exps);
  const BigInt p2 = detail::nash_product(u2, exps);
  if (p1 != p2)
    return p1 > p2 ? OutcomeOrdering::FirstPreferred
                   : OutcomeOrdering::SecondPreferred;

  for (std::size_t i = 0; i < n; ++i)
    if (u[i] != u2[i])
      return u[i] > u2[i] ? OutcomeOrdering::FirstPreferred
                          : OutcomeOrdering::SecondPreferred;
  return OutcomeOrdering::Equal;
}

// Restriction to an agent subset: the selected agents' bundles survive in
// ascending original agent order; every other good mentioned by the
// allocation (other bundles and the old pool) moves to the pool.
inline Allocation restrict(const Allocation& alloc,
                           std::span<const int> agents) {
  const int n = static_cast<int>(alloc.bundles.size());
  std::vector<char> keep(static_cast<std::size_t>(n), 0);
  for (int a : agents) {
    if (a < 0 || a >= n) throw std::out_of_range("agent index out of range");
    if (keep[static_cast<std::size_t>(a)])
      throw std::invalid_argument("duplicate agent index");
    keep[static_cast<std::size_t>(a)] = 1;
  }
  Allocation out;
  for (int i = 0; i < n; ++i)
    if (keep[static_cast<std::size_t>(i)])
      out.bundles.push_back(alloc.bundles[static_cast<std::size_t>(i)]);
  for (int i = 0; i < n; ++i)
    if (!keep[static_cast<std::size_t>(i)])
      out.unallocated.insert(out.unallocated.end(),
                             alloc.bundles[static_cast<std::size_t>(i)].begin(),
                             alloc.bundles[static_cast<std::size_t>(i)].end());
  out.unallocated.insert(out.unallocated.end(), alloc.unallocated.begin(),
                         alloc.unallocated.end());
  std::sort(out.unallocated.begin(), out.unallocated.end());
  return out;
}

// Directed multigraph between agents; each edge carries the good whose
// movement it represents, so a path of edges is an executable transfer
// chain, not just a count.
struct TransformationGraph {
  struct Edge {
    int from;
    int to;
    int good;
    bool operator==(const Edge&) const = default;
  };
  int node_count = 0;
  std::vector<Edge> edges;
};

// One edge (i, j, g) per good g with g in a's bundle i and a2's bundle j,
// i != j; parallel edges preserved.  The two allocations may cover
// different good sets; only goods present in both produce edges.
inline TransformationGraph build_transformation_graph(const Allocation& a,
                                                      const Allocation& a2,
                                                      int node_count) {
  if (static_cast<int>(a.bundles.size()) > node_count ||
      static_cast<int>(a2.bundles.size()) > node_count)
    throw std::invalid_argument("allocation has more bundles than nodes");
  std::unordered_map<int, int> owner2;
  for (std::size_t j = 0; j < a2.bundles.size(); ++j)
    for (int g : a2.bundles[j]) owner2.emplace(g, static_cast<int>(j));
  TransformationGraph graph;
  graph.node_count = node_count;
  for (std::size_t i = 0; i < a.bundles.size(); ++i)
    for (int g : a.bundles[i]) {
      const auto it = owner2.find(g);
      if (it != owner2.end() && it->second != static_cast<int>(i))
        graph.edges.push_back({static_cast<int>(i), it->second, g});
    }
  return graph;
}

// Removes cycles until none remain; each removed cycle lowers every node's
// indegree and outdegree equally, so indegree - outdegree is preserved at
// every node.  Deterministic: depth-first search started from the
// lowest-index node, out-edges visited in (target, good) order, and the
// first cycle found is removed before the search restarts.
inline TransformationGraph eliminate_cycles(const TransformationGraph& g) {
  const int n = g.node_count;
  std::vector<char> alive(g.edges.size(), 1);

  const auto find_cycle = [&]() -> std::vector<int> {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
      if (alive[static_cast<std::size_t>(e)])
        adj[static_cast<std::size_t>(g.edges[e].from)].push_back(e);
    for (auto& out : adj)
      std::sort(out.begin(), out.end(), [&](int x, int y) {
        return std::tuple(g.edges[x].to, g.edges[x].good, x) <
               std::tuple(g.edges[y].to, g.edges[y].good, y);
      });

    std::vector<int> color(static_cast<std::size_t>(n), 0);  // white/gray/black
    for (int s = 0; s < n; ++s) {
      if (color[static_cast<std::size_t>(s)] != 0) continue;
      std::vector<std::pair<int, std::size_t>> stack{{s, 0}};
      std::vector<int> path_edges;  // path_edges[k] leads stack[k] -> stack[k+1]
      color[static_cast<std::size_t>(s)] = 1;
      while (!stack.empty()) {
        const int v = stack.back().first;
        const std::size_t pos = stack.back().second;
        if (pos < adj[static_cast<std::size_t>(v)].size()) {
          ++stack.back().second;
          const int e = adj[static_cast<std::size_t>(v)][pos];
          const int to = g.edges[e].to;
          if (color[static_cast<std::size_t>(to)] == 1) {
            std::size_t k = 0;
            while (stack[k].first != to) ++k;
            std::vector<int> cycle;
            for (std::size_t t = k; t + 1 < stack.size(); ++t)
              cycle.push_back(path_edges[t]);
            cycle.push_back(e);
            return cycle;
          }
          if (color[static_cast<std::size_t>(to)] == 0) {
            color[static_cast<std::size_t>(to)] = 1;
            stack.emplace_back(to, 0);
            path_edges.push_back(e);
          }
        } else {
          color[static_cast<std::size_t>(v)] = 2;
          stack.pop_back();
          if (!path_edges.empty()) path_edges.pop_back();
        }
      }
    }
    return {};
  };

  while (true) {
    const auto cycle = find_cycle();
    if (cycle.empty()) break;
    for (int e : cycle) alive[static_cast<std::size_t>(e)] = 0;
  }
  TransformationGraph out;
  out.node_count = n;
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (alive[e]) out.edges.push_back(g.edges[e]);
  return out;
}

}  // namespace wnash
