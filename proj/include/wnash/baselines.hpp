#pragma once

// Comparison rules: serial dictatorship, round-robin, maximum utilitarian
// welfare, and brute-force weighted leximin.

#include <vector>

#include "core.hpp"
#include "oracle.hpp"

namespace wnash {

// Agent 1 takes every good she values, agent 2 every remaining good she
// values, and so on; goods valued by nobody stay unallocated.
inline Allocation serial_dictatorship(const Instance& inst) {
  Allocation alloc = Allocation::empty_for(inst.agent_count());
  std::vector<char> taken(static_cast<std::size_t>(inst.good_count()), 0);
  for (int i = 0; i < inst.agent_count(); ++i)
    for (int g = 0; g < inst.good_count(); ++g)
      if (!taken[static_cast<std::size_t>(g)] && inst.values(i, g)) {
        alloc.bundles[static_cast<std::size_t>(i)].push_back(g);
        taken[static_cast<std::size_t>(g)] = 1;
      }
  for (int g = 0; g < inst.good_count(); ++g)
    if (!taken[static_cast<std::size_t>(g)]) alloc.unallocated.push_back(g);
  return alloc;
}

// Agents pick in cyclic order 1..n until no goods remain.  A pick takes the
// lowest-indexed remaining good the picker values, else the lowest-indexed
// remaining good; every good ends up allocated.
inline Allocation round_robin(const Instance& inst) {
  Allocation alloc = Allocation::empty_for(inst.agent_count());
  std::vector<char> taken(static_cast<std::size_t>(inst.good_count()), 0);
  int remaining = inst.good_count();
  for (int turn = 0; remaining > 0; ++turn) {
    const int picker = turn % inst.agent_count();
    int choice = -1;
    for (int g = 0; g < inst.good_count() && choice == -1; ++g)
      if (!taken[static_cast<std::size_t>(g)] && inst.values(picker, g))
        choice = g;
    for (int g = 0; g < inst.good_count() && choice == -1; ++g)
      if (!taken[static_cast<std::size_t>(g)]) choice = g;
    alloc.bundles[static_cast<std::size_t>(picker)].push_back(choice);
    taken[static_cast<std::size_t>(choice)] = 1;
    --remaining;
  }
  for (auto& bundle : alloc.bundles) std::sort(bundle.begin(), bundle.end());
  return alloc;
}

// Every valued good to the lowest-indexed agent valuing it; any such
// assignment maximizes the utility sum under binary valuations, and the
// output's welfare equals the number of valued goods.
inline Allocation max_utilitarian(const Instance& inst) {
  Allocation alloc = Allocation::empty_for(inst.agent_count());
  for (int g = 0; g < inst.good_count(); ++g) {
    int owner = -1;
    for (int i = 0; i < inst.agent_count() && owner == -1; ++i)
      if (inst.values(i, g)) owner = i;
    if (owner == -1)
      alloc.unallocated.push_back(g);
    else
      alloc.bundles[static_cast<std::size_t>(owner)].push_back(g);
  }
  return alloc;
}

namespace detail {

// Ascending multiset of exact ratios u_i / w_i; the leximin objective.
inline std::vector<Rational> leximin_key(const UtilityVector& u,
                                         const std::vector<Rational>& weights) {
  std::vector<Rational> key;
  key.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    key.push_back(Rational(u[i]) / weights[i]);
  std::sort(key.begin(), key.end());
  return key;
}

// Lexicographic comparison of equal-length keys: positive if a is better.
inline int compare_leximin_keys(const std::vector<Rational>& a,
                                const std::vector<Rational>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
  }
  return 0;
}

}  // namespace detail

// Brute force over minimally complete assignments: maximizes the ascending
// multiset of ratios v_i(A_i)/w_i lexicographically with exact rational
// comparison.  Among ratio-optimal assignments the one whose utility vector
// wins compare_outcomes is preferred, then the earliest enumerated; the
// secondary key keeps this rule's tie-breaking aligned with the Nash
// welfare rule, which is what makes the two coincide exactly under equal
// weights rather than merely up to ties.
inline Allocation weighted_leximin(const Instance& inst,
                                   const SizeGuard& guard = {}) {
  bool have_best = false;
  std::vector<Rational> best_key;
  UtilityVector best_u;
  std::vector<int> best_owners;
  detail::for_each_assignment(
      inst, guard, [&](const std::vector<int>& owners, const UtilityVector& u) {
        auto key = detail::leximin_key(u, inst.weights);
        bool better = !have_best;
        if (have_best) {
          const int cmp = detail::compare_leximin_keys(key, best_key);
          better = cmp > 0 ||
                   (cmp == 0 && compare_outcomes(u, best_u, inst.weights) ==
                                    OutcomeOrdering::FirstPreferred);
        }
        if (better) {
          have_best = true;
          best_key = std::move(key);
          best_u = u;
          best_owners = owners;
        }
        return true;
      });
  return Allocation::from_owners(best_owners, inst.agent_count());
}

}  // namespace wnash
