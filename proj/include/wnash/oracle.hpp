#pragma once

// Brute-force ground truth for differential testing on small instances:
// exhaustive optimization over minimally complete allocations, plus
// Pareto-optimality and EF1 checks.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "core.hpp"

namespace wnash {

struct SizeGuard {
  std::uint64_t max_search_space = 10'000'000;
};

namespace detail {

// n^(number of valued goods) with an overflow-safe guard check.
inline std::uint64_t checked_search_space(const Instance& inst,
                                          const SizeGuard& guard) {
  const auto n = static_cast<std::uint64_t>(inst.agent_count());
  std::uint64_t space = 1;
  for (int g = 0; g < inst.good_count(); ++g) {
    if (!inst.valued_by_anyone(g)) continue;
    if (space > guard.max_search_space / n)
      throw GuardExceeded(
          "search space " + std::to_string(inst.agent_count()) + "^" +
          std::to_string(inst.valued_good_count()) + " exceeds guard " +
          std::to_string(guard.max_search_space));
    space *= n;
  }
  return space;
}

// Visits every assignment of each valued good to one of the n agents;
// unvalued goods stay unallocated.  Enumeration order: an odometer whose
// most significant digit is the lowest-indexed valued good, owners counting
// up from agent 0, so "first in enumeration order" is well defined.
// fn(owners, utilities) returns false to stop early; owners[g] is the
// holding agent or kUnallocated, and utilities are maintained incrementally.
template <class Fn>
void for_each_assignment(const Instance& inst, const SizeGuard& guard,
                         Fn&& fn) {
  checked_search_space(inst, guard);
  const int n = inst.agent_count();
  std::vector<int> valued;
  for (int g = 0; g < inst.good_count(); ++g)
    if (inst.valued_by_anyone(g)) valued.push_back(g);
  std::vector<int> owners(static_cast<std::size_t>(inst.good_count()),
                          kUnallocated);
  UtilityVector u(static_cast<std::size_t>(n), 0);
  for (int g : valued) {
    owners[static_cast<std::size_t>(g)] = 0;
    if (inst.values(0, g)) ++u[0];
  }
  const int k = static_cast<int>(valued.size());
  while (true) {
    if (!fn(static_cast<const std::vector<int>&>(owners),
            static_cast<const UtilityVector&>(u)))
      return;
    int pos = k - 1;
    for (; pos >= 0; --pos) {
      const int g = valued[static_cast<std::size_t>(pos)];
      const int o = owners[static_cast<std::size_t>(g)];
      if (inst.values(o, g)) --u[static_cast<std::size_t>(o)];
      if (o + 1 < n) {
        owners[static_cast<std::size_t>(g)] = o + 1;
        if (inst.values(o + 1, g)) ++u[static_cast<std::size_t>(o + 1)];
        break;
      }
      owners[static_cast<std::size_t>(g)] = 0;
      if (inst.values(0, g)) ++u[0];
    }
    if (pos < 0) return;  // odometer wrapped: all assignments visited
  }
}

}  // namespace detail

// Streaming form of the same enumeration; yields n^(#valued goods)
// allocations, then absent.
class AllocationEnumerator {
 public:
  explicit AllocationEnumerator(const Instance& inst, SizeGuard guard = {})
      : inst_(&inst) {
    detail::checked_search_space(inst, guard);
    for (int g = 0; g < inst.good_count(); ++g)
      if (inst.valued_by_anyone(g)) valued_.push_back(g);
    owners_.assign(static_cast<std::size_t>(inst.good_count()), kUnallocated);
    for (int g : valued_) owners_[static_cast<std::size_t>(g)] = 0;
  }

  std::optional<Allocation> next() {
    if (done_) return std::nullopt;
    Allocation out = Allocation::from_owners(owners_, inst_->agent_count());
    advance();
    return out;
  }

 private:
  void advance() {
    const int n = inst_->agent_count();
    int pos = static_cast<int>(valued_.size()) - 1;
    for (; pos >= 0; --pos) {
      auto& owner = owners_[static_cast<std::size_t>(
          valued_[static_cast<std::size_t>(pos)])];
      if (owner + 1 < n) {
        ++owner;
        return;
      }
      owner = 0;
    }
    done_ = true;
  }

  const Instance* inst_;
  std::vector<int> valued_;
  std::vector<int> owners_;
  bool done_ = false;
};

inline AllocationEnumerator enumerate_allocations(const Instance& inst,
                                                  SizeGuard guard = {}) {
  return AllocationEnumerator(inst, guard);
}

// Scans every enumerated allocation and keeps the maximum under the
// three-stage order; among allocations sharing the maximal utility vector,
// the first in enumeration order wins.  Assignments that give an agent a
// good she does not value are enumerated too; they simply lose.  The
// returned vector is the unique optimal utility vector for the instance.
inline std::pair<Allocation, UtilityVector> brute_force_mwnw_tie(
    const Instance& inst, const SizeGuard& guard = {}) {
  const auto exps = detail::nash_exponents(inst.weights);
  bool have_best = false;
  int best_positive = -1;
  BigInt best_product;
  UtilityVector best_u;
  std::vector<int> best_owners;

  const auto take = [&](const std::vector<int>& owners, const UtilityVector& u,
                        int positive, BigInt product) {
    have_best = true;
    best_positive = positive;
    best_product = std::move(product);
    best_u = u;
    best_owners = owners;
  };
  detail::for_each_assignment(
      inst, guard, [&](const std::vector<int>& owners, const UtilityVector& u) {
        // Staged comparison with cached stage values; equivalent to
        // compare_outcomes(u, best_u, weights) == FirstPreferred.
        int positive = 0;
        for (int v : u)
          if (v > 0) ++positive;
        if (have_best && positive < best_positive) return true;
        if (!have_best || positive > best_positive) {
          take(owners, u, positive, detail::nash_product(u, exps));
          return true;
        }
        BigInt product = detail::nash_product(u, exps);
        if (product < best_product) return true;
        if (product == best_product) {
          int lex = 0;
          for (std::size_t i = 0; i < u.size(); ++i)
            if (u[i] != best_u[i]) {
              lex = u[i] > best_u[i] ? 1 : -1;
              break;
            }
          if (lex <= 0) return true;
        }
        take(owners, u, positive, std::move(product));
        return true;
      });

  return {Allocation::from_owners(best_owners, inst.agent_count()),
          std::move(best_u)};
}

// True iff no enumerated allocation weakly improves every agent and
// strictly improves someone.  Restricting the scan to minimally complete
// allocations loses nothing: any dominating allocation still dominates
// after handing every valued good to some agent who values it and dropping
// the rest, which only raises utilities.
inline bool is_pareto_optimal(const Instance& inst, const Allocation& alloc,
                              const SizeGuard& guard = {}) {
  const UtilityVector target = utility(inst, alloc);
  bool dominated = false;
  detail::for_each_assignment(
      inst, guard, [&](const std::vector<int>&, const UtilityVector& u) {
        bool weakly_better = true;
        bool strictly = false;
        for (std::size_t i = 0; i < u.size(); ++i) {
          if (u[i] < target[i]) {
            weakly_better = false;
            break;
          }
          if (u[i] > target[i]) strictly = true;
        }
        if (weakly_better && strictly) {
          dominated = true;
          return false;
        }
        return true;
      });
  return !dominated;
}

// Envy-freeness up to one good: for every ordered pair (i, j), either i
// does not envy j, or some single good removed from j's bundle kills the
// envy.  Weights are ignored; the notion is meant for equal entitlements.
inline bool is_ef1(const Instance& inst, const Allocation& alloc) {
  const int n = inst.agent_count();
  if (static_cast<int>(alloc.bundles.size()) != n)
    throw std::invalid_argument("bundle count does not match agent count");
  const auto value_of_bundle = [&](int viewer, const std::vector<int>& bundle) {
    int v = 0;
    for (int g : bundle)
      if (inst.values(viewer, g)) ++v;
    return v;
  };
  for (int i = 0; i < n; ++i) {
    const int own = value_of_bundle(i, alloc.bundles[static_cast<std::size_t>(i)]);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const auto& other = alloc.bundles[static_cast<std::size_t>(j)];
      const int envied = value_of_bundle(i, other);
      if (own >= envied) continue;
      bool fixable = false;
      for (int g : other)
        if (own >= envied - (inst.values(i, g) ? 1 : 0)) {
          fixable = true;
          break;
        }
      if (!fixable) return false;
    }
  }
  return true;
}

}  // namespace wnash
