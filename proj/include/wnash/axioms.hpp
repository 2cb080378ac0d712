#pragma once

// Executable verification of the solver's guarantees: structural lemma
// checks, resource/population monotonicity, exhaustive coalition
// manipulation search, subset restriction, and a seeded randomized suite.

#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core.hpp"
#include "json.hpp"
#include "oracle.hpp"
#include "random.hpp"
#include "solver.hpp"

namespace wnash {

// True iff every agent values every good in her own bundle and the
// allocation is minimally complete.
inline bool check_ownership_lemma(const Instance& inst,
                                  const Allocation& alloc) {
  for (int i = 0; i < inst.agent_count(); ++i)
    for (int g : alloc.bundles[static_cast<std::size_t>(i)])
      if (!inst.values(i, g)) return false;
  return is_minimally_complete(inst, alloc);
}

namespace detail {

// A name not colliding with any existing one: base, base_, base__, ...
inline std::string fresh_name(const std::vector<std::string>& used,
                              std::string base) {
  while (std::find(used.begin(), used.end(), base) != used.end()) base += "_";
  return base;
}

}  // namespace detail

// Solves the instance with and without one extra good (the given 0/1
// column).  True iff no agent's utility decreased, and additionally: if the
// new good is valued by someone, exactly one agent gained exactly 1 while
// everyone else is unchanged; if it is valued by nobody, the vectors are
// identical.
inline bool check_resource_monotonicity(
    const Instance& inst, const std::vector<std::uint8_t>& new_column) {
  if (static_cast<int>(new_column.size()) != inst.agent_count())
    throw std::invalid_argument("new column length does not match agent count");
  const UtilityVector before = utility(inst, solve_mwnw_tie(inst));
  Instance extended = inst;
  extended.good_names.push_back(
      detail::fresh_name(extended.good_names, "g_added"));
  for (int i = 0; i < inst.agent_count(); ++i)
    extended.valuations[static_cast<std::size_t>(i)].push_back(
        new_column[static_cast<std::size_t>(i)]);
  const UtilityVector after = utility(extended, solve_mwnw_tie(extended));

  bool valued = false;
  for (auto v : new_column)
    if (v != 0) valued = true;
  int gained_one = 0;
  for (int i = 0; i < inst.agent_count(); ++i) {
    const auto d = after[static_cast<std::size_t>(i)] -
                   before[static_cast<std::size_t>(i)];
    if (d < 0) return false;
    if (d == 1)
      ++gained_one;
    else if (d != 0)
      return false;
  }
  return valued ? gained_one == 1 : gained_one == 0;
}

// Solves the instance with and without one extra agent (appended last with
// the given 0/1 row and positive weight).  True iff no original agent's
// utility increased.
inline bool check_population_monotonicity(
    const Instance& inst, const std::vector<std::uint8_t>& new_agent_row,
    const Rational& new_weight) {
  if (static_cast<int>(new_agent_row.size()) != inst.good_count())
    throw std::invalid_argument("new row length does not match good count");
  if (new_weight <= 0) throw std::invalid_argument("non-positive weight");
  const UtilityVector before = utility(inst, solve_mwnw_tie(inst));
  Instance extended = inst;
  extended.agent_names.push_back(
      detail::fresh_name(extended.agent_names, "a_added"));
  extended.weights.push_back(new_weight);
  extended.valuations.push_back(new_agent_row);
  const UtilityVector after = utility(extended, solve_mwnw_tie(extended));
  for (int i = 0; i < inst.agent_count(); ++i)
    if (after[static_cast<std::size_t>(i)] > before[static_cast<std::size_t>(i)])
      return false;
  return true;
}

enum class ManipulationMode { Gsp, StrongGsp };

// A coalition misreport that profits under the mode's gain pattern, with
// gains measured in true utilities: Gsp needs every member strictly better
// off, StrongGsp every member weakly and someone strictly.
struct ManipulationWitness {
  std::vector<int> coalition;
  std::vector<std::vector<std::uint8_t>> true_profile;
  std::vector<std::vector<std::uint8_t>> reported_profile;
  UtilityVector true_utilities_honest;
  UtilityVector true_utilities_after_lie;
  ManipulationMode mode = ManipulationMode::Gsp;
};

struct ManipulationBudget {
  std::uint64_t max_solves = 1'000'000;
};

// Exhaustive search over coalitions of size <= max_coalition (sizes
// ascending, coalitions lexicographic within a size) and all joint
// misreports: each member's reported row ranges over all 2^m binary rows,
// truthful row included, combined as an odometer with the first coalition
// member most significant.  Each reported instance is solved and member
// gains are measured against the honest outcome in TRUE utilities (only
// goods the member actually values count).  Returns the first witness in
// this canonical order, or absent.
inline std::optional<ManipulationWitness> search_group_manipulation(
    const Instance& inst, int max_coalition, ManipulationMode mode,
    const ManipulationBudget& budget = {}) {
  const int n = inst.agent_count();
  const int m = inst.good_count();
  if (max_coalition < 1)
    throw std::invalid_argument("max_coalition must be positive");
  if (m > 62)
    throw BudgetExceeded("misreport enumeration infeasible for " +
                         std::to_string(m) + " goods");
  max_coalition = std::min(max_coalition, n);
  const UtilityVector honest_true =
      utility(inst, solve_mwnw_tie(inst));
  std::uint64_t solves = 0;
  const std::uint64_t rows = std::uint64_t{1} << m;

  for (int size = 1; size <= max_coalition; ++size) {
    std::vector<int> coalition(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) coalition[static_cast<std::size_t>(i)] = i;
    while (true) {
      std::vector<std::uint64_t> masks(static_cast<std::size_t>(size), 0);
      while (true) {
        Instance reported = inst;
        for (int i = 0; i < size; ++i) {
          auto& row =
              reported.valuations[static_cast<std::size_t>(
                  coalition[static_cast<std::size_t>(i)])];
          for (int g = 0; g < m; ++g)
            row[static_cast<std::size_t>(g)] =
                (masks[static_cast<std::size_t>(i)] >> g) & 1;
        }
        if (++solves > budget.max_solves)
          throw BudgetExceeded("manipulation search exceeded " +
                               std::to_string(budget.max_solves) + " solves");
        const UtilityVector lie_true =
            utility(inst, solve_mwnw_tie(reported));
        bool all_weak = true;
        bool all_strict = true;
        bool any_strict = false;
        for (int member : coalition) {
          const auto d = lie_true[static_cast<std::size_t>(member)] -
                         honest_true[static_cast<std::size_t>(member)];
          if (d < 0) all_weak = false;
          if (d <= 0) all_strict = false;
          if (d > 0) any_strict = true;
        }
        const bool found = mode == ManipulationMode::Gsp
                               ? all_strict
                               : all_weak && any_strict;
        if (found) {
          ManipulationWitness w;
          w.coalition = coalition;
          w.true_profile = inst.valuations;
          w.reported_profile = reported.valuations;
          w.true_utilities_honest = honest_true;
          w.true_utilities_after_lie = lie_true;
          w.mode = mode;
          return w;
        }
        // Next joint misreport: last member's mask is least significant.
        int pos = size - 1;
        for (; pos >= 0; --pos) {
          if (++masks[static_cast<std::size_t>(pos)] < rows) break;
          masks[static_cast<std::size_t>(pos)] = 0;
        }
        if (pos < 0) break;
      }
      // Next coalition of this size, lexicographic.
      int pos = size - 1;
      while (pos >= 0 &&
             coalition[static_cast<std::size_t>(pos)] == n - size + pos)
        --pos;
      if (pos < 0) break;
      ++coalition[static_cast<std::size_t>(pos)];
      for (int i = pos + 1; i < size; ++i)
        coalition[static_cast<std::size_t>(i)] =
            coalition[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
  return std::nullopt;
}

// Solves the instance, restricts the allocation to the subset, and re-runs
// the brute-force optimizer on the sub-instance whose goods are exactly the
// goods allocated within the restriction.  True iff the sub-instance's
// optimal utility vector matches the restriction's utilities.
inline bool check_subset_restriction(const Instance& inst,
                                     std::vector<int> subset,
                                     const SizeGuard& guard = {}) {
  std::sort(subset.begin(), subset.end());
  if (subset.empty()) return true;
  const Allocation full = solve_mwnw_tie(inst);
  const Allocation restricted = restrict(full, subset);

  std::vector<int> kept_goods;
  for (const auto& bundle : restricted.bundles)
    kept_goods.insert(kept_goods.end(), bundle.begin(), bundle.end());
  std::sort(kept_goods.begin(), kept_goods.end());
  std::vector<int> good_pos(static_cast<std::size_t>(inst.good_count()), -1);
  for (std::size_t p = 0; p < kept_goods.size(); ++p)
    good_pos[static_cast<std::size_t>(kept_goods[p])] = static_cast<int>(p);

  Instance sub;
  for (int a : subset) {
    sub.agent_names.push_back(inst.agent_names[static_cast<std::size_t>(a)]);
    sub.weights.push_back(inst.weights[static_cast<std::size_t>(a)]);
    std::vector<std::uint8_t> row;
    for (int g : kept_goods)
      row.push_back(inst.valuations[static_cast<std::size_t>(a)]
                                   [static_cast<std::size_t>(g)]);
    sub.valuations.push_back(std::move(row));
  }
  for (int g : kept_goods)
    sub.good_names.push_back(inst.good_names[static_cast<std::size_t>(g)]);

  Allocation reindexed = Allocation::empty_for(static_cast<int>(subset.size()));
  for (std::size_t i = 0; i < restricted.bundles.size(); ++i)
    for (int g : restricted.bundles[i])
      reindexed.bundles[i].push_back(good_pos[static_cast<std::size_t>(g)]);
  const UtilityVector expected = utility(sub, reindexed);
  const UtilityVector optimal = brute_force_mwnw_tie(sub, guard).second;
  return expected == optimal;
}

enum class AxiomCheck {
  Ownership,
  OracleEquivalence,
  ResourceMonotonicity,
  PopulationMonotonicity,
  SubsetRestriction,
  Gsp,
  StrongGsp,
};

struct SuiteConfig {
  std::uint64_t seed = 42;
  int trials = 100;
  int min_agents = 1;
  int max_agents = 4;
  int min_goods = 1;
  int max_goods = 6;
  std::vector<double> densities{0.3, 0.5, 0.8};
  std::vector<Rational> weight_pool{Rational(1), Rational(1, 2),
                                    Rational(3, 2), Rational(2), Rational(3)};
  int max_coalition = 1;
  SizeGuard guard{};
  ManipulationBudget budget{};
  // StrongGsp is deliberately not a default: a strong-manipulation witness
  // on a random instance is legitimate data, not a violation.
  std::set<AxiomCheck> checks{
      AxiomCheck::Ownership,          AxiomCheck::OracleEquivalence,
      AxiomCheck::ResourceMonotonicity, AxiomCheck::PopulationMonotonicity,
      AxiomCheck::SubsetRestriction,  AxiomCheck::Gsp};
};

struct SuiteFailure {
  std::uint64_t seed = 0;
  std::string kind;
  std::string detail;
  bool operator==(const SuiteFailure&) const = default;
};

struct SuiteReport {
  std::uint64_t trials = 0;
  std::vector<SuiteFailure> failures;
  std::int64_t elapsed_ms = 0;
  std::uint64_t seed = 0;
  std::string generator;
  std::vector<std::string> notes;  // e.g. expected strong-GSP witnesses

  bool passed() const { return failures.empty(); }
};

namespace detail {

inline std::string joined(const UtilityVector& u) {
  std::string s = "(";
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(u[i]);
  }
  return s + ")";
}

inline std::string witness_summary(const ManipulationWitness& w) {
  std::string s = "coalition {";
  for (std::size_t i = 0; i < w.coalition.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(w.coalition[i] + 1);
  }
  s += "} true utilities " + joined(w.true_utilities_honest) + " -> " +
       joined(w.true_utilities_after_lie);
  return s;
}

// All checks for one instance; randomized ingredients (columns, rows,
// subsets) come from rng so the whole trial replays from one seed.
inline void run_checks_on_instance(const Instance& inst, const SuiteConfig& cfg,
                                   RandomSource& rng, std::uint64_t trial_seed,
                                   double density, SuiteReport& report) {
  const auto fail = [&](const char* kind, std::string detail) {
    report.failures.push_back({trial_seed, kind, std::move(detail)});
  };
  const auto want = [&](AxiomCheck c) { return cfg.checks.count(c) != 0; };

  try {
    if (want(AxiomCheck::Ownership) || want(AxiomCheck::OracleEquivalence)) {
      const Allocation solved = solve_mwnw_tie(inst);
      if (want(AxiomCheck::Ownership) && !check_ownership_lemma(inst, solved))
        fail("ownership", "solver output violates ownership or completeness");
      if (want(AxiomCheck::OracleEquivalence)) {
        const auto solver_u = utility(inst, solved);
        const auto oracle_u = brute_force_mwnw_tie(inst, cfg.guard).second;
        if (solver_u != oracle_u)
          fail("oracle-equiv", "solver " + joined(solver_u) + " vs oracle " +
                                   joined(oracle_u));
      }
    }
    if (want(AxiomCheck::ResourceMonotonicity)) {
      std::vector<std::uint8_t> column(
          static_cast<std::size_t>(inst.agent_count()));
      for (auto& v : column) v = rng.bernoulli(density) ? 1 : 0;
      if (!check_resource_monotonicity(inst, column))
        fail("resource", "utility vector dropped or gained more than one");
    }
    if (want(AxiomCheck::PopulationMonotonicity)) {
      std::vector<std::uint8_t> row(
          static_cast<std::size_t>(inst.good_count()));
      for (auto& v : row) v = rng.bernoulli(density) ? 1 : 0;
      const Rational w = cfg.weight_pool.empty() ? Rational(1)
                                                 : rng.pick(cfg.weight_pool);
      if (!check_population_monotonicity(inst, row, w))
        fail("population", "an original agent gained from the new agent");
    }
    if (want(AxiomCheck::SubsetRestriction)) {
      std::vector<int> subset;
      for (int a = 0; a < inst.agent_count(); ++a)
        if (rng.bernoulli(0.5)) subset.push_back(a);
      if (!check_subset_restriction(inst, subset, cfg.guard))
        fail("subset", "restriction is not optimal for its sub-instance");
    }
    if (want(AxiomCheck::Gsp)) {
      const auto witness = search_group_manipulation(
          inst, cfg.max_coalition, ManipulationMode::Gsp, cfg.budget);
      if (witness)
        fail("gsp", witness_summary(*witness));
    }
    if (want(AxiomCheck::StrongGsp)) {
      const auto witness = search_group_manipulation(
          inst, cfg.max_coalition, ManipulationMode::StrongGsp, cfg.budget);
      if (witness)
        report.notes.push_back("strong-gsp witness at seed " +
                               std::to_string(trial_seed) + ": " +
                               witness_summary(*witness));
    }
  } catch (const std::exception& e) {
    fail("error", e.what());
  }
}

}  // namespace detail

// Runs the configured checks on cfg.trials random instances.  Deterministic
// given the config; each failure records the replay seed: running a
// one-trial suite with that seed under the same configuration regenerates
// the identical trial.
inline SuiteReport run_suite(const SuiteConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  SuiteReport report;
  report.trials = static_cast<std::uint64_t>(cfg.trials < 0 ? 0 : cfg.trials);
  report.seed = cfg.seed;
  report.generator = kGeneratorId;
  for (int t = 0; t < cfg.trials; ++t) {
    const std::uint64_t trial_seed = cfg.seed + static_cast<std::uint64_t>(t);
    RandomSource rng(splitmix64(trial_seed));
    const int n = rng.uniform_int(cfg.min_agents, cfg.max_agents);
    const int m = rng.uniform_int(cfg.min_goods, cfg.max_goods);
    const double p =
        cfg.densities.empty() ? 0.5 : cfg.densities[static_cast<std::size_t>(
                                          rng.next_below(cfg.densities.size()))];
    const Instance inst = random_instance(rng, {n, m, p, cfg.weight_pool});
    detail::run_checks_on_instance(inst, cfg, rng, trial_seed, p, report);
  }
  report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - started)
                          .count();
  return report;
}

// Runs the configured checks against one fixed instance.  Deterministic
// checks (ownership, solver-vs-oracle, manipulation searches) run once;
// randomized ingredients (resource columns, population rows, agent subsets)
// are drawn cfg.trials times from the seed, entry density 1/2, so each
// failure again records a replaying seed.
inline SuiteReport run_suite_on_instance(const Instance& inst,
                                         const SuiteConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  SuiteReport report;
  report.trials = static_cast<std::uint64_t>(cfg.trials < 0 ? 0 : cfg.trials);
  report.seed = cfg.seed;
  report.generator = kGeneratorId;
  const auto want = [&](AxiomCheck c) { return cfg.checks.count(c) != 0; };
  const auto fail = [&](std::uint64_t seed, const char* kind,
                        std::string detail) {
    report.failures.push_back({seed, kind, std::move(detail)});
  };

  try {
    if (want(AxiomCheck::Ownership) || want(AxiomCheck::OracleEquivalence)) {
      const Allocation solved = solve_mwnw_tie(inst);
      if (want(AxiomCheck::Ownership) && !check_ownership_lemma(inst, solved))
        fail(cfg.seed, "ownership",
             "solver output violates ownership or completeness");
      if (want(AxiomCheck::OracleEquivalence)) {
        const auto solver_u = utility(inst, solved);
        const auto oracle_u = brute_force_mwnw_tie(inst, cfg.guard).second;
        if (solver_u != oracle_u)
          fail(cfg.seed, "oracle-equiv",
               "solver " + detail::joined(solver_u) + " vs oracle " +
                   detail::joined(oracle_u));
      }
    }
    if (want(AxiomCheck::Gsp)) {
      const auto witness = search_group_manipulation(
          inst, cfg.max_coalition, ManipulationMode::Gsp, cfg.budget);
      if (witness) fail(cfg.seed, "gsp", detail::witness_summary(*witness));
    }
    if (want(AxiomCheck::StrongGsp)) {
      const auto witness = search_group_manipulation(
          inst, cfg.max_coalition, ManipulationMode::StrongGsp, cfg.budget);
      if (witness)
        report.notes.push_back("strong-gsp witness: " +
                               detail::witness_summary(*witness));
    }
  } catch (const std::exception& e) {
    fail(cfg.seed, "error", e.what());
  }

  for (int t = 0; t < cfg.trials; ++t) {
    const std::uint64_t trial_seed = cfg.seed + static_cast<std::uint64_t>(t);
    RandomSource rng(splitmix64(trial_seed));
    try {
      if (want(AxiomCheck::ResourceMonotonicity)) {
        std::vector<std::uint8_t> column(
            static_cast<std::size_t>(inst.agent_count()));
        for (auto& v : column) v = rng.bernoulli(0.5) ? 1 : 0;
        if (!check_resource_monotonicity(inst, column))
          fail(trial_seed, "resource",
               "utility vector dropped or gained more than one");
      }
      if (want(AxiomCheck::PopulationMonotonicity)) {
        std::vector<std::uint8_t> row(
            static_cast<std::size_t>(inst.good_count()));
        for (auto& v : row) v = rng.bernoulli(0.5) ? 1 : 0;
        const Rational w = cfg.weight_pool.empty()
                               ? Rational(1)
                               : rng.pick(cfg.weight_pool);
        if (!check_population_monotonicity(inst, row, w))
          fail(trial_seed, "population",
               "an original agent gained from the new agent");
      }
      if (want(AxiomCheck::SubsetRestriction)) {
        std::vector<int> subset;
        for (int a = 0; a < inst.agent_count(); ++a)
          if (rng.bernoulli(0.5)) subset.push_back(a);
        if (!check_subset_restriction(inst, subset, cfg.guard))
          fail(trial_seed, "subset",
               "restriction is not optimal for its sub-instance");
      }
    } catch (const std::exception& e) {
      fail(trial_seed, "error", e.what());
    }
  }
  report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - started)
                          .count();
  return report;
}

inline Json suite_report_to_json(const SuiteReport& report) {
  Json failures = Json::array();
  for (const auto& f : report.failures) {
    Json j;
    j["seed"] = f.seed;
    j["kind"] = f.kind;
    j["detail"] = f.detail;
    failures.push_back(std::move(j));
  }
  Json out;
  out["trials"] = report.trials;
  out["failures"] = std::move(failures);
  out["elapsed_ms"] = report.elapsed_ms;
  out["seed"] = report.seed;
  out["generator"] = report.generator;
  if (!report.notes.empty()) out["notes"] = report.notes;
  return out;
}

inline Json witness_to_json(const Instance& inst,
                            const ManipulationWitness& w) {
  const auto profile = [&](const std::vector<std::vector<std::uint8_t>>& rows) {
    Json arr = Json::array();
    for (const auto& row : rows) {
      Json r = Json::array();
      for (auto v : row) r.push_back(static_cast<int>(v));
      arr.push_back(std::move(r));
    }
    return arr;
  };
  Json coalition = Json::array();
  for (int member : w.coalition)
    coalition.push_back(inst.agent_names[static_cast<std::size_t>(member)]);
  Json out;
  out["mode"] = w.mode == ManipulationMode::Gsp ? "gsp" : "strong-gsp";
  out["coalition"] = std::move(coalition);
  out["true_profile"] = profile(w.true_profile);
  out["reported_profile"] = profile(w.reported_profile);
  out["true_utilities_honest"] = w.true_utilities_honest;
  out["true_utilities_after_lie"] = w.true_utilities_after_lie;
  return out;
}

}  // namespace wnash
