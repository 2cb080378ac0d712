#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include <wnash/wnash.hpp>

#include "test_util.hpp"

using namespace wnash;
using testutil::make_instance;

TEST_CASE("serial_dictatorship") {
  SECTION("universal demand: agent 1 hoards everything") {
    const Instance inst = make_instance({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}});
    const auto alloc = serial_dictatorship(inst);
    CHECK(alloc.bundles ==
          std::vector<std::vector<int>>{{0, 1, 2}, {}, {}});
  }
  SECTION("disjoint valued sets: everyone gets her own") {
    const Instance inst = make_instance({{1, 0, 0}, {0, 1, 1}});
    const auto alloc = serial_dictatorship(inst);
    CHECK(alloc.bundles == std::vector<std::vector<int>>{{0}, {1, 2}});
  }
  SECTION("random instances match a direct re-simulation") {
    RandomSource rng(83);
    for (int trial = 0; trial < 120; ++trial) {
      const int n = rng.uniform_int(1, 4);
      const int m = rng.uniform_int(0, 7);
      const Instance inst = random_instance(rng, {n, m, 0.5, {}});
      const auto alloc = serial_dictatorship(inst);
      std::vector<int> expected_owner(static_cast<std::size_t>(m),
                                      kUnallocated);
      for (int i = 0; i < n; ++i)
        for (int g = 0; g < m; ++g)
          if (expected_owner[static_cast<std::size_t>(g)] == kUnallocated &&
              inst.values(i, g))
            expected_owner[static_cast<std::size_t>(g)] = i;
      CHECK(alloc == Allocation::from_owners(expected_owner, n));
      CHECK(is_minimally_complete(inst, alloc));
    }
  }
  SECTION("outputs are Pareto optimal") {
    RandomSource rng(89);
    for (int trial = 0; trial < 80; ++trial) {
      const int n = rng.uniform_int(1, 3);
      const int m = rng.uniform_int(0, 5);
      const Instance inst = random_instance(rng, {n, m, 0.5, {}});
      CHECK(is_pareto_optimal(inst, serial_dictatorship(inst)));
    }
  }
}

TEST_CASE("round_robin golden tables") {
  SECTION("two-good example is not Pareto optimal") {
    const Instance inst = make_instance({{1, 1}, {1, 0}});
    const auto alloc = round_robin(inst);
    CHECK(alloc.bundles == std::vector<std::vector<int>>{{0}, {1}});
    CHECK_FALSE(is_pareto_optimal(inst, alloc));
  }
  SECTION("six-good example rewards a misreport") {
    const Instance truth =
        make_instance({{1, 1, 1, 1, 0, 0}, {0, 0, 1, 1, 1, 1}});
    const auto honest = round_robin(truth);
    CHECK(honest.bundles ==
          std::vector<std::vector<int>>{{0, 1, 4}, {2, 3, 5}});
    CHECK(utility(truth, honest) == UtilityVector{2, 3});

    Instance lied = truth;
    lied.valuations[0] = {1, 0, 1, 1, 0, 0};
    const auto after = round_robin(lied);
    CHECK(after.bundles ==
          std::vector<std::vector<int>>{{0, 1, 3}, {2, 4, 5}});
    // agent 1's utility in her true terms rises from 2 to 3
    CHECK(utility(truth, after)[0] == 3);
  }
}

TEST_CASE("round_robin allocates every good") {
  RandomSource rng(97);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = rng.uniform_int(1, 4);
    const int m = rng.uniform_int(0, 8);
    const Instance inst = random_instance(rng, {n, m, 0.4, {}});
    const auto alloc = round_robin(inst);
    CHECK(alloc.unallocated.empty());
    std::size_t total = 0;
    for (const auto& b : alloc.bundles) total += b.size();
    CHECK(total == static_cast<std::size_t>(m));
    // no duplicates across bundles
    std::vector<char> seen(static_cast<std::size_t>(m), 0);
    for (const auto& b : alloc.bundles)
      for (int g : b) {
        CHECK_FALSE(seen[static_cast<std::size_t>(g)]);
        seen[static_cast<std::size_t>(g)] = 1;
      }
  }
}

TEST_CASE("max_utilitarian") {
  SECTION("universal demand: everything to agent 1, welfare m") {
    const Instance inst = make_instance({{1, 1, 1, 1}, {1, 1, 1, 1}});
    const auto alloc = max_utilitarian(inst);
    CHECK(alloc.bundles == std::vector<std::vector<int>>{{0, 1, 2, 3}, {}});
    const auto u = utility(inst, alloc);
    CHECK(std::accumulate(u.begin(), u.end(), 0) == 4);
  }
  SECTION("disjoint valued sets") {
    const Instance inst = make_instance({{0, 1, 0}, {1, 0, 0}});
    const auto alloc = max_utilitarian(inst);
    CHECK(alloc.bundles == std::vector<std::vector<int>>{{1}, {0}});
    CHECK(alloc.unallocated == std::vector<int>{2});
  }
  SECTION("welfare equals the number of valued goods") {
    RandomSource rng(101);
    for (int trial = 0; trial < 120; ++trial) {
      const int n = rng.uniform_int(1, 4);
      const int m = rng.uniform_int(0, 8);
      const Instance inst = random_instance(rng, {n, m, 0.5, {}});
      const auto alloc = max_utilitarian(inst);
      const auto u = utility(inst, alloc);
      CHECK(std::accumulate(u.begin(), u.end(), 0) ==
            inst.valued_good_count());
      CHECK(is_minimally_complete(inst, alloc));
    }
  }
}

TEST_CASE("weighted_leximin golden instances") {
  SECTION("single contested good goes to the smaller weight") {
    const Instance inst =
        make_instance({{1}, {1}}, {Rational(2), Rational(1)});
    const auto alloc = weighted_leximin(inst);
    CHECK(alloc.bundles == std::vector<std::vector<int>>{{}, {0}});
  }
  SECTION("fewer goods than agents: smallest weights win one each") {
    const Instance inst = make_instance(
        {{1, 1}, {1, 1}, {1, 1}, {1, 1}},
        {Rational(3), Rational(1), Rational(2), Rational(1, 2)});
    const auto alloc = weighted_leximin(inst);
    CHECK(utility(inst, alloc) == UtilityVector{0, 1, 0, 1});
    CHECK(alloc.bundles ==
          std::vector<std::vector<int>>{{}, {0}, {}, {1}});
  }
  SECTION("guard applies") {
    std::vector<std::vector<std::uint8_t>> big(
        3, std::vector<std::uint8_t>(16, 1));
    CHECK_THROWS_AS(weighted_leximin(make_instance(std::move(big))),
                    GuardExceeded);
  }
}

TEST_CASE("equal weights: leximin vector equals the oracle vector") {
  RandomSource rng(103);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = rng.uniform_int(1, 4);
    const int m = rng.uniform_int(0, 6);
    const double density = std::vector<double>{0.3, 0.5, 0.8}[
        static_cast<std::size_t>(trial % 3)];
    const Instance inst = random_instance(rng, {n, m, density, {}});
    CHECK(utility(inst, weighted_leximin(inst)) ==
          brute_force_mwnw_tie(inst).second);
  }
}
