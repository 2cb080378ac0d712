#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <sstream>

#include <wnash/wnash.hpp>

#include "test_util.hpp"

using namespace wnash;
using testutil::make_instance;

TEST_CASE("parse_rational accepts integers and fractions") {
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("3/2") == Rational(3, 2));
  CHECK(parse_rational("-1") == Rational(-1));
  CHECK(parse_rational("6/4") == Rational(3, 2));  // lowest terms
  CHECK(parse_rational("0") == Rational(0));
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("3/"), ParseError);
  CHECK_THROWS_AS(parse_rational("/2"), ParseError);
  CHECK_THROWS_AS(parse_rational("3.5"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/-2"), ParseError);
  CHECK_THROWS_AS(parse_rational("+3"), ParseError);
}

TEST_CASE("format_rational inverts parse_rational") {
  CHECK(format_rational(Rational(3, 2)) == "3/2");
  CHECK(format_rational(Rational(2)) == "2");
  CHECK(format_rational(Rational(4, 2)) == "2");
  for (const char* text : {"1", "1/2", "3/2", "7/5", "12"})
    CHECK(format_rational(parse_rational(text)) == text);
}

static const char* kChainJson = R"({
  "agents": [
    {"name": "a1", "weight": "1"},
    {"name": "a2", "weight": "1"},
    {"name": "a3", "weight": "1"}
  ],
  "goods": ["g1", "g2", "g3", "g4"],
  "valuations": [[1,1,0,0],[0,1,1,0],[0,0,1,1]]
})";

TEST_CASE("parse_instance reads the JSON format") {
  const Instance inst = parse_instance(std::string(kChainJson));
  CHECK(inst.agent_count() == 3);
  CHECK(inst.good_count() == 4);
  CHECK(inst.agent_names == std::vector<std::string>{"a1", "a2", "a3"});
  CHECK(inst.weights == std::vector<Rational>{1, 1, 1});
  CHECK(inst.values(0, 0));
  CHECK_FALSE(inst.values(0, 2));
  CHECK(inst.valuations == testutil::three_agent_chain().valuations);

  SECTION("stream overload matches") {
    std::istringstream in{std::string(kChainJson)};
    CHECK(parse_instance(in).valuations == inst.valuations);
  }
}

TEST_CASE("parse_instance accepts an empty good list") {
  const Instance inst = parse_instance(std::string(
      R"({"agents":[{"name":"a1","weight":"2"}],"goods":[],"valuations":[[]]})"));
  CHECK(inst.agent_count() == 1);
  CHECK(inst.good_count() == 0);
  CHECK(inst.weights[0] == Rational(2));
}

TEST_CASE("parse_instance diagnostics") {
  const auto rejects = [](const std::string& text, const std::string& needle) {
    try {
      parse_instance(text);
      FAIL("expected ParseError for: " << text);
    } catch (const ParseError& e) {
      CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring(needle));
    }
  };
  rejects(R"({"agents":[{"name":"a1","weight":"-1"}],"goods":[],"valuations":[[]]})",
          "non-positive weight");
  rejects(R"({"agents":[{"name":"a1","weight":"0"}],"goods":[],"valuations":[[]]})",
          "non-positive weight");
  rejects(R"({"agents":[{"name":"a1","weight":1}],"goods":[],"valuations":[[]]})",
          "weight must be a string");
  rejects(R"({"agents":[{"name":"a1","weight":"1"}],"goods":["g1"],"valuations":[[2]]})",
          "0 or 1");
  rejects(R"({"agents":[{"name":"a1","weight":"1"}],"goods":["g1"],"valuations":[[1,0]]})",
          "expected 1 entries");
  rejects(R"({"agents":[{"name":"a1","weight":"1"}],"goods":["g1"],"valuations":[]})",
          "row count");
  rejects(R"({"agents":[],"goods":[],"valuations":[]})", "at least one agent");
  rejects(R"({"agents":[{"name":"a1","weight":"1"},{"name":"a1","weight":"1"}],
              "goods":[],"valuations":[[],[]]})",
          "duplicate agent name");
  rejects(R"({"agents":[{"name":"a1","weight":"1"}],"goods":["g1","g1"],
              "valuations":[[1,1]]})",
          "duplicate good name");
  rejects("{not json", "malformed JSON");
  rejects(R"({"agents":[{"name":"a1","weight":"1"}],"valuations":[[]]})",
          "goods");
}

TEST_CASE("instance json round-trips") {
  const Instance inst = make_instance({{1, 0, 1}, {0, 1, 1}},
                                      {Rational(3, 2), Rational(2)});
  const auto j = instance_to_json(inst);
  const Instance back = parse_instance(j.dump());
  CHECK(back.agent_names == inst.agent_names);
  CHECK(back.good_names == inst.good_names);
  CHECK(back.weights == inst.weights);
  CHECK(back.valuations == inst.valuations);
}

TEST_CASE("utility counts valued goods per bundle") {
  const Instance inst = testutil::three_agent_chain();

  SECTION("golden bundles") {
    Allocation alloc{{{0, 1}, {2}, {3}}, {}};
    CHECK(utility(inst, alloc) == UtilityVector{2, 1, 1});
  }
  SECTION("all-empty allocation") {
    CHECK(utility(inst, Allocation::empty_for(3)) == UtilityVector{0, 0, 0});
  }
  SECTION("pool goods contribute nothing") {
    Allocation alloc{{{}, {}, {}}, {0, 1, 2, 3}};
    CHECK(utility(inst, alloc) == UtilityVector{0, 0, 0});
  }
  SECTION("unvalued goods in a bundle contribute nothing") {
    Allocation alloc{{{2, 3}, {}, {}}, {}};
    CHECK(utility(inst, alloc) == UtilityVector{0, 0, 0});
  }
  SECTION("out-of-range good index") {
    Allocation alloc{{{7}, {}, {}}, {}};
    CHECK_THROWS_AS(utility(inst, alloc), std::out_of_range);
  }
  SECTION("random allocations agree with an independent recount") {
    RandomSource rng(7);
    for (int trial = 0; trial < 50; ++trial) {
      const Instance random = random_instance(rng, {3, 5, 0.5, {}});
      std::vector<int> owners(5);
      for (auto& o : owners) o = rng.uniform_int(-1, 2);
      const auto alloc = Allocation::from_owners(owners, 3);
      CHECK(utility(random, alloc) == testutil::recount_utilities(random, alloc));
    }
  }
}

TEST_CASE("is_minimally_complete") {
  const Instance inst =
      make_instance({{1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 0}});  // g4 unvalued

  CHECK(is_minimally_complete(inst, Allocation{{{0, 1}, {2}, {}}, {3}}));
  CHECK(is_minimally_complete(inst, Allocation{{{0, 1}, {2}, {}}, {}}));
  // an unvalued good inside a bundle
  CHECK_FALSE(is_minimally_complete(inst, Allocation{{{0, 1, 3}, {2}, {}}, {}}));
  // a valued good left out
  CHECK_FALSE(is_minimally_complete(inst, Allocation{{{0, 1}, {}, {}}, {2}}));
  // valued good held by a non-valuer still counts as allocated
  CHECK(is_minimally_complete(inst, Allocation{{{2}, {0, 1}, {}}, {3}}));
}

TEST_CASE("compare_outcomes golden cases") {
  const std::vector<Rational> unit{1, 1, 1};

  SECTION("positive-count stage decides first") {
    CHECK(compare_outcomes({1, 1, 0}, {3, 0, 0}, unit) ==
          OutcomeOrdering::FirstPreferred);
    CHECK(compare_outcomes({2, 0, 0}, {1, 1, 1}, unit) ==
          OutcomeOrdering::SecondPreferred);
  }
  SECTION("lexicographic stage breaks product ties") {
    CHECK(compare_outcomes({2, 1, 1}, {1, 1, 2}, unit) ==
          OutcomeOrdering::FirstPreferred);
    CHECK(compare_outcomes({1, 2, 1}, {1, 1, 2}, unit) ==
          OutcomeOrdering::FirstPreferred);
  }
  SECTION("identical vectors are Equal") {
    CHECK(compare_outcomes({0, 0}, {0, 0}, {1, 1}) == OutcomeOrdering::Equal);
    CHECK(compare_outcomes({2, 1}, {2, 1}, {Rational(1, 2), 1}) ==
          OutcomeOrdering::Equal);
  }
  SECTION("fractional weights via integer exponents") {
    // weights (1/2, 1): common denominator 2 gives exponents (1, 2), so the
    // contest is 3^1*1^2 = 3 against 2^1*2^2 = 8; same order as the exact
    // products raised to any positive power.
    const std::vector<Rational> w{Rational(1, 2), 1};
    CHECK(compare_outcomes({3, 1}, {2, 2}, w) ==
          OutcomeOrdering::SecondPreferred);
    const BigInt lhs = pow(BigInt(3), 2) * pow(BigInt(1), 2);
    const BigInt rhs = pow(BigInt(2), 2) * pow(BigInt(2), 2);
    CHECK(lhs == 9);
    CHECK(rhs == 16);
    CHECK(lhs < rhs);
  }
  SECTION("empty product when nobody is positive") {
    CHECK(compare_outcomes({0, 1}, {1, 0}, {1, 1}) ==
          OutcomeOrdering::SecondPreferred);  // products tie at 1, lex decides
  }
  SECTION("length mismatch throws") {
    CHECK_THROWS_AS(compare_outcomes({1}, {1, 2}, {1, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(compare_outcomes({1, 1}, {1, 2}, {1}),
                    std::invalid_argument);
  }
}

namespace {

// In-test comparison oracle: maps each result to an integer for antisymmetry
// and transitivity checks.
int sign_of(const UtilityVector& a, const UtilityVector& b,
            const std::vector<Rational>& w) {
  switch (compare_outcomes(a, b, w)) {
    case OutcomeOrdering::FirstPreferred:
      return 1;
    case OutcomeOrdering::SecondPreferred:
      return -1;
    default:
      return 0;
  }
}

}  // namespace

TEST_CASE("compare_outcomes is a total order on sampled vectors") {
  RandomSource rng(11);
  const std::vector<Rational> pool{1, Rational(1, 2), Rational(3, 2), 2, 3};
  for (int trial = 0; trial < 300; ++trial) {
    const int n = rng.uniform_int(1, 4);
    std::vector<Rational> w;
    for (int i = 0; i < n; ++i) w.push_back(pool[rng.next_below(pool.size())]);
    const auto draw = [&] {
      UtilityVector u(static_cast<std::size_t>(n));
      for (auto& v : u) v = rng.uniform_int(0, 4);
      return u;
    };
    const auto a = draw();
    const auto b = draw();
    const auto c = draw();

    // antisymmetry, and Equal exactly for identical vectors
    CHECK(sign_of(a, b, w) == -sign_of(b, a, w));
    CHECK((sign_of(a, b, w) == 0) == (a == b));
    // transitivity on the sampled triple
    if (sign_of(a, b, w) >= 0 && sign_of(b, c, w) >= 0)
      CHECK(sign_of(a, c, w) >= 0);
  }
}

TEST_CASE("compare_outcomes is invariant under weight scaling") {
  RandomSource rng(13);
  const std::vector<Rational> scales{2, Rational(1, 3), Rational(7, 5)};
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.uniform_int(1, 4);
    std::vector<Rational> w;
    for (int i = 0; i < n; ++i)
      w.push_back(Rational(rng.uniform_int(1, 6), rng.uniform_int(1, 6)));
    UtilityVector a(static_cast<std::size_t>(n)), b(a);
    for (auto& v : a) v = rng.uniform_int(0, 4);
    for (auto& v : b) v = rng.uniform_int(0, 4);
    const auto expected = compare_outcomes(a, b, w);
    for (const auto& s : scales) {
      std::vector<Rational> scaled;
      for (const auto& x : w) scaled.push_back(x * s);
      CHECK(compare_outcomes(a, b, scaled) == expected);
    }
  }
}

TEST_CASE("integer lex order matches weighted-power lex order") {
  // For positive rational exponent p/q, x^{p/q} < y^{p/q} iff x^p < y^p on
  // nonnegative integers; so comparing entries by integer powers is an
  // exact stand-in for comparing the weighted entries.
  const std::vector<Rational> exponents{1,          Rational(1, 2),
                                        Rational(3, 2), 2,
                                        Rational(2, 3), 3};
  RandomSource rng(17);
  for (int trial = 0; trial < 400; ++trial) {
    const int x = rng.uniform_int(0, 6);
    const int y = rng.uniform_int(0, 6);
    for (const auto& e : exponents) {
      const auto p = numerator(e).convert_to<unsigned>();
      const BigInt xp = pow(BigInt(x), p);
      const BigInt yp = pow(BigInt(y), p);
      CHECK((x < y) == (xp < yp));
      CHECK((x == y) == (xp == yp));
    }
  }
}

TEST_CASE("restrict keeps chosen bundles and pools the rest") {
  const Allocation alloc{{{0, 1}, {2}, {3}}, {}};

  SECTION("proper subset") {
    const std::vector<int> subset{1, 2};
    const Allocation r = restrict(alloc, subset);
    CHECK(r.bundles == std::vector<std::vector<int>>{{2}, {3}});
    CHECK(r.unallocated == std::vector<int>{0, 1});
  }
  SECTION("all agents is the identity") {
    const std::vector<int> all{0, 1, 2};
    CHECK(restrict(alloc, all) == alloc);
  }
  SECTION("empty subset pools everything") {
    const Allocation r = restrict(alloc, std::vector<int>{});
    CHECK(r.bundles.empty());
    CHECK(r.unallocated == std::vector<int>{0, 1, 2, 3});
  }
  SECTION("old pool stays pooled") {
    const Allocation partial{{{0}, {2}, {}}, {1}};
    const std::vector<int> subset{0};
    const Allocation r = restrict(partial, subset);
    CHECK(r.bundles == std::vector<std::vector<int>>{{0}});
    CHECK(r.unallocated == std::vector<int>{1, 2});
  }
  SECTION("bad indices throw") {
    CHECK_THROWS_AS(restrict(alloc, std::vector<int>{3}), std::out_of_range);
    CHECK_THROWS_AS(restrict(alloc, std::vector<int>{0, 0}),
                    std::invalid_argument);
  }
}

TEST_CASE("build_transformation_graph") {
  SECTION("identical allocations give no edges") {
    const Allocation a{{{0, 1}, {2}}, {}};
    CHECK(build_transformation_graph(a, a, 2).edges.empty());
  }
  SECTION("one-good swap gives a single edge") {
    const Allocation a{{{5}, {}}, {}};
    const Allocation b{{{}, {5}}, {}};
    const auto g = build_transformation_graph(a, b, 2);
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0] == TransformationGraph::Edge{0, 1, 5});
  }
  SECTION("three-cycle of goods") {
    const Allocation a{{{0}, {1}, {2}}, {}};
    const Allocation b{{{2}, {0}, {1}}, {}};
    const auto g = build_transformation_graph(a, b, 3);
    REQUIRE(g.edges.size() == 3);
    // verify against the definition with an independent double loop
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int good = 0; good < 3; ++good) {
          const bool in_a = std::find(a.bundles[i].begin(), a.bundles[i].end(),
                                      good) != a.bundles[i].end();
          const bool in_b = std::find(b.bundles[j].begin(), b.bundles[j].end(),
                                      good) != b.bundles[j].end();
          const bool expected = in_a && in_b && i != j;
          const bool present =
              std::find(g.edges.begin(), g.edges.end(),
                        TransformationGraph::Edge{i, j, good}) != g.edges.end();
          CHECK(present == expected);
        }
    CHECK_FALSE(testutil::kahn_acyclic(g));
  }
  SECTION("differing good sets only produce edges for shared goods") {
    const Allocation a{{{0, 1}, {}}, {}};
    const Allocation b{{{}, {1, 7}}, {}};
    const auto g = build_transformation_graph(a, b, 2);
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0] == TransformationGraph::Edge{0, 1, 1});
  }
}

TEST_CASE("transfers along the graph turn one allocation into the other") {
  RandomSource rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.uniform_int(2, 4);
    const int m = rng.uniform_int(1, 6);
    std::vector<int> owners_a(static_cast<std::size_t>(m));
    std::vector<int> owners_b(static_cast<std::size_t>(m));
    for (auto& o : owners_a) o = rng.uniform_int(0, n - 1);
    for (auto& o : owners_b) o = rng.uniform_int(0, n - 1);
    const auto a = Allocation::from_owners(owners_a, n);
    const auto b = Allocation::from_owners(owners_b, n);
    const auto g = build_transformation_graph(a, b, n);

    auto moved = owners_a;
    for (const auto& e : g.edges) {
      REQUIRE(moved[static_cast<std::size_t>(e.good)] == e.from);
      moved[static_cast<std::size_t>(e.good)] = e.to;
    }
    CHECK(moved == owners_b);
  }
}

TEST_CASE("eliminate_cycles") {
  SECTION("acyclic input is unchanged") {
    TransformationGraph g;
    g.node_count = 3;
    g.edges = {{0, 1, 0}, {1, 2, 1}, {0, 2, 2}};
    const auto out = eliminate_cycles(g);
    CHECK(out.edges == g.edges);
  }
  SECTION("a pure cycle vanishes") {
    TransformationGraph g;
    g.node_count = 3;
    g.edges = {{0, 1, 0}, {1, 2, 1}, {2, 0, 2}};
    CHECK(eliminate_cycles(g).edges.empty());
  }
  SECTION("two-node swap vanishes") {
    TransformationGraph g;
    g.node_count = 2;
    g.edges = {{0, 1, 0}, {1, 0, 1}};
    CHECK(eliminate_cycles(g).edges.empty());
  }
  SECTION("random multigraphs: acyclic and degree-preserving") {
    RandomSource rng(29);
    for (int trial = 0; trial < 200; ++trial) {
      TransformationGraph g;
      g.node_count = rng.uniform_int(1, 6);
      const int edges = rng.uniform_int(0, 12);
      for (int e = 0; e < edges; ++e)
        g.edges.push_back({rng.uniform_int(0, g.node_count - 1),
                           rng.uniform_int(0, g.node_count - 1), e});
      const auto out = eliminate_cycles(g);
      CHECK(testutil::kahn_acyclic(out));
      CHECK(testutil::degree_deltas(out) == testutil::degree_deltas(g));
      // surviving edges are a subset of the input
      for (const auto& e : out.edges)
        CHECK(std::find(g.edges.begin(), g.edges.end(), e) != g.edges.end());
    }
  }
  SECTION("deterministic") {
    RandomSource rng(31);
    TransformationGraph g;
    g.node_count = 5;
    for (int e = 0; e < 10; ++e)
      g.edges.push_back({rng.uniform_int(0, 4), rng.uniform_int(0, 4), e});
    const auto once = eliminate_cycles(g);
    const auto twice = eliminate_cycles(g);
    CHECK(once.edges == twice.edges);
  }
}

TEST_CASE("allocation owner views round-trip") {
  const Allocation alloc{{{0, 2}, {3}}, {1}};
  const auto owners = alloc.owners(5);
  CHECK(owners == std::vector<int>{0, kUnallocated, 0, 1, kAbsent});
  CHECK(Allocation::from_owners(owners, 2) == alloc);
  const Allocation twice{{{0}, {0}}, {}};
  CHECK_THROWS_AS(twice.owners(1), std::invalid_argument);
}
