#include <doctest.h>

#include <cmath>
#include <sstream>

#include "support.h"

using namespace aosearch;
using testsupport::kTol;

TEST_CASE("two-variable network scores the joint in log space") {
  BeliefNetwork net = testsupport::two_variable_net();
  CHECK(log_probability(net, Assignment{0, 0}) == doctest::Approx(std::log(0.54)).epsilon(1e-12));
  CHECK(log_probability(net, Assignment{1, 1}) == doctest::Approx(std::log(0.28)).epsilon(1e-12));
}

TEST_CASE("zero entries map to negative infinity") {
  std::vector<int> dom{2};
  BeliefNetwork net(dom, {Factor({0}, dom, {1.0, 0.0})});
  CHECK(std::isinf(log_probability(net, Assignment{1})));
  CHECK(log_probability(net, Assignment{1}) < 0);
}

TEST_CASE("log_probability rejects partial assignments") {
  BeliefNetwork net = testsupport::two_variable_net();
  CHECK_THROWS(log_probability(net, Assignment{0, kUnassigned}));
  CHECK_THROWS(log_probability(net, Assignment{0}));
}

TEST_CASE("UAI parsing") {
  const std::string text =
      "BAYES\n2\n2 2\n2\n1 0\n2 0 1\n\n2\n0.6 0.4\n4\n0.9 0.1\n0.3 0.7\n";
  BeliefNetwork net = parse_uai_string(text);
  CHECK(net == testsupport::two_variable_net());

  SUBCASE("round trip reproduces the network exactly") {
    BeliefNetwork again = parse_uai_string(serialize_uai(net));
    CHECK(again == net);
    CHECK(serialize_uai(again) == serialize_uai(net));
  }
  SUBCASE("generated networks survive a round trip") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      BeliefNetwork g = gen_random(12, 3, 10, 2, seed);
      CHECK(parse_uai_string(serialize_uai(g)) == g);
    }
  }
  SUBCASE("errors carry line numbers") {
    try {
      parse_uai_string("BAYES\n2\n2 2\n2\n1 0\n2 0 1\n\n2\n0.6 0.4\n3\n0.9 0.1 0.3\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("table length mismatch") != std::string::npos);
      CHECK(e.line() == 10);
    }
    CHECK_THROWS_AS(parse_uai_string("MARKOV\n1\n2\n1\n1 0\n2\n0.5 0.5\n"), ParseError);
    CHECK_THROWS_AS(parse_uai_string("BAYES\n1\n2\n1\n1 0\n2\n0.5 abc\n"), ParseError);
    CHECK_THROWS_AS(parse_uai_string("BAYES\n1\n2\n1\n1 3\n2\n0.5 0.5\n"), ModelError);
    CHECK_THROWS_AS(parse_uai_string("BAYES\n1\n2\n1\n1 0\n2\n0.5 0.5\n7\n"), ParseError);
  }
}

TEST_CASE("unnormalized factors are reported") {
  CHECK(testsupport::two_variable_net().unnormalized_factors().empty());
  CodingInstance c = gen_coding(3, 2, 0.5, 1);
  CHECK(c.network.unnormalized_factors().size() == 6);
}

TEST_CASE("evidence parsing and slicing") {
  std::istringstream in("1 1 0");
  Evidence e = parse_evidence(in);
  CHECK(e == Evidence{{1, 0}});
  std::istringstream back(serialize_evidence({{0, 1}, {3, 2}}));
  CHECK(parse_evidence(back) == Evidence{{0, 1}, {3, 2}});

  BeliefNetwork net = testsupport::two_variable_net();
  BeliefNetwork reduced = apply_evidence(net, e);
  REQUIRE(reduced.num_variables() == 1);
  CHECK(reduced.original_ids() == std::vector<int>{0});
  // P(A=a, B=0) = 0.54 and 0.12
  CHECK(log_probability(reduced, Assignment{0}) == doctest::Approx(std::log(0.54)));
  CHECK(log_probability(reduced, Assignment{1}) == doctest::Approx(std::log(0.12)));
  CHECK(expand_assignment(reduced, Assignment{1}, e, 2) == Assignment{1, 0});

  SUBCASE("full evidence folds into the constant") {
    BeliefNetwork none = apply_evidence(net, {{0, 1}, {1, 1}});
    CHECK(none.num_variables() == 0);
    CHECK(none.log_constant() == doctest::Approx(std::log(0.28)));
  }
  SUBCASE("bad evidence is rejected") {
    CHECK_THROWS(apply_evidence(net, {{5, 0}}));
    CHECK_THROWS(apply_evidence(net, {{0, 2}}));
  }
  SUBCASE("reduced scores equal original scores") {
    GridInstance g = gen_grid(4, 0.5, 5, 3);
    BeliefNetwork r = apply_evidence(g.network, g.evidence);
    std::vector<int> vars(static_cast<std::size_t>(r.num_variables()));
    for (int k = 0; k < r.num_variables(); ++k) vars[k] = k;
    Assignment small(vars.size(), 0);
    do {
      Assignment full = expand_assignment(r, small, g.evidence, g.network.num_variables());
      CHECK(log_equal(testsupport::solution_log_value(r, small),
                      testsupport::solution_log_value(g.network, full), kTol));
    } while (next_assignment(vars, r.domain_sizes(), small));
  }
}

TEST_CASE("primal graph cliques each scope") {
  std::vector<int> dom{2, 2, 2};
  BeliefNetwork net(dom, {Factor({0}, dom, {0.5, 0.5}), Factor({0, 1}, dom, {0.5, 0.5, 0.5, 0.5}),
                          Factor({0, 1, 2}, dom, std::vector<double>(8, 0.5))});
  UndirectedGraph g = primal_graph(net);
  CHECK(g.num_edges() == 3);
  CHECK(g.has_edge(0, 2));
  CHECK(g.has_edge(1, 2));

  BeliefNetwork chain = gen_random(1, 2, 0, 0, 0);
  CHECK(primal_graph(chain).num_edges() == 0);
}

TEST_CASE("LogTable combine and slice") {
  std::vector<int> dom{2, 3};
  LogTable a({0}, dom, {std::log(0.5), std::log(0.25)});
  LogTable b({0, 1}, dom, {0, -1, -2, -3, -4, -5});
  std::vector<const LogTable*> parts{&a, &b};
  LogTable m = combine_max(parts, 1, dom);
  REQUIRE(m.scope() == std::vector<int>{0});
  CHECK(m.values()[0] == doctest::Approx(std::log(0.5)));
  CHECK(m.values()[1] == doctest::Approx(std::log(0.25) - 3));
  LogTable s = b.slice(Assignment{1, kUnassigned}, dom);
  CHECK(s.scope() == std::vector<int>{1});
  CHECK(s.values() == std::vector<double>{-3, -4, -5});
  CHECK(log_equal(kLogZero, kLogZero, kTol));
  CHECK_FALSE(log_equal(kLogZero, -1e300, kTol));
}
