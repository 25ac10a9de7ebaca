#include <doctest.h>

#include <cmath>

#include "adl/evaluator.hpp"
#include "adl/functional.hpp"
#include "support.hpp"

using namespace adl;
namespace ts = testing_support;

namespace {

const std::vector<std::string> kAtoms{"A", "B"}, kRoles{"r", "s"};

}  // namespace

TEST_CASE("positive normal form") {
  CHECK(to_string(to_pnf(parse_concept("!Ex_r (A & !B)"))) == "Ex_r (!A | B)");
  CHECK(to_pnf(parse_concept("!!A")) == parse_concept("A"));
  CHECK(to_pnf(parse_concept("!(A | top)")) == parse_concept("!A & bot"));
  ts::Rng rng(61);
  for (int k = 0; k < 200; ++k) {
    Concept c = ts::random_concept(rng, 2, kAtoms, kRoles, 6);
    Concept p = to_pnf(c);
    CHECK(is_pnf(p));
    auto itp = ts::random_interpretation(rng, true, kAtoms, kRoles);
    for (std::size_t i = 0; i < itp.size; ++i) CHECK(alc_eval(itp, i, p) == ts::oracle_holds(itp, i, c));
  }
}

TEST_CASE("propositional image") {
  CHECK(to_string(prop_translate(parse_concept("!(A & Ex_r B)"))) == "!(A@ & B@r)");
  CHECK(prop_atom("A", {"r", "s"}) == "A@r.s");
  ts::Rng rng(62);
  for (int k = 0; k < 300; ++k) {
    Concept c = ts::random_concept(rng, 2, kAtoms, kRoles, 6);
    auto itp = ts::random_interpretation(rng, true, kAtoms, kRoles);
    std::set<std::string> atoms(kAtoms.begin(), kAtoms.end()), roles(kRoles.begin(), kRoles.end());
    for (std::size_t i = 0; i < itp.size; ++i)
      CHECK(prop_eval(prop_translate(c), prop_valuation(itp, i, 2, atoms, roles)) == ts::oracle_holds(itp, i, c));
  }
}

TEST_CASE("automaton accepts exactly the models of the concept") {
  ts::Rng rng(63);
  for (int k = 0; k < 300; ++k) {
    Concept c = to_pnf(ts::random_concept(rng, 2, kAtoms, kRoles, 6));
    Automaton aut = compile_automaton(c);
    CHECK(aut.acyclic());
    CHECK(aut.depth() <= modal_depth(c));
    auto itp = ts::random_interpretation(rng, true, kAtoms, kRoles);
    for (std::size_t i = 0; i < itp.size; ++i) CHECK(automaton_accepts(aut, itp, i) == ts::oracle_holds(itp, i, c));
  }
}

TEST_CASE("measure on small cases") {
  BeliefModel u = load_model(ADL_FIXTURES "/unit.adm");
  CHECK(measure(u, 0, parse_concept("A")).value == ratio(1, 2));
  CHECK(measure(u, 0, parse_concept("!(!A & !B)")).value == ratio(5, 8));
  CHECK(measure(u, 0, parse_concept("top")).value == 1);
  CHECK(measure(u, 0, parse_concept("bot")).value == 0);
  auto both = measure(u, 0, parse_concept("A | !A"));
  CHECK(both.value == 1);
  Rational sum = 0;
  for (const auto& [tree, p] : both.trees) sum += p;
  CHECK(sum == 1);
}

TEST_CASE("measure agrees with brute-force enumeration of samplings") {
  ts::Rng rng(64);
  for (int k = 0; k < 60; ++k) {
    ts::ModelShape shape;
    shape.max_individuals = 3;
    shape.concepts = {"A", "B"};
    shape.roles = k % 2 ? std::vector<std::string>{"r"} : std::vector<std::string>{"r", "s"};
    BeliefModel m = ts::random_model(rng, shape);
    Concept c = ts::random_concept(rng, k % 2 ? 2 : 1, {"A", "B"}, shape.roles, 5);
    CAPTURE(to_string(c));
    CHECK(measure(m, 0, c).value == ts::oracle_measure(m, 0, c));
  }
}

TEST_CASE("measure is 0/1 on functional interpretations and matches the classical value") {
  ts::Rng rng(65);
  for (int k = 0; k < 100; ++k) {
    auto itp = ts::random_interpretation(rng, true, kAtoms, kRoles);
    BeliefModel m = from_alc_interpretation(itp);
    Concept c = ts::random_concept(rng, 2, kAtoms, kRoles, 5);
    for (std::size_t i = 0; i < itp.size; ++i)
      CHECK(measure(m, i, c).value == (ts::oracle_holds(itp, i, c) ? 1 : 0));
  }
}

TEST_CASE("the translated formula evaluates to the measure") {
  CHECK(to_string(adl_translate(parse_concept("Ex_r A & !B"))) == "(B ? bot : ([A | top]_r ? top : bot))");
  // The sequential reading fails on this one: the second disjunct must be
  // conditioned on the first failing at the same successor.
  BeliefModel m = parse_model("individuals: u v w\nconcept A: v=1/2 w=1/3\nconcept B: v=1/5 w=1\n"
                              "role r: u->v=1/2 u->w=1/2\n");
  Concept c = parse_concept("Ex_r A | Ex_r (A & B)");
  CHECK(evaluate(m, 0, adl_translate(c)) == measure(m, 0, c).value);
  ts::Rng rng(66);
  for (int k = 0; k < 100; ++k) {
    BeliefModel r = ts::random_model(rng);
    Concept d = ts::random_concept(rng, 2, {"A", "B", "C"}, {"r", "s"}, 5);
    CHECK(evaluate(r, 0, adl_translate(d)) == measure(r, 0, d).value);
  }
}

TEST_CASE("tree cap") {
  BeliefModel u = load_model(ADL_FIXTURES "/unit.adm");
  setenv("ADL_TREE_CAP", "1", 1);
  CHECK(tree_cap() == 1);
  CHECK_THROWS_AS(measure(u, 0, parse_concept("A | B")), TreeCapExceeded);
  unsetenv("ADL_TREE_CAP");
  CHECK(tree_cap() == 100000);
}

TEST_CASE("Monte Carlo estimate") {
  BeliefModel u = load_model(ADL_FIXTURES "/unit.adm");
  auto est = monte_carlo_measure(u, 0, parse_concept("A | B"), 20000, 9);
  CHECK(est.low <= 0.625);
  CHECK(est.high >= 0.625);
  auto ser = monte_carlo_measure_serial(u, 0, parse_concept("A | B"), 20000, 9);
  CHECK(ser.hits == est.hits);
  auto top = monte_carlo_measure(u, 0, parse_concept("top"), 100, 1);
  CHECK(top.estimate == 1);
  CHECK(top.low == 1);
  CHECK(top.high == 1);
  auto itp = sample_interpretation(u, 0, 2, 5, {});
  CHECK(itp.functional());
}
