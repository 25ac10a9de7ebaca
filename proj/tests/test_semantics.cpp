#include <doctest.h>

#include "adl/belief_model.hpp"
#include "adl/evaluator.hpp"
#include "support.hpp"

using namespace adl;
namespace ts = testing_support;

namespace {

const char* kSmall = R"(individuals: u v
concept A: u=1/2 v=1
role r: u->v=1
)";

}  // namespace

TEST_CASE("model files parse, print and round-trip") {
  BeliefModel m = parse_model(kSmall);
  CHECK(m.size() == 2);
  CHECK(m.likelihood(0, "A") == ratio(1, 2));
  CHECK(m.weight("r", 0, 1) == 1);
  CHECK(m.weight("r", 1, 1) == 1);  // untouched rows stay identity
  CHECK(m.weight("id", 0, 0) == 1);
  BeliefModel back = parse_model(to_model_text(m));
  CHECK(to_model_text(back) == to_model_text(m));
  CHECK_THROWS_AS(parse_model("individuals: u\nconcept A: w=1\n"), ModelParseError);
  CHECK_THROWS_AS(parse_model("individuals: u\nconcept A u=1\n"), ModelParseError);
  try {
    parse_model("individuals: u\n\nrole r: u->u=2/1x\n");
    FAIL("expected an error");
  } catch (const ModelParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("validate_model reports each kind of violation") {
  auto kinds = [](const BeliefModel& m) {
    std::set<Violation::Kind> out;
    for (const auto& v : validate_model(m)) out.insert(v.kind);
    return out;
  };
  CHECK(validate_model(parse_model(kSmall)).empty());
  CHECK(kinds(parse_model("individuals: u v\nrole r: u->v=1/2\n")).count(Violation::Kind::RowSum));
  CHECK(kinds(parse_model("individuals: u v\nconcept A: u=3/2\n")).count(Violation::Kind::Bounds));
  // u sees v through id but v's id row differs
  CHECK(kinds(parse_model("individuals: u v\nrole id: u->u=1/2 u->v=1/2\n")).count(Violation::Kind::IdCoherence));
  CHECK(kinds(parse_model("individuals: u v\nrole id: u->u=1/2 u->v=1/2 v->u=1/2 v->v=1/2\nnames: a={u}\n"))
            .count(Violation::Kind::NameCoherence));
}

TEST_CASE("evaluation on small hand-computed cases") {
  BeliefModel m = parse_model(kSmall);
  auto at = [&](const char* text, std::size_t i = 0) { return evaluate(m, i, parse_formula(text)); };
  CHECK(at("top") == 1);
  CHECK(at("bot") == 0);
  CHECK(at("A") == ratio(1, 2));
  CHECK(at("!A") == ratio(1, 2));
  CHECK(at("A & A") == ratio(1, 4));  // independent rolls of the same die
  CHECK(at("A | A") == ratio(3, 4));
  CHECK(at("E_r A") == 1);
  CHECK(at("[A | bot]_r") == 1);  // conditioning on a null event
  CHECK(at("Ex_r !A") == 0);
  CHECK(at("A^{1/2}") == ratio(3, 4));
  CHECK(at("A^{2/2}") == ratio(1, 4));
  CHECK(at("A^{0/2}") == 1);
}

TEST_CASE("at-least matches the binomial tail") {
  for (unsigned m = 0; m <= 6; ++m)
    for (unsigned n = 0; n <= m + 1; ++n)
      for (Rational p : {Rational(0), ratio(1, 3), ratio(1, 2), ratio(9, 10), Rational(1)}) {
        BeliefModel model(std::vector<std::string>{"u"});
        model.declare_concept("A");
        model.set_likelihood("A", 0, p);
        CHECK(evaluate(model, 0, Formula::at_least(n, m, Formula::atom("A"))) == ts::binomial_tail(n, m, p));
      }
}

TEST_CASE("evaluator agrees with the clause-by-clause oracle") {
  ts::Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    BeliefModel m = ts::random_model(rng);
    Formula f = ts::random_formula(rng, {"A", "B", "C"}, {"r", "s", "id"}, 1 + k % 10);
    std::size_t i = static_cast<std::size_t>(ts::uniform(rng, 0, static_cast<int>(m.size()) - 1));
    CAPTURE(to_string(f));
    CHECK(evaluate(m, i, f) == ts::oracle_value(m, i, f));
  }
}

TEST_CASE("values stay in [0,1], and the memoised, plain, serial and parallel paths agree") {
  ts::Rng rng(6);
  for (int k = 0; k < 60; ++k) {
    BeliefModel m = ts::random_model(rng);
    Formula f = ts::random_formula(rng, {"A", "B"}, {"r", "id"}, 2 + k % 8);
    auto par = evaluate_all(m, f), ser = evaluate_all_serial(m, f);
    Evaluator plain(m, false);
    for (std::size_t i = 0; i < m.size(); ++i) {
      CHECK(in_unit_interval(par[i]));
      CHECK(par[i] == ser[i]);
      CHECK(plain.evaluate(i, f) == ser[i]);
    }
  }
}

TEST_CASE("memoised evaluator counts at most |I| * |subformulas| evaluations") {
  ts::Rng rng(7);
  for (int k = 0; k < 50; ++k) {
    BeliefModel m = ts::random_model(rng);
    Formula f = ts::random_formula(rng, {"A", "B"}, {"r", "s"}, 3 + k % 12);
    Evaluator e(m);
    for (std::size_t i = 0; i < m.size(); ++i) e.evaluate(i, f);
    CHECK(e.evaluations() <= m.size() * e.subformulas());
  }
}

TEST_CASE("the virus model") {
  BeliefModel m = load_model(ADL_FIXTURES "/virus.adm");
  CHECK(validate_model(m).empty());
  const std::size_t h0 = m.index_of("H0");
  CHECK(evaluate(m, h0, parse_formula("[V | F]_c")) == ratio(561, 648));
  CHECK(evaluate(m, h0, parse_formula("E_id (!V & [V | F]_c)")) == ratio(187, 240));
  CHECK(evaluate(m, h0, parse_formula("Hector")) == 1);
  CHECK(evaluate(m, h0, parse_formula("E_c Julia")) == ratio(7, 10));
}

TEST_CASE("ALC interpretations embed as 0/1 models") {
  ts::Rng rng(8);
  for (int k = 0; k < 100; ++k) {
    auto itp = ts::random_interpretation(rng, false, {"A", "B"}, {"r", "s"});
    BeliefModel m = from_alc_interpretation(itp);
    CHECK(validate_model(m).empty());
    Concept c = ts::random_concept(rng, 2, {"A", "B"}, {"r", "s"}, 5);
    for (std::size_t i = 0; i < itp.size; ++i) {
      Rational v = evaluate(m, i, desugar(to_formula(c)));
      CHECK((v == 0 || v == 1));
      CHECK((v == 1) == ts::oracle_holds(itp, i, c));
      CHECK(alc_eval(itp, i, c) == ts::oracle_holds(itp, i, c));
    }
  }
  Interpretation dead;
  dead.size = 1;
  dead.successors["r"] = {{}};
  CHECK_THROWS_AS(from_alc_interpretation(dead), std::invalid_argument);
}
