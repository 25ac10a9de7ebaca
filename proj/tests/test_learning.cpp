#include <doctest.h>

#include "adl/evaluator.hpp"
#include "adl/functional.hpp"
#include "adl/learning.hpp"
#include "support.hpp"

using namespace adl;
namespace ts = testing_support;

TEST_CASE("role update on the virus scenario with false positives") {
  BeliefModel m = load_model(ADL_FIXTURES "/virus-fp.adm");
  const std::size_t h0 = m.index_of("H0");
  RoleUpdate u = role_update(m, h0, Observation::from_formula(parse_formula("[(FP ? top : V) | top]_c")));
  // Direct Bayes: prior c(H0,x) times P(positive at x) = 0.1 + 0.9 V_x.
  CHECK(u.evidence == ratio(676, 1000));
  CHECK(u.model.weight("c", h0, m.index_of("J1")) == ratio(49, 100) / ratio(676, 1000));
  CHECK(u.model.weight("c", h0, m.index_of("I1")) == ratio(15, 100) / ratio(676, 1000));
  CHECK(u.model.weight("c", h0, m.index_of("J0")) == ratio(21, 1000) / ratio(676, 1000));
  CHECK(u.model.weight("c", h0, m.index_of("I0")) == ratio(15, 1000) / ratio(676, 1000));
  CHECK(u.raw_sum == 1);
  // Only that row changed.
  for (std::size_t i = 0; i < m.size(); ++i)
    if (i != h0) CHECK(u.model.row("c", i) == m.row("c", i));
  CHECK(u.model.concepts() == m.concepts());
}

TEST_CASE("role update matches a direct Bayes oracle") {
  ts::Rng rng(31);
  for (int k = 0; k < 100; ++k) {
    BeliefModel m = ts::random_model(rng);
    Formula target = ts::random_formula(rng, {"A", "B"}, {"r"}, 1 + k % 4);
    std::size_t i = static_cast<std::size_t>(ts::uniform(rng, 0, static_cast<int>(m.size()) - 1));
    Rational evidence = 0;
    for (std::size_t j = 0; j < m.size(); ++j) evidence += m.weight("s", i, j) * ts::oracle_value(m, j, target);
    if (evidence == 0) {
      CHECK_THROWS_AS(role_update(m, i, {target, Formula::always(), "s"}), std::domain_error);
      continue;
    }
    RoleUpdate u = role_update(m, i, {target, Formula::always(), "s"});
    Rational sum = 0;
    for (std::size_t j = 0; j < m.size(); ++j) {
      CHECK(u.model.weight("s", i, j) == m.weight("s", i, j) * ts::oracle_value(m, j, target) / evidence);
      sum += u.model.weight("s", i, j);
    }
    CHECK(sum == 1);
    CHECK(validate_model(u.model).empty());
  }
}

TEST_CASE("role update edge cases") {
  BeliefModel m = load_model(ADL_FIXTURES "/virus.adm");
  RoleUpdate same = role_update(m, 0, Observation::from_formula(parse_formula("[top | top]_c")));
  CHECK(to_model_text(same.model) == to_model_text(m));
  CHECK_THROWS_AS(role_update(m, 0, Observation::from_formula(parse_formula("[bot | top]_c"))), std::domain_error);
  // A nontrivial given: the raw row need not sum to 1 unless normalised.
  Observation obs = Observation::from_formula(parse_formula("[V | F]_c"));
  RoleUpdate raw = role_update(m, 0, obs), norm = role_update(m, 0, obs, true);
  CHECK(raw.raw_sum != 1);
  Rational s = 0;
  for (const auto& w : norm.model.row("c", 0)) s += w;
  CHECK(s == 1);
  CHECK_THROWS_AS(Observation::from_formula(parse_formula("V")), std::invalid_argument);
}

TEST_CASE("concept extension splits into 2p - p^2 and p^2") {
  for (Rational p : {Rational(0), ratio(1, 4), ratio(1, 2), ratio(3, 5), Rational(1)}) {
    BeliefModel m(std::vector<std::string>{"u", "v"});
    m.declare_concept("A");
    m.set_likelihood("A", 0, p);
    m.declare_role("r");
    m.set_row("r", 1, {ratio(1, 3), ratio(2, 3)});
    Extension e = concept_extension(m, 0, "A");
    CHECK(e.model.likelihood(0, "A") == 2 * p - p * p);
    CHECK(e.model.likelihood(e.clone, "A") == p * p);
    CHECK(e.model.size() == 3);
    CHECK(e.model.weight("r", 1, 0) == ratio(1, 6));
    CHECK(e.model.weight("r", 1, e.clone) == ratio(1, 6));
    CHECK(e.model.row("r", e.clone) == e.model.row("r", 0));
    CHECK(validate_model(e.model).empty());
    // equal weights merge back to the original likelihood
    BeliefModel half = e.model;
    half.set_row("id", 0, {ratio(1, 2), 0, ratio(1, 2)});
    half.set_row("id", e.clone, {ratio(1, 2), 0, ratio(1, 2)});
    CHECK(aggregate(half, 0, e.clone).likelihood(0, "A") == p);
  }
}

TEST_CASE("aggregation") {
  BeliefModel m(std::vector<std::string>{"h", "h*"});
  m.declare_concept("F");
  m.set_likelihood("F", 0, ratio(84, 100));
  m.set_likelihood("F", 1, ratio(36, 100));
  m.set_row("id", 0, {ratio(42, 100), ratio(58, 100)});
  m.set_row("id", 1, {ratio(42, 100), ratio(58, 100)});
  BeliefModel out = aggregate(m, 0, 1);
  CHECK(out.size() == 1);
  CHECK(out.likelihood(0, "F") == ratio(5616, 10000));
  m.set_row("id", 0, {Rational(1), Rational(0)});
  m.set_row("id", 1, {Rational(0), Rational(1)});
  CHECK_THROWS_AS(aggregate(m, 0, 1), std::invalid_argument);
}

TEST_CASE("concept learning") {
  BeliefModel m = load_model(ADL_FIXTURES "/concept-learning.adm");
  const std::size_t h = m.index_of("H0");
  ConceptLearning cl = concept_learn(m, h, "F", parse_formula("(F ? E_c F : E_c !F)"));
  // B = F (0.8 0.9 + 0.2 0.2) + (1 - F)(0.8 0.1 + 0.2 0.8) with F = 0.84 and 0.36
  CHECK(cl.evidence_high == ratio(84, 100) * ratio(76, 100) + ratio(16, 100) * ratio(24, 100));
  CHECK(cl.evidence_low == ratio(36, 100) * ratio(76, 100) + ratio(64, 100) * ratio(24, 100));
  CHECK(cl.weight_high == cl.evidence_high / (cl.evidence_high + cl.evidence_low));
  CHECK(cl.model.likelihood(h, "F") ==
        cl.weight_high * ratio(84, 100) + cl.weight_low * ratio(36, 100));
  CHECK(to_decimal(cl.model.likelihood(h, "F"), 3) == "0.654");

  SUBCASE("observing top changes nothing") {
    ConceptLearning t = concept_learn(m, h, "F", Formula::always());
    CHECK(t.model.likelihood(h, "F") == ratio(6, 10));
  }
  SUBCASE("observing the concept itself") {
    BeliefModel one(std::vector<std::string>{"u"});
    one.declare_concept("A");
    one.set_likelihood("A", 0, ratio(6, 10));
    ConceptLearning a = concept_learn(one, 0, "A", Formula::at_least(1, 1, Formula::atom("A")));
    CHECK(a.weight_high == ratio(7, 10));
    CHECK(a.model.likelihood(0, "A") == ratio(696, 1000));
  }
  SUBCASE("an observation independent of the concept leaves it unchanged") {
    ts::Rng rng(41);
    for (int k = 0; k < 20; ++k) {
      BeliefModel r = ts::random_model(rng);
      Formula obs = ts::random_formula(rng, {"B", "C"}, {"id"}, 1 + k % 4);
      if (evaluate(r, 0, obs) == 0 || r.weight("id", 0, 0) == 0) continue;
      ConceptLearning out = concept_learn(r, 0, "A", obs);
      CHECK(out.model.likelihood(0, "A") == r.likelihood(0, "A"));
    }
  }
}

TEST_CASE("mixing the two extended pointed models preserves the measure") {
  ts::Rng rng(51);
  for (int k = 0; k < 25; ++k) {
    ts::ModelShape shape;
    shape.max_individuals = 3;
    shape.roles = {"r"};
    shape.concepts = {"A", "B"};
    BeliefModel m = ts::random_model(rng, shape);
    Concept c = ts::random_concept(rng, 2, {"A", "B"}, {"r"}, 5);
    Extension e = concept_extension(m, 0, "A");
    CAPTURE(to_string(c));
    CHECK((measure(e.model, 0, c).value + measure(e.model, e.clone, c).value) / 2 == measure(m, 0, c).value);
  }
}
