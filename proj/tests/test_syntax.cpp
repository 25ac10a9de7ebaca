#include <doctest.h>

#include "adl/formula.hpp"
#include "adl/rational.hpp"
#include "support.hpp"

using namespace adl;

TEST_CASE("rationals parse exactly and print as p/q (decimal)") {
  CHECK(parse_rational("0.15") == ratio(3, 20));
  CHECK(parse_rational("3/10") == ratio(3, 10));
  CHECK(parse_rational("007") == 7);
  CHECK(parse_rational("0.09") == ratio(9, 100));
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK(format_probability(Rational(1)) == "1 (1.0)");
  CHECK(format_probability(ratio(1, 2)) == "1/2 (0.5)");
  CHECK(rationalize(0.3, 1000000) == ratio(3, 10));
  CHECK(rationalize(1.0 / 3, 1000) == ratio(1, 3));
  CHECK(rationalize(0.0, 10) == 0);
}

TEST_CASE("sugar rewrites to the core operators") {
  Formula a = Formula::atom("A"), b = Formula::atom("B");
  CHECK(desugar(Formula::conj(a, b)) == Formula::ite(a, b, Formula::never()));
  CHECK(desugar(Formula::disj(a, b)) == Formula::ite(a, Formula::always(), b));
  CHECK(desugar(Formula::neg(a)) == Formula::ite(a, Formula::never(), Formula::always()));
  CHECK(desugar(Formula::implies(a, b)) == Formula::ite(a, b, Formula::always()));
  CHECK(desugar(Formula::expect("r", a)) == Formula::marginal(a, Formula::always(), "r"));
  CHECK(desugar(Formula::exists("r", a)) ==
        Formula::ite(Formula::marginal(Formula::never(), a, "r"), Formula::never(), Formula::always()));
  CHECK(desugar(Formula::at_least(0, 3, a)) == Formula::always());
  CHECK(desugar(Formula::at_least(2, 1, a)) == Formula::never());
  CHECK(desugar(Formula::at_least(1, 1, a)) == Formula::ite(a, Formula::always(), Formula::never()));
  CHECK(desugar(a) == a);
  CHECK(desugar(Formula::always()).is_core());
}

TEST_CASE("at-least shares subterms, so its DAG is quadratic") {
  Formula a = Formula::atom("A");
  for (unsigned m = 1; m <= 12; ++m) {
    Formula f = desugar(Formula::at_least(m / 2, m, a));
    CHECK(f.is_core());
    CHECK(subformula_count(f) <= (m + 1) * (m + 1) + 3);
  }
}

TEST_CASE("printer output parses back to the same formula") {
  testing_support::Rng rng(11);
  for (int k = 0; k < 300; ++k) {
    Formula f = testing_support::random_formula(rng, {"A", "B", "x'1"}, {"r", "id"}, 1 + k % 9);
    CAPTURE(to_string(f));
    CHECK(parse_formula(to_string(f)) == f);
  }
}

TEST_CASE("parser precedence and errors") {
  CHECK(to_string(parse_formula("A & B | C")) == to_string(parse_formula("(A & B) | C")));
  CHECK(parse_formula("A => B => C") == parse_formula("A => (B => C)"));
  CHECK(parse_formula("!A & B") == Formula::conj(Formula::neg(Formula::atom("A")), Formula::atom("B")));
  CHECK(parse_formula("E_c A & B") == Formula::conj(Formula::expect("c", Formula::atom("A")), Formula::atom("B")));
  CHECK(parse_formula("A^{2/3}") == Formula::at_least(2, 3, Formula::atom("A")));
  CHECK(parse_formula("[A & B | C]_r") ==
        Formula::marginal(Formula::conj(Formula::atom("A"), Formula::atom("B")), Formula::atom("C"), "r"));
  CHECK(parse_formula("(A ? top : bot)") == Formula::ite(Formula::atom("A"), Formula::always(), Formula::never()));
  CHECK_THROWS_AS(parse_formula("A &"), ParseError);
  CHECK_THROWS_AS(parse_formula("[A | B]"), ParseError);
  CHECK_THROWS_AS(parse_formula("(A ? B)"), ParseError);
  Signature sig;
  sig.concepts = {"A"};
  CHECK_THROWS_AS(parse_formula("B", sig), UnknownSymbol);
  CHECK_THROWS_AS(parse_formula("E_r A", sig), UnknownSymbol);
  CHECK_NOTHROW(parse_formula("E_id A", sig));
  try {
    parse_formula("A & & B");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("modal depth, atoms and roles") {
  Formula f = parse_formula("[A | E_r B]_s & C");
  CHECK(modal_depth(f) == 2);
  CHECK(atoms_of(f) == std::set<std::string>{"A", "B", "C"});
  CHECK(roles_of(f) == std::set<std::string>{"r", "s"});
  CHECK(modal_depth(parse_formula("top")) == 0);
}
