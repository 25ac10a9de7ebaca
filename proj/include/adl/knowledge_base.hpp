#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "adl/belief_model.hpp"
#include "adl/formula.hpp"
#include "adl/rational.hpp"

namespace adl {

struct TAxiom {
  enum class Kind { NoMoreLikely, ExactlyAsLikely };
  Kind kind;
  Formula lhs, rhs;
};

struct ConceptAssertion {
  std::string name;
  Rational p;
  Formula concept_formula;
};

struct RoleAssertion {
  std::string subject, object;
  Rational p;
  std::string role;
};

struct KnowledgeBase {
  Signature signature;
  std::vector<TAxiom> tbook;
  std::vector<ConceptAssertion> concept_assertions;
  std::vector<RoleAssertion> role_assertions;

  bool empty() const { return tbook.empty() && concept_assertions.empty() && role_assertions.empty(); }
};

std::string to_string(const TAxiom& t);
std::string to_string(const ConceptAssertion& a);
std::string to_string(const RoleAssertion& a);

class KbError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Line format, `#` starts a comment:
//   concepts: V F exp
//   roles: c
//   names: Hector Julia
//   tbook: lhs <= rhs        (or lhs == rhs)
//   abook: Hector : 0.1 : V
//   abook: (Hector,Julia) : 0.3 : c
// Throws KbError (with a line number) on syntax, signature and
// well-formedness errors.
KnowledgeBase parse_kb(std::string_view text);
KnowledgeBase load_kb(const std::string& path);
std::string to_kb_text(const KnowledgeBase& kb);

// One message per (subject, role) whose role assertions sum above 1.
std::vector<std::string> well_formedness_errors(const KnowledgeBase& kb);

// An atom is a concept name, a name, top or bot.
bool is_atom(const Formula& f);
// C == (D ? E : F), C == [D | E]_role, or C == D, all operands atoms.
bool is_simple(const TAxiom& t);
bool is_simple(const KnowledgeBase& kb);

// True iff no concept cycle passes through a marginalisation axiom.
// Dependencies run from the left-hand concept to its operands. Throws KbError
// on a non-simple axiom.
bool check_acyclic(const std::vector<TAxiom>& tbook);

struct Simplified {
  KnowledgeBase kb;
  // Fresh concept -> the subformula it names.
  std::map<std::string, Formula> defined;
  // Fresh ratio concept -> (lhs, rhs) of the <= axiom it came from.
  std::map<std::string, std::pair<Formula, Formula>> ratios;
};

// Equivalent simple knowledge base. Axioms that are already simple are kept.
Simplified simplify(const KnowledgeBase& kb);

// Adds the fresh concepts of `s` to a model of the original KB so that it
// becomes a model of s.kb: each fresh concept gets B_i of its subformula and
// each ratio concept gets B_i(lhs)/B_i(rhs) (0 where B_i(rhs) = 0).
BeliefModel extend_model(const BeliefModel& m, const Simplified& s);

struct SatisfactionReport {
  bool satisfied = true;
  std::vector<std::string> violations;
};

// Checks names are absolute and shared across id, T-axioms pointwise and
// assertions at every individual carrying the name. With tol > 0, equalities
// and inequalities are checked up to tol. Throws UnknownSymbol when the model
// lacks part of the KB's signature.
SatisfactionReport kb_satisfied_by(const BeliefModel& m, const KnowledgeBase& kb, double tol = 0);

}  // namespace adl
