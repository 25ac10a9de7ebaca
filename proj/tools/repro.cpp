#include "repro.hpp"

#include <cmath>
#include <cstdio>

#include "adl/consistency.hpp"
#include "adl/evaluator.hpp"
#include "adl/knowledge_base.hpp"
#include "adl/learning.hpp"

using namespace adl;

namespace {

// Published values are given to two decimals; anything within half a unit of
// the last digit counts as agreeing.
void row(std::ostream& out, const std::string& what, const Rational& computed, double published,
         const std::string& why_different = "") {
  double c = to_double(computed);
  bool agrees = std::abs(c - published) <= 0.005 + 1e-12;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", published);
  out << (agrees ? "  agree  " : "  DIFFER ") << what << ": computed " << format_probability(computed)
      << ", published " << buf;
  if (!agrees && !why_different.empty()) out << " (" << why_different << ")";
  out << '\n';
}

Rational mass(const BeliefModel& m, const std::string& role, std::size_t i, const std::string& name) {
  Rational s = 0;
  for (auto j : m.names().at(name)) s += m.weight(role, i, j);
  return s;
}

}  // namespace

int run_repro(const std::string& dir, std::ostream& out) {
  const std::string id(kIdRole);
  BeliefModel virus = load_model(dir + "/virus.adm");
  const std::size_t h0 = virus.index_of("H0"), h1 = virus.index_of("H1");

  out << "Virus scenario\n";
  Formula spread = parse_formula("[V | F]_c", virus.signature());
  Formula exposure = parse_formula("E_id (!V & [V | F]_c)", virus.signature());
  const std::string table = "the published ratios do not follow from the contact table";
  row(out, "[V | F]_c at H0", evaluate(virus, h0, spread), 0.78, table);
  row(out, "[V | F]_c at H1", evaluate(virus, h1, spread), 0.78, table);
  row(out, "exposure at Hector", evaluate(virus, h0, exposure), 0.7, table);

  out << "Knowledge base of the virus scenario\n";
  KnowledgeBase kb = load_kb(dir + "/virus.akb");
  row(out, "c-mass Hector->Julia in virus.adm (A4)", mass(virus, "c", h0, "Julia"), 0.3,
      "virus.adm does not satisfy A4");
  BeliefModel witness = load_model(dir + "/virus-witness.adm");
  out << "  virus-witness.adm satisfies the KB: " << (kb_satisfied_by(witness, kb).satisfied ? "yes" : "no") << '\n';
  SolveOptions opt;
  opt.seed = 1;
  out << "  consistency: " << status_name(check_consistency(kb, opt).status) << '\n';
  Verdict q = query_bound(kb, "Hector", Formula::atom("exp"), ratio(1, 4), Bound::Exact, opt);
  out << "  Hector satisfies exp with probability 1/4: " << status_name(q.status) << '\n';

  out << "Role learning (a contact tested positive, false-positive rate 0.1)\n";
  BeliefModel fp = load_model(dir + "/virus-fp.adm");
  RoleUpdate upd = role_update(fp, h0, Observation::from_formula(parse_formula("[(FP ? top : V) | top]_c", fp.signature())));
  const std::string rescaled = "the figure rounds to multiples of 0.05";
  Rational julia = mass(upd.model, "c", h0, "Julia"), igor = mass(upd.model, "c", h0, "Igor");
  const auto& post = upd.model.row("c", h0);
  out << "  evidence: computed " << format_probability(upd.evidence) << '\n';
  row(out, "mass Julia", julia, 0.75, rescaled);
  row(out, "mass Igor", igor, 0.25, rescaled);
  row(out, "Igor split I0", post[fp.index_of("I0")] / igor, 0.1, rescaled);
  row(out, "Igor split I1", post[fp.index_of("I1")] / igor, 0.9, rescaled);
  row(out, "Julia split J0", post[fp.index_of("J0")] / julia, 0.05, rescaled);
  row(out, "Julia split J1", post[fp.index_of("J1")] / julia, 0.95, rescaled);

  out << "Concept learning (Hector's fever)\n";
  BeliefModel cl_model = load_model(dir + "/concept-learning.adm");
  const std::size_t h = cl_model.index_of("H0");
  ConceptLearning cl = concept_learn(cl_model, h, "F", parse_formula("(F ? E_c F : E_c !F)", cl_model.signature()));
  const std::size_t star = cl.extension.clone;
  const std::string revised = "the published figure uses a revised model";
  row(out, "extension high F", cl.extension.model.likelihood(h, "F"), 0.84);
  row(out, "extension low F", cl.extension.model.likelihood(star, "F"), 0.36);
  row(out, "observation at H0", cl.evidence_high, 0.4, revised);
  row(out, "observation at H0*", cl.evidence_low, 0.55, revised);
  row(out, "posterior H0", cl.weight_high, 0.42, revised);
  row(out, "posterior H0*", cl.weight_low, 0.58, revised);
  row(out, "learnt F", cl.model.likelihood(h, "F"), 0.56, revised);
  // The published aggregation step on its own, with the published weights.
  Rational mixed = ratio(42, 100) * ratio(84, 100) + ratio(58, 100) * ratio(36, 100);
  row(out, "aggregation of 0.84/0.36 at 0.42/0.58", mixed, 0.56);
  return 0;
}
