#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "adl/consistency.hpp"
#include "adl/evaluator.hpp"
#include "adl/functional.hpp"
#include "adl/knowledge_base.hpp"
#include "adl/learning.hpp"
#include "repro.hpp"

#ifndef ADL_FIXTURES_DIR
#define ADL_FIXTURES_DIR "fixtures"
#endif

namespace {

using namespace adl;

enum class Format { Text, Tsv };

// Everything a subcommand may read off the command line.
struct RunConfig {
  std::string model, kb, at, formula, alc, obs, concept_name, name, prob, emit_witness, emit_system, emit_model;
  std::vector<std::string> inputs;
  std::string fixtures = ADL_FIXTURES_DIR;
  std::uint64_t seed = 0;
  std::size_t samples = 0, starts = 64, iterations = 400;
  double tol = 1e-8, sat_tol = 0, time_limit = 60;
  bool normalize = false, keep_extension = false, trees = false, pnf = false, prop = false, at_least = false,
       at_most = false;
  Format format = Format::Text;
};

// %g without exponent padding: 1e-8 rather than 1e-08.
std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  std::string s = buf;
  if (auto e = s.find("e-0"); e != std::string::npos) s.erase(e + 2, 1);
  if (auto e = s.find("e+0"); e != std::string::npos) s.erase(e + 2, 1);
  return s;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::size_t individual(const BeliefModel& m, const std::string& label) {
  if (auto i = m.find(label)) return *i;
  throw std::invalid_argument("no individual '" + label + "' in the model");
}

int cmd_eval(const RunConfig& c) {
  BeliefModel m = load_model(c.model);
  Formula f = parse_formula(c.formula, m.signature());
  std::vector<std::size_t> points;
  if (c.at.empty())
    for (std::size_t i = 0; i < m.size(); ++i) points.push_back(i);
  else
    points.push_back(individual(m, c.at));
  Evaluator eval(m);
  if (c.format == Format::Tsv) std::cout << "individual\texact\tdecimal\n";
  for (auto i : points) {
    Rational v = eval.evaluate(i, f);
    if (c.format == Format::Tsv)
      std::cout << m.individuals()[i] << '\t' << to_string(v) << '\t' << to_decimal(v) << '\n';
    else if (c.at.empty())
      std::cout << m.individuals()[i] << ' ' << format_probability(v) << '\n';
    else
      std::cout << format_probability(v) << '\n';
  }
  return 0;
}

bool validate_file(const std::string& path) {
  try {
    if (path.size() > 4 && path.substr(path.size() - 4) == ".akb") {
      load_kb(path);
    } else {
      auto violations = validate_model(load_model(path));
      if (!violations.empty()) {
        std::cout << "invalid " << path << '\n';
        for (const auto& v : violations) std::cout << "  " << to_string(v) << '\n';
        return false;
      }
    }
  } catch (const std::exception& e) {
    std::cout << "invalid " << path << ": " << e.what() << '\n';
    return false;
  }
  std::cout << "ok " << path << '\n';
  return true;
}

int cmd_validate(const RunConfig& c) {
  bool ok = true;
  for (const auto& p : c.inputs) ok = validate_file(p) && ok;
  return ok ? 0 : 1;
}

int cmd_translate(const RunConfig& c) {
  Concept con = parse_concept(c.alc);
  if (c.pnf) std::cout << "pnf: " << to_string(to_pnf(con)) << '\n';
  if (c.prop) std::cout << "prop: " << to_string(prop_translate(to_pnf(con))) << '\n';
  std::cout << to_string(adl_translate(con)) << '\n';
  return 0;
}

int cmd_measure(const RunConfig& c) {
  BeliefModel m = load_model(c.model);
  const Signature sig = m.signature();
  Concept con = parse_concept(c.alc, &sig);
  std::size_t at = individual(m, c.at);
  if (c.samples > 0) {
    auto est = monte_carlo_measure(m, at, con, c.samples, c.seed);
    if (c.format == Format::Tsv)
      std::cout << "estimate\tlow\thigh\tsamples\thits\n"
                << fmt(est.estimate) << '\t' << fmt(est.low) << '\t' << fmt(est.high) << '\t' << est.samples << '\t'
                << est.hits << '\n';
    else
      std::cout << "estimate " << fmt(est.estimate) << " 99% [" << fmt(est.low) << ", " << fmt(est.high) << "] "
                << est.hits << "/" << est.samples << '\n';
    return 0;
  }
  auto res = measure(m, at, con);
  if (c.format == Format::Tsv)
    std::cout << "exact\tdecimal\ttrees\n" << to_string(res.value) << '\t' << to_decimal(res.value) << '\t'
              << res.trees.size() << '\n';
  else
    std::cout << format_probability(res.value) << '\n';
  if (c.trees)
    for (const auto& [t, p] : res.trees) std::cout << "  " << format_probability(p) << "  " << to_string(t) << '\n';
  return 0;
}

int cmd_kb_check(const RunConfig& c) {
  KnowledgeBase kb = load_kb(c.kb);
  std::cout << "well-formed: yes\n";
  std::cout << "simple: " << (is_simple(kb) ? "yes" : "no") << '\n';
  Simplified s = simplify(kb);
  std::cout << "acyclic: " << (check_acyclic(s.kb.tbook) ? "yes" : "no") << '\n';
  if (!check_acyclic(s.kb.tbook)) return 0;
  ConceptPartition part = build_partition(s.kb);
  for (std::size_t k = 0; k < part.classes.size(); ++k) {
    std::cout << part.label(static_cast<int>(k)) << " = {";
    bool first = true;
    for (const auto& x : part.classes[k]) std::cout << (first ? "" : ",") << x, first = false;
    std::cout << "} #=" << part.counts[k] << '\n';
  }
  for (const auto& [key, count] : part.role_counts) {
    const auto& [from, role, to] = key;
    std::cout << part.label(from) << " => " << part.label(to) << " via " << role << " x" << count << '\n';
  }
  return 0;
}

int cmd_kb_simplify(const RunConfig& c) {
  Simplified s = simplify(load_kb(c.kb));
  for (const auto& [name, f] : s.defined) std::cout << "# " << name << " := " << to_string(f) << '\n';
  for (const auto& [name, sides] : s.ratios)
    std::cout << "# " << name << " := " << to_string(sides.first) << " / " << to_string(sides.second) << '\n';
  std::cout << to_kb_text(s.kb);
  return 0;
}

int cmd_kb_satisfied(const RunConfig& c) {
  KnowledgeBase kb = load_kb(c.kb);
  BeliefModel m = load_model(c.model);
  auto rep = kb_satisfied_by(m, kb, c.sat_tol);
  std::cout << (rep.satisfied ? "SATISFIED" : "NOT SATISFIED") << '\n';
  for (const auto& v : rep.violations) std::cout << "  " << v << '\n';
  return 0;
}

SolveOptions solve_options(const RunConfig& c) {
  SolveOptions o;
  o.starts = c.starts;
  o.iterations = c.iterations;
  o.tol = c.tol;
  o.seed = c.seed;
  o.time_limit = c.time_limit;
  return o;
}

void print_verdict(const Verdict& v, const RunConfig& c) {
  switch (v.status) {
    case Verdict::Status::Consistent:
      std::cout << "CONSISTENT residual<=" << fmt(c.tol) << '\n';
      if (!v.witness_verified) std::cout << "note: " << v.note << '\n';
      break;
    case Verdict::Status::Infeasible: std::cout << "INFEASIBLE " << v.note << '\n'; break;
    case Verdict::Status::Unknown:
      std::cout << "UNKNOWN best residual " << fmt(v.residual) << " after " << v.starts_run << " starts (" << v.note
                << ")\n";
      break;
  }
  if (!c.emit_witness.empty() && v.witness) write_file(c.emit_witness, to_model_text(*v.witness));
}

int cmd_kb_consistent(const RunConfig& c) {
  KnowledgeBase kb = load_kb(c.kb);
  if (!c.emit_system.empty()) write_file(c.emit_system, generate_constraints(simplify(kb).kb).to_text());
  print_verdict(check_consistency(kb, solve_options(c)), c);
  return 0;
}

int cmd_kb_query(const RunConfig& c) {
  KnowledgeBase kb = load_kb(c.kb);
  Formula f = parse_formula(c.formula, kb.signature);
  Bound dir = c.at_least ? Bound::AtLeast : c.at_most ? Bound::AtMost : Bound::Exact;
  print_verdict(query_bound(kb, c.name, f, parse_rational(c.prob), dir, solve_options(c)), c);
  return 0;
}

int cmd_learn_role(const RunConfig& c) {
  BeliefModel m = load_model(c.model);
  std::size_t at = individual(m, c.at);
  Observation obs = Observation::from_formula(parse_formula(c.obs, m.signature()));
  RoleUpdate upd = role_update(m, at, obs, c.normalize);
  std::cout << "evidence " << format_probability(upd.evidence) << '\n';
  std::cout << "row sum " << format_probability(upd.raw_sum) << (c.normalize ? " (renormalised)" : "") << '\n';
  const auto& row = upd.model.row(obs.role, at);
  for (std::size_t j = 0; j < row.size(); ++j)
    if (row[j] != 0) std::cout << obs.role << ' ' << c.at << "->" << m.individuals()[j] << ' ' << format_probability(row[j]) << '\n';
  for (const auto& [name, members] : m.names()) {
    Rational mass = 0;
    for (auto j : members) mass += row[j];
    if (mass != 0) std::cout << "mass " << name << ' ' << format_probability(mass) << '\n';
  }
  if (!c.emit_model.empty()) write_file(c.emit_model, to_model_text(upd.model));
  return 0;
}

int cmd_learn_concept(const RunConfig& c) {
  BeliefModel m = load_model(c.model);
  std::size_t at = individual(m, c.at);
  Formula obs = parse_formula(c.obs, m.signature());
  ConceptLearning cl = concept_learn(m, at, c.concept_name, obs);
  const BeliefModel& ext = cl.extension.model;
  const std::size_t star = cl.extension.clone;
  std::cout << "extension " << c.at << ' ' << format_probability(ext.likelihood(at, c.concept_name)) << ' '
            << ext.individuals()[star] << ' ' << format_probability(ext.likelihood(star, c.concept_name)) << '\n';
  std::cout << "evidence " << format_probability(cl.evidence_high) << ' ' << format_probability(cl.evidence_low) << '\n';
  std::cout << "weights " << format_probability(cl.weight_high) << ' ' << format_probability(cl.weight_low) << '\n';
  std::cout << "result " << format_probability(cl.model.likelihood(at, c.concept_name)) << '\n';
  if (c.keep_extension) std::cout << to_model_text(cl.updated);
  if (!c.emit_model.empty()) write_file(c.emit_model, to_model_text(cl.model));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig c;
  int rc = 0;
  CLI::App app{"Aleatoric description logic toolkit"};
  app.require_subcommand(1);
  std::map<std::string, Format> formats{{"text", Format::Text}, {"tsv", Format::Tsv}};
  app.add_option("--format", c.format, "Output format")->transform(CLI::CheckedTransformer(formats));

  auto* eval = app.add_subcommand("eval", "Evaluate a formula on a belief model");
  eval->add_option("--model", c.model)->required()->check(CLI::ExistingFile);
  eval->add_option("--at", c.at, "Individual (all when omitted)");
  eval->add_option("--formula", c.formula)->required();
  eval->callback([&] { rc = cmd_eval(c); });

  auto* validate = app.add_subcommand("validate", "Check model (.adm) and knowledge base (.akb) files");
  validate->add_option("files", c.inputs)->required()->check(CLI::ExistingFile);
  validate->callback([&] { rc = cmd_validate(c); });

  auto* translate = app.add_subcommand("translate", "ADL formula with the same value as an ALC concept's measure");
  translate->add_option("--alc", c.alc)->required();
  translate->add_flag("--pnf", c.pnf, "Also print the negation normal form");
  translate->add_flag("--prop", c.prop, "Also print the propositional image");
  translate->callback([&] { rc = cmd_translate(c); });

  auto* meas = app.add_subcommand("measure", "Probability that a sampling satisfies an ALC concept");
  meas->add_option("--model", c.model)->required()->check(CLI::ExistingFile);
  meas->add_option("--at", c.at)->required();
  meas->add_option("--alc", c.alc)->required();
  auto* exact = meas->add_flag("--exact", "Exact value (default)");
  auto* mc = meas->add_option("--mc", c.samples, "Monte-Carlo samples")->check(CLI::PositiveNumber);
  auto* mseed = meas->add_option("--seed", c.seed);
  exact->excludes(mc);
  mc->needs(mseed);
  meas->add_flag("--trees", c.trees, "List the accepted fact patterns");
  meas->callback([&] { rc = cmd_measure(c); });

  auto* kb = app.add_subcommand("kb", "Knowledge bases");
  kb->require_subcommand(1);
  auto* check = kb->add_subcommand("check", "Well-formedness, simplicity, acyclicity and concept classes");
  check->add_option("kb", c.kb)->required()->check(CLI::ExistingFile);
  check->callback([&] { rc = cmd_kb_check(c); });
  auto* simp = kb->add_subcommand("simplify", "Equivalent simple knowledge base");
  simp->add_option("kb", c.kb)->required()->check(CLI::ExistingFile);
  simp->callback([&] { rc = cmd_kb_simplify(c); });
  auto* sat = kb->add_subcommand("satisfied-by", "Does a model satisfy the knowledge base");
  sat->add_option("kb", c.kb)->required()->check(CLI::ExistingFile);
  sat->add_option("--model", c.model)->required()->check(CLI::ExistingFile);
  sat->add_option("--tol", c.sat_tol, "Tolerance (0 = exact)");
  sat->callback([&] { rc = cmd_kb_satisfied(c); });

  auto solver_flags = [&](CLI::App* s) {
    s->add_option("kb", c.kb)->required()->check(CLI::ExistingFile);
    s->add_option("--seed", c.seed)->required();
    s->add_option("--starts", c.starts)->check(CLI::PositiveNumber);
    s->add_option("--iters", c.iterations)->check(CLI::PositiveNumber);
    s->add_option("--tol", c.tol)->check(CLI::PositiveNumber);
    s->add_option("--time-limit", c.time_limit, "Seconds")->check(CLI::PositiveNumber);
    s->add_option("--emit-witness", c.emit_witness, "Write the witness model here");
  };
  auto* cons = kb->add_subcommand("consistent", "Search for a model of the knowledge base");
  solver_flags(cons);
  cons->add_option("--emit-system", c.emit_system, "Write the polynomial system here");
  cons->callback([&] { rc = cmd_kb_consistent(c); });
  auto* query = kb->add_subcommand("query", "Is a probability for a name consistent with the knowledge base");
  solver_flags(query);
  query->add_option("--name", c.name)->required();
  query->add_option("--formula", c.formula)->required();
  query->add_option("--p", c.prob)->required();
  auto* least = query->add_flag("--at-least", c.at_least);
  auto* most = query->add_flag("--at-most", c.at_most);
  least->excludes(most);
  query->callback([&] { rc = cmd_kb_query(c); });

  auto* learn = app.add_subcommand("learn", "Bayesian belief revision");
  learn->require_subcommand(1);
  auto* lrole = learn->add_subcommand("role", "Update one role row after an observation");
  lrole->add_option("--model", c.model)->required()->check(CLI::ExistingFile);
  lrole->add_option("--at", c.at)->required();
  lrole->add_option("--obs", c.obs, "[target | given]_role or E_role target")->required();
  lrole->add_flag("--normalize", c.normalize);
  lrole->add_option("--emit-model", c.emit_model);
  lrole->callback([&] { rc = cmd_learn_role(c); });
  auto* lcon = learn->add_subcommand("concept", "Learn a concept likelihood through its extension");
  lcon->add_option("--model", c.model)->required()->check(CLI::ExistingFile);
  lcon->add_option("--at", c.at)->required();
  lcon->add_option("--concept", c.concept_name)->required();
  lcon->add_option("--obs", c.obs)->required();
  lcon->add_flag("--keep-extension", c.keep_extension, "Print the updated extension before merging");
  lcon->add_option("--emit-model", c.emit_model);
  lcon->callback([&] { rc = cmd_learn_concept(c); });

  auto* repro = app.add_subcommand("repro", "Re-run the worked examples against the published values");
  repro->add_option("--fixtures", c.fixtures)->check(CLI::ExistingDirectory);
  repro->callback([&] { rc = run_repro(c.fixtures, std::cout); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return rc;
}
