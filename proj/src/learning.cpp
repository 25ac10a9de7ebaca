#include "adl/learning.hpp"

#include <stdexcept>

#include "adl/evaluator.hpp"

namespace adl {

Observation Observation::from_formula(const Formula& f) {
  if (f.op() == Op::Marginal) return {f.target(), f.given(), f.name()};
  if (f.op() == Op::Expect) return {f.child(0), Formula::always(), f.name()};
  throw std::invalid_argument("an observation must be [target | given]_role or E_role target");
}

RoleUpdate role_update(const BeliefModel& m, std::size_t i, const Observation& obs, bool normalize) {
  if (!m.has_role(obs.role)) throw UnknownSymbol("unknown role '" + obs.role + "'");
  Evaluator eval(m);
  Rational evidence = eval.evaluate(i, obs.as_formula());
  if (evidence == 0) throw std::domain_error("observation has probability 0 at " + m.individuals()[i]);
  const auto& prior = m.row(obs.role, i);
  std::vector<Rational> row(m.size(), Rational(0));
  Rational sum = 0;
  Formula target = obs.target.is_core() ? obs.target : desugar(obs.target);
  Evaluator target_eval(m);
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (prior[j] == 0) continue;
    row[j] = prior[j] * target_eval.evaluate(j, target) / evidence;
    sum += row[j];
  }
  if (normalize && sum != 0)
    for (auto& w : row) w /= sum;
  RoleUpdate out{m, evidence, sum};
  out.model.set_row(obs.role, i, std::move(row));
  return out;
}

Extension concept_extension(const BeliefModel& m, std::size_t i, const std::string& a) {
  if (i >= m.size()) throw std::out_of_range("individual index out of range");
  if (!m.concepts().count(a)) throw UnknownSymbol("unknown concept '" + a + "'");
  std::string label = m.individuals()[i] + "*";
  while (m.find(label)) label += "*";
  BeliefModel out = m;
  std::size_t star = out.add_individual(label);
  for (const auto& [c, values] : m.concepts()) out.set_likelihood(c, star, values[i]);
  const Rational& p = m.likelihood(i, a);
  out.set_likelihood(a, i, 2 * p - p * p);
  out.set_likelihood(a, star, p * p);
  for (const auto& [n, members] : m.names())
    if (members.count(i)) {
      auto grown = members;
      grown.insert(star);
      out.set_name(n, grown);
    }
  for (const auto& [role, mat] : m.roles()) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      Rational half = mat[j][i] / 2;
      out.set_weight(role, j, i, half);
      out.set_weight(role, j, star, half);
    }
    out.set_row(role, star, out.row(role, i));
  }
  return {std::move(out), star};
}

BeliefModel aggregate(const BeliefModel& m, std::size_t i, std::size_t clone) {
  if (i == clone || i >= m.size() || clone >= m.size()) throw std::invalid_argument("aggregate needs two individuals");
  const std::string id(kIdRole);
  const Rational &wi = m.weight(id, i, i), &wc = m.weight(id, i, clone);
  if (wc == 0 && m.weight(id, clone, i) == 0)
    throw std::invalid_argument(m.individuals()[i] + " and " + m.individuals()[clone] + " are not id-related");
  if (wi + wc == 0) throw std::invalid_argument("id weights of the pair are both 0");
  const Rational w = wi / (wi + wc), v = 1 - w;

  std::vector<std::string> labels;
  std::vector<std::size_t> old_of;
  for (std::size_t k = 0; k < m.size(); ++k)
    if (k != clone) {
      labels.push_back(m.individuals()[k]);
      old_of.push_back(k);
    }
  const std::size_t n = labels.size();
  std::vector<std::size_t> new_of(m.size());
  for (std::size_t k = 0; k < n; ++k) new_of[old_of[k]] = k;
  new_of[clone] = new_of[i];

  BeliefModel out(labels);
  for (const auto& [c, values] : m.concepts()) {
    out.declare_concept(c);
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t o = old_of[k];
      out.set_likelihood(c, k, o == i ? Rational(w * values[i] + v * values[clone]) : values[o]);
    }
  }
  for (const auto& [name, members] : m.names()) {
    std::set<std::size_t> merged;
    for (auto k : members) merged.insert(new_of[k]);
    out.set_name(name, merged);
  }
  for (const auto& [role, mat] : m.roles()) {
    out.declare_role(role);
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t o = old_of[k];
      std::vector<Rational> row(n, Rational(0));
      for (std::size_t j = 0; j < m.size(); ++j) {
        Rational x = o == i ? Rational(w * mat[i][j] + v * mat[clone][j]) : mat[o][j];
        row[new_of[j]] += x;
      }
      out.set_row(role, k, std::move(row));
    }
  }
  const std::size_t merged = new_of[i];
  std::vector<Rational> id_row = out.row(id, merged);
  for (std::size_t k = 0; k < n; ++k)
    if (id_row[k] != 0) out.set_row(id, k, id_row);
  return out;
}

ConceptLearning concept_learn(const BeliefModel& m, std::size_t i, const std::string& a, const Formula& obs) {
  ConceptLearning out{concept_extension(m, i, a), 0, 0, 0, 0, {}, {}};
  const BeliefModel& ext = out.extension.model;
  const std::size_t star = out.extension.clone;
  Evaluator eval(ext);
  out.evidence_high = eval.evaluate(i, obs);
  out.evidence_low = eval.evaluate(star, obs);
  RoleUpdate upd = role_update(ext, i, {obs, Formula::always(), std::string(kIdRole)});
  out.updated = std::move(upd.model);
  const Rational &hi = out.updated.weight(std::string(kIdRole), i, i),
                 &lo = out.updated.weight(std::string(kIdRole), i, star);
  if (hi + lo == 0)
    throw std::invalid_argument("concept_learn: " + m.individuals()[i] + " carries no id weight at itself after the update");
  out.weight_high = hi / (hi + lo);
  out.weight_low = lo / (hi + lo);
  out.model = aggregate(out.updated, i, star);
  return out;
}

}  // namespace adl
