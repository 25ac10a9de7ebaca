#include "adl/evaluator.hpp"

#include <functional>
#include <unordered_map>

#include <omp.h>

namespace adl {

FormulaDag FormulaDag::build(const Formula& core) {
  if (!core.is_core()) throw std::invalid_argument("FormulaDag needs a core formula");
  FormulaDag dag;
  std::unordered_map<Formula, int, FormulaHash> index;
  std::unordered_map<const void*, int> by_pointer;
  std::function<int(const Formula&)> visit = [&](const Formula& f) -> int {
    if (auto it = by_pointer.find(f.identity()); it != by_pointer.end()) return it->second;
    if (auto it = index.find(f); it != index.end()) {
      by_pointer.emplace(f.identity(), it->second);
      return it->second;
    }
    Node node{f.op(), f.name(), {-1, -1, -1}};
    for (std::size_t k = 0; k < f.arity(); ++k) node.kids[k] = visit(f.child(k));
    int id = static_cast<int>(dag.nodes.size());
    dag.nodes.push_back(std::move(node));
    index.emplace(f, id);
    by_pointer.emplace(f.identity(), id);
    return id;
  };
  dag.root = visit(core);
  return dag;
}

Evaluator::Evaluator(const BeliefModel& model, bool memoize) : model_(model), memoize_(memoize) {}

void Evaluator::prepare(const Formula& f) {
  if (current_ && current_->identity() == f.identity()) return;
  Formula core = f.is_core() ? f : desugar(f);
  check_signature(core, model_.signature());
  dag_ = FormulaDag::build(core);
  current_ = f;
  memo_.assign(dag_.size(), std::vector<std::optional<Rational>>(model_.size()));
}

Rational Evaluator::evaluate(std::size_t i, const Formula& f) {
  if (i >= model_.size()) throw std::out_of_range("individual index out of range");
  prepare(f);
  return value(dag_.root, i);
}

Rational Evaluator::expectation(std::size_t i, const std::string& role, const Formula& f) {
  if (!model_.has_role(role)) throw UnknownSymbol("unknown role '" + role + "'");
  prepare(f);
  const auto& row = model_.row(role, i);
  Rational sum = 0;
  for (std::size_t j = 0; j < row.size(); ++j)
    if (row[j] != 0) sum += row[j] * value(dag_.root, j);
  return sum;
}

Rational Evaluator::value(int node, std::size_t i) {
  if (!memoize_) return compute(node, i);
  if (!memo_[node][i]) {
    Rational v = compute(node, i);
    memo_[node][i] = std::move(v);
  }
  return *memo_[node][i];
}

Rational Evaluator::compute(int node, std::size_t i) {
  ++evaluations_;
  const auto& n = dag_.nodes[node];
  switch (n.op) {
    case Op::Always: return Rational(1);
    case Op::Never: return Rational(0);
    case Op::Atom: return model_.likelihood(i, n.name);
    case Op::Ite: {
      Rational c = value(n.kids[0], i);
      Rational out = 0;
      if (c != 0) out += c * value(n.kids[1], i);
      if (c != 1) out += (1 - c) * value(n.kids[2], i);
      return out;
    }
    case Op::Marginal: {
      const auto& row = model_.row(n.name, i);
      Rational num = 0, den = 0;
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (row[j] == 0) continue;
        Rational given = value(n.kids[1], j);
        if (given == 0) continue;
        Rational w = row[j] * given;
        den += w;
        num += w * value(n.kids[0], j);
      }
      if (den == 0) return Rational(1);
      return num / den;
    }
    default:
      throw std::logic_error("sugar node in core DAG");
  }
}

Rational evaluate(const BeliefModel& m, std::size_t i, const Formula& f) { return Evaluator(m).evaluate(i, f); }

Rational evaluate(const PointedModel& pm, const Formula& f) { return evaluate(*pm.model, pm.point, f); }

Rational expectation(const BeliefModel& m, std::size_t i, const std::string& role, const Formula& f) {
  return Evaluator(m).expectation(i, role, f);
}

namespace {

std::vector<Rational> sweep(const BeliefModel& m, const Formula& f, bool parallel) {
  Formula core = f.is_core() ? f : desugar(f);
  check_signature(core, m.signature());
  FormulaDag dag = FormulaDag::build(core);
  const std::size_t n = m.size();
  const long count = static_cast<long>(n);
  std::vector<std::vector<Rational>> table(dag.size(), std::vector<Rational>(n));
  std::vector<const RoleMatrix*> matrices(dag.size(), nullptr);
  std::vector<const std::vector<Rational>*> concepts(dag.size(), nullptr);
  for (std::size_t k = 0; k < dag.size(); ++k) {
    const auto& node = dag.nodes[k];
    if (node.op == Op::Marginal) matrices[k] = &m.roles().at(node.name);
    if (node.op == Op::Atom) {
      auto it = m.concepts().find(node.name);
      if (it != m.concepts().end()) concepts[k] = &it->second;
    }
  }
  for (std::size_t k = 0; k < dag.size(); ++k) {
    const auto& node = dag.nodes[k];
    auto& out = table[k];
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long ii = 0; ii < count; ++ii) {
      std::size_t i = static_cast<std::size_t>(ii);
      switch (node.op) {
        case Op::Always: out[i] = 1; break;
        case Op::Never: out[i] = 0; break;
        case Op::Atom: out[i] = concepts[k] ? (*concepts[k])[i] : m.likelihood(i, node.name); break;
        case Op::Ite: {
          const Rational& c = table[node.kids[0]][i];
          out[i] = c * table[node.kids[1]][i] + (1 - c) * table[node.kids[2]][i];
          break;
        }
        case Op::Marginal: {
          const auto& row = (*matrices[k])[i];
          const auto& target = table[node.kids[0]];
          const auto& given = table[node.kids[1]];
          Rational num = 0, den = 0, w;
          for (std::size_t j = 0; j < n; ++j) {
            if (row[j] == 0 || given[j] == 0) continue;
            w = row[j] * given[j];
            den += w;
            num += w * target[j];
          }
          out[i] = den == 0 ? Rational(1) : Rational(num / den);
          break;
        }
        default: break;
      }
    }
  }
  return std::move(table[dag.root]);
}

}  // namespace

std::vector<Rational> evaluate_all(const BeliefModel& m, const Formula& f) { return sweep(m, f, true); }

std::vector<Rational> evaluate_all_serial(const BeliefModel& m, const Formula& f) { return sweep(m, f, false); }

}  // namespace adl
