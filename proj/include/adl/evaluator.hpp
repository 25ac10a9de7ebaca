#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "adl/belief_model.hpp"
#include "adl/formula.hpp"
#include "adl/rational.hpp"

namespace adl {

// A core formula flattened into structurally distinct nodes, children before
// parents. Structurally equal subterms get one slot even if they were built
// separately.
struct FormulaDag {
  struct Node {
    Op op;
    std::string name;
    int kids[3] = {-1, -1, -1};
  };
  std::vector<Node> nodes;
  int root = -1;

  static FormulaDag build(const Formula& core);
  std::size_t size() const { return nodes.size(); }
};

// Lazy memoised evaluation of B_i. Each (individual, distinct subformula)
// pair is computed at most once per Evaluator, and evaluations() counts how
// many were computed. Sugar is desugared on entry.
class Evaluator {
 public:
  explicit Evaluator(const BeliefModel& model, bool memoize = true);

  Rational evaluate(std::size_t i, const Formula& f);
  // E^role_i f = sum_j role(i,j) B_j(f)
  Rational expectation(std::size_t i, const std::string& role, const Formula& f);

  std::size_t evaluations() const { return evaluations_; }
  // Distinct subformulas of the most recently evaluated formula.
  std::size_t subformulas() const { return dag_.size(); }

 private:
  void prepare(const Formula& f);
  Rational value(int node, std::size_t i);
  Rational compute(int node, std::size_t i);

  const BeliefModel& model_;
  bool memoize_;
  std::optional<Formula> current_;
  FormulaDag dag_;
  std::vector<std::vector<std::optional<Rational>>> memo_;
  std::size_t evaluations_ = 0;
};

Rational evaluate(const BeliefModel& m, std::size_t i, const Formula& f);
Rational evaluate(const PointedModel& pm, const Formula& f);
Rational expectation(const BeliefModel& m, std::size_t i, const std::string& role, const Formula& f);

// B_i(f) for every individual i. The first runs the bottom-up table kernel
// with OpenMP over individuals; the second is the same sweep on one thread.
std::vector<Rational> evaluate_all(const BeliefModel& m, const Formula& f);
std::vector<Rational> evaluate_all_serial(const BeliefModel& m, const Formula& f);

}  // namespace adl
