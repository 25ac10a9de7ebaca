#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "adl/belief_model.hpp"
#include "adl/knowledge_base.hpp"

namespace adl {

// Concepts grouped by the congruence generated from the T-axioms, with the
// per-role marginalisation counts between classes.
struct ConceptPartition {
  std::vector<std::set<std::string>> classes;
  std::map<std::string, int> class_of;
  // (from class, role, to class) -> number of axioms E == [F | G]_role with E
  // in `from` and F or G in `to`.
  std::map<std::tuple<int, std::string, int>, int> role_counts;
  std::set<std::pair<int, int>> edges;
  std::vector<int> counts;  // total incoming role count per class

  std::string label(int cls) const { return "K" + std::to_string(cls + 1); }
};

// Throws KbError when the T-Book is not simple and acyclic.
ConceptPartition build_partition(const KnowledgeBase& kb);

// Squared-residual system over box-constrained variables. Every equation
// reads `poly = 0`.
struct ConstraintSystem {
  struct Variable {
    std::string name;
    double lower = 0, upper = 1;  // upper may be +infinity (slacks)
  };
  struct Term {
    double coef;
    std::vector<int> vars;  // a monomial; repeated indices are powers
  };
  struct Equation {
    std::vector<Term> terms;
    double constant = 0;
  };

  std::vector<Variable> variables;
  std::vector<Equation> equations;

  // Template the model is read from.
  std::vector<std::string> individuals;
  std::map<std::string, std::vector<std::size_t>> name_rows;
  // concept -> per individual: variable index, or -1/-2 for constant 0/1
  std::map<std::string, std::vector<int>> concept_slots;
  // role -> [row][column]: variable index, -1 for 0, -2 for 1
  std::map<std::string, std::vector<std::vector<int>>> role_slots;
  std::vector<std::vector<std::size_t>> id_blocks;
  ConceptPartition partition;
  KnowledgeBase kb;  // the simple KB the system encodes

  double evaluate(const Equation& eq, const std::vector<double>& x) const;
  double max_residual(const std::vector<double>& x) const;
  // One constraint per line, bounds first, variables named as x^C_3,
  // r^{K1,c,K2}_{1,2}, n^{Hector,V}_1, e^{C_1,c}_4.
  std::string to_text() const;
};

// Pre: kb simple, acyclic and well-formed (throws KbError otherwise).
ConstraintSystem generate_constraints(const KnowledgeBase& kb);

struct SolveOptions {
  std::size_t starts = 64;
  std::size_t iterations = 400;
  double tol = 1e-8;
  std::uint64_t seed = 1;
  double time_limit = 60;  // seconds; checked between batches of starts
};

struct Verdict {
  enum class Status { Consistent, Infeasible, Unknown };
  Status status = Status::Unknown;
  double residual = 0;
  std::vector<double> assignment;
  std::optional<BeliefModel> witness;
  bool witness_verified = false;  // rational witness passed kb_satisfied_by
  std::string note;
  std::size_t starts_run = 0;
};

const char* status_name(Verdict::Status s);

// Exact contradictions: one name given two probabilities for the same atomic
// concept or the same role and object, or role assertions summing above 1.
std::optional<std::string> find_contradiction(const KnowledgeBase& kb);

// Multi-start projected Levenberg-Marquardt on the squared residuals. Starts
// run in fixed batches with OpenMP; the lowest-index start that reaches tol
// wins, so the verdict depends only on the options.
Verdict solve(const ConstraintSystem& cs, const SolveOptions& options);
Verdict solve_serial(const ConstraintSystem& cs, const SolveOptions& options);

// Rounds to rationals with denominator <= 10^6, renormalises rows exactly and
// copies the first id row of each block to the rest of the block.
BeliefModel extract_model(const ConstraintSystem& cs, const std::vector<double>& assignment);

// Full pipeline: contradiction rules, simplify, acyclicity, constraints,
// solve, and verification of the witness against the original KB.
Verdict check_consistency(const KnowledgeBase& kb, const SolveOptions& options);

enum class Bound { Exact, AtLeast, AtMost };

// Is "name satisfies f with probability exactly / at least / at most p"
// consistent with kb?
Verdict query_bound(const KnowledgeBase& kb, const std::string& name, const Formula& f, const Rational& p,
                    Bound direction, const SolveOptions& options);

}  // namespace adl
