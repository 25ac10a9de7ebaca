#pragma once

#include <string>

#include "adl/belief_model.hpp"
#include "adl/formula.hpp"

namespace adl {

// [target | given]_role observed at one individual.
struct Observation {
  Formula target;
  Formula given;
  std::string role;

  Formula as_formula() const { return Formula::marginal(target, given, role); }
  static Observation from_formula(const Formula& marginal);  // throws std::invalid_argument
};

struct RoleUpdate {
  BeliefModel model;
  Rational evidence;  // B_i of the observation
  Rational raw_sum;   // row sum before any normalisation
};

// Replaces row (role, i) by role(i,j) * B_j(target) / B_i(observation). Only
// that row changes. With a non-trivial `given` the row need not sum to 1;
// `normalize` rescales it. Throws std::domain_error when B_i(observation) = 0.
RoleUpdate role_update(const BeliefModel& m, std::size_t i, const Observation& obs, bool normalize = false);

struct Extension {
  BeliefModel model;
  std::size_t clone;
};

// Splits i into a high clone (i keeps it, likelihood 2p - p^2) and a low clone
// i* (likelihood p^2) for concept A. Incoming weights to i are halved between
// i and i*, outgoing rows are copied, names and other concepts are shared.
Extension concept_extension(const BeliefModel& m, std::size_t i, const std::string& a);

// Merges i* back into i using the id weights of i over the pair. Concepts and
// rows become the weighted mixture, incoming weights are summed, and id rows
// of the block are reset to the merged row so coherence holds.
BeliefModel aggregate(const BeliefModel& m, std::size_t i, std::size_t clone);

struct ConceptLearning {
  Extension extension;
  Rational evidence_high, evidence_low;  // B_i(obs), B_i*(obs) on the extension
  Rational weight_high, weight_low;      // posterior id weights of the pair
  BeliefModel updated;                   // after the id update, before merging
  BeliefModel model;                     // final
};

ConceptLearning concept_learn(const BeliefModel& m, std::size_t i, const std::string& a, const Formula& obs);

}  // namespace adl
