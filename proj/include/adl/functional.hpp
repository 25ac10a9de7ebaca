#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "adl/alc.hpp"
#include "adl/belief_model.hpp"
#include "adl/formula.hpp"
#include "adl/rational.hpp"

namespace adl {

// Negations pushed onto atoms. Over functional interpretations
// !Ex_r C and Ex_r !C agree, which is the rule used for roles.
Concept to_pnf(const Concept& c);

// Propositional image of a concept over functional interpretations: the atom
// A seen through role word r.s is the propositional atom "A@r.s" ("A@" at the
// root). The result contains no Exists.
Concept prop_translate(const Concept& c);
std::string prop_atom(const std::string& atom, const std::vector<std::string>& word);
// The atoms "A@w" true at i in a functional interpretation, for every word w
// over `roles` of length <= depth and every A in `atoms`.
std::set<std::string> prop_valuation(const Interpretation& itp, std::size_t i, unsigned depth,
                                     const std::set<std::string>& atoms, const std::set<std::string>& roles);
bool prop_eval(const Concept& prop, const std::set<std::string>& valuation);

// Acyclic alternating automaton. An existential state is a set of pending
// obligations (PNF subformulas to satisfy at the current node). Each option
// of an existential state is a choice for player Exists: literals the node
// label must satisfy plus a universal state. A universal state maps each role
// with obligations to the existential state for that successor; Forall picks
// one of those roles, and a universal state with no roles is a win for Exists.
struct Automaton {
  struct Option {
    std::set<std::string> pos, neg;
    int universal;
  };
  std::vector<std::vector<Concept>> existential;
  std::vector<std::vector<Option>> options;
  std::vector<std::map<std::string, int>> universal;
  int initial = 0;
  std::set<std::string> atoms, roles;

  // delta for Exists: universal states allowed under label y.
  std::vector<int> exists_moves(int state, const std::set<std::string>& y) const;
  // delta for Forall: undefined when the role carries no obligation.
  std::optional<int> forall_move(int universal_state, const std::string& role) const;
  bool acyclic() const;
  // Longest chain of role moves.
  unsigned depth() const;
};

Automaton compile_automaton(const Concept& pnf);

// Backward induction over the position graph. itp must be functional.
bool automaton_accepts(const Automaton& aut, const Interpretation& itp, std::size_t i);

// A fact pattern on the tree of role words: which atoms are known to hold or
// fail at each node. The set of samplings matching it is a cylinder event.
struct AcceptedTree {
  std::map<std::vector<std::string>, std::map<std::string, bool>> facts;
};

std::string to_string(const AcceptedTree& t);

class TreeCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Default cap on enumerated trees; ADL_TREE_CAP overrides it.
std::size_t tree_cap();

// Accepted leaves of the decision tree that reveals atoms one node at a time
// (nodes breadth-first, atoms alphabetically) and stops once acceptance is
// decided. The leaves are pairwise disjoint and together cover exactly the
// accepted samplings.
std::vector<AcceptedTree> recognized_trees(const Automaton& aut);

struct MeasureResult {
  Rational value;
  std::vector<std::pair<AcceptedTree, Rational>> trees;
};

// Probability at `point` of the trees' fact pattern.
Rational tree_probability(const BeliefModel& m, std::size_t point, const AcceptedTree& t);
MeasureResult measure(const BeliefModel& m, std::size_t point, const Concept& c);

// An ADL formula whose value at every pointed model equals measure().
Formula adl_translate(const Concept& c);

// One sampling rooted at `point`, unrolled to `depth` role steps over
// `roles`; nodes at the last level loop to themselves. Node 0 is the root.
Interpretation sample_interpretation(const BeliefModel& m, std::size_t point, unsigned depth, std::uint64_t seed,
                                     const std::set<std::string>& roles);

struct MonteCarloEstimate {
  std::size_t samples = 0, hits = 0;
  double estimate = 0, low = 0, high = 0;  // 99% Wilson interval
};

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index);

MonteCarloEstimate monte_carlo_measure(const BeliefModel& m, std::size_t point, const Concept& c, std::size_t n,
                                       std::uint64_t seed);
MonteCarloEstimate monte_carlo_measure_serial(const BeliefModel& m, std::size_t point, const Concept& c,
                                              std::size_t n, std::uint64_t seed);

}  // namespace adl
