#pragma once
// Random instances and independent oracles shared by the unit tests and the
// acceptance binary. The oracles work directly from the semantic clauses and
// never call into the evaluator or the desugarer.

#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "adl/alc.hpp"
#include "adl/belief_model.hpp"
#include "adl/formula.hpp"
#include "adl/knowledge_base.hpp"
#include "adl/rational.hpp"

namespace testing_support {

using adl::BeliefModel;
using adl::Concept;
using adl::Formula;
using adl::Interpretation;
using adl::Op;
using adl::Rational;
using adl::ratio;

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Rational random_probability(Rng& rng) {
  static const int dens[] = {1, 2, 3, 4, 5, 10};
  int den = dens[uniform(rng, 0, 5)];
  return ratio(uniform(rng, 0, den), den);
}

// Positive integer weights normalised; at least one entry is nonzero.
inline std::vector<Rational> random_row(Rng& rng, std::size_t n, const std::vector<std::size_t>& support) {
  std::vector<Rational> row(n, Rational(0));
  std::vector<int> w(support.size());
  int total = 0;
  while (total == 0) {
    total = 0;
    for (auto& x : w) total += x = uniform(rng, 0, 4);
  }
  for (std::size_t k = 0; k < support.size(); ++k) row[support[k]] = ratio(w[k], total);
  return row;
}

struct ModelShape {
  std::size_t min_individuals = 1, max_individuals = 4;
  std::vector<std::string> concepts{"A", "B", "C"};
  std::vector<std::string> roles{"r", "s"};
  std::vector<std::string> names;  // each name gets its own id block
  bool random_id = true;
  bool rows_uniform_in_block = false;  // every role row identical within an id block
};

// id is block-structured with identical rows inside each block, so every
// generated model is valid.
inline BeliefModel random_model(Rng& rng, const ModelShape& shape = {}) {
  std::size_t n = static_cast<std::size_t>(
      uniform(rng, static_cast<int>(std::max(shape.min_individuals, shape.names.size())),
              static_cast<int>(std::max(shape.max_individuals, shape.names.size()))));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("u" + std::to_string(i));
  BeliefModel m(labels);
  for (const auto& c : shape.concepts) {
    m.declare_concept(c);
    for (std::size_t i = 0; i < n; ++i) m.set_likelihood(c, i, random_probability(rng));
  }
  // Blocks: one per name (first individuals), the rest split at random.
  std::vector<std::vector<std::size_t>> blocks;
  std::size_t next = 0;
  for (std::size_t k = 0; k < shape.names.size(); ++k) blocks.push_back({next++});
  for (; next < n; ++next) {
    if (!shape.random_id || blocks.empty() || uniform(rng, 0, 2) == 0)
      blocks.push_back({next});
    else
      blocks[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(blocks.size()) - 1))].push_back(next);
  }
  if (!shape.random_id)
    for (auto& b : blocks) b.resize(1);
  const std::string id(adl::kIdRole);
  for (const auto& b : blocks) {
    auto row = random_row(rng, n, b);
    for (auto i : b) m.set_row(id, i, row);
  }
  std::vector<std::size_t> all(n);
  for (std::size_t j = 0; j < n; ++j) all[j] = j;
  for (const auto& r : shape.roles) {
    m.declare_role(r);
    for (const auto& b : blocks) {
      auto row = random_row(rng, n, all);
      for (auto i : b) m.set_row(r, i, shape.rows_uniform_in_block ? row : random_row(rng, n, all));
    }
  }
  for (std::size_t k = 0; k < shape.names.size(); ++k)
    m.set_name(shape.names[k], std::set<std::size_t>(blocks[k].begin(), blocks[k].end()));
  return m;
}

// Random ALC concept with modal depth <= depth.
inline Concept random_concept(Rng& rng, unsigned depth, const std::vector<std::string>& atoms,
                              const std::vector<std::string>& roles, int size = 4) {
  if (size <= 1 || uniform(rng, 0, 5) == 0) {
    int pick = uniform(rng, 0, static_cast<int>(atoms.size()) + 1);
    if (pick == static_cast<int>(atoms.size())) return uniform(rng, 0, 1) ? Concept::top() : Concept::bottom();
    if (pick > static_cast<int>(atoms.size())) return Concept::neg(Concept::atom(atoms[0]));
    return Concept::atom(atoms[static_cast<std::size_t>(pick)]);
  }
  int kind = uniform(rng, 0, depth > 0 ? 3 : 2);
  auto sub = [&](int s) { return random_concept(rng, depth, atoms, roles, s); };
  switch (kind) {
    case 0: return Concept::conj(sub(size / 2), sub(size - size / 2));
    case 1: return Concept::disj(sub(size / 2), sub(size - size / 2));
    case 2: return Concept::neg(sub(size - 1));
    default:
      return Concept::exists(roles[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(roles.size()) - 1))],
                             random_concept(rng, depth - 1, atoms, roles, size - 1));
  }
}

// Random ADL formula mixing core operators and sugar.
inline Formula random_formula(Rng& rng, const std::vector<std::string>& atoms, const std::vector<std::string>& roles,
                              int size) {
  if (size <= 1) {
    int pick = uniform(rng, 0, static_cast<int>(atoms.size()) + 1);
    if (pick == static_cast<int>(atoms.size())) return Formula::always();
    if (pick > static_cast<int>(atoms.size())) return Formula::never();
    return Formula::atom(atoms[static_cast<std::size_t>(pick)]);
  }
  auto sub = [&](int s) { return random_formula(rng, atoms, roles, s); };
  const std::string& role = roles[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(roles.size()) - 1))];
  int third = std::max(1, (size - 1) / 3), half = std::max(1, (size - 1) / 2);
  switch (uniform(rng, 0, 9)) {
    case 0: return Formula::ite(sub(third), sub(third), sub(third));
    case 1: return Formula::marginal(sub(half), sub(half), role);
    case 2: return Formula::conj(sub(half), sub(half));
    case 3: return Formula::disj(sub(half), sub(half));
    case 4: return Formula::neg(sub(size - 1));
    case 5: return Formula::implies(sub(half), sub(half));
    case 6: return Formula::expect(role, sub(size - 1));
    case 7: return Formula::exists(role, sub(size - 1));
    case 8: {
      unsigned m = static_cast<unsigned>(uniform(rng, 0, 3));
      return Formula::at_least(static_cast<unsigned>(uniform(rng, 0, static_cast<int>(m))), m, sub(size - 1));
    }
    default: return Formula::ite(sub(half), sub(half), Formula::never());
  }
}

inline Rational binomial(unsigned m, unsigned k) {
  Rational c = 1;
  for (unsigned t = 1; t <= k; ++t) c = c * (m - k + t) / t;
  return c;
}

// P(Bin(m, p) >= n)
inline Rational binomial_tail(unsigned n, unsigned m, const Rational& p) {
  Rational sum = 0;
  for (unsigned k = n; k <= m; ++k) {
    Rational term = binomial(m, k);
    for (unsigned t = 0; t < k; ++t) term *= p;
    for (unsigned t = k; t < m; ++t) term *= 1 - p;
    sum += term;
  }
  return sum;
}

// Semantics read straight off the clauses, sugar included:
//   (c ? a : b) = c a + (1-c) b,  [a|b]_r = sum r a b / sum r b (1 if 0/0),
//   a & b = a b,  a | b = a + b - a b,  !a = 1 - a,  a => b = 1 - a + a b,
//   E_r a = sum r a,  Ex_r a = [sum r a > 0],  a^{n/m} = P(Bin(m, a) >= n).
inline Rational oracle_value(const BeliefModel& m, std::size_t i, const Formula& f) {
  auto v = [&](std::size_t j, const Formula& g) { return oracle_value(m, j, g); };
  switch (f.op()) {
    case Op::Always: return 1;
    case Op::Never: return 0;
    case Op::Atom: return m.likelihood(i, f.name());
    case Op::Ite: {
      Rational c = v(i, f.child(0));
      return c * v(i, f.child(1)) + (1 - c) * v(i, f.child(2));
    }
    case Op::Marginal: {
      Rational num = 0, den = 0;
      for (std::size_t j = 0; j < m.size(); ++j) {
        const Rational& w = m.weight(f.name(), i, j);
        if (w == 0) continue;
        Rational g = v(j, f.given());
        num += w * v(j, f.target()) * g;
        den += w * g;
      }
      return den == 0 ? Rational(1) : Rational(num / den);
    }
    case Op::And: return v(i, f.child(0)) * v(i, f.child(1));
    case Op::Or: {
      Rational a = v(i, f.child(0)), b = v(i, f.child(1));
      return a + b - a * b;
    }
    case Op::Not: return 1 - v(i, f.child(0));
    case Op::Implies: {
      Rational a = v(i, f.child(0));
      return 1 - a + a * v(i, f.child(1));
    }
    case Op::Expect: {
      Rational s = 0;
      for (std::size_t j = 0; j < m.size(); ++j)
        if (m.weight(f.name(), i, j) != 0) s += m.weight(f.name(), i, j) * v(j, f.child(0));
      return s;
    }
    case Op::Exists: {
      for (std::size_t j = 0; j < m.size(); ++j)
        if (m.weight(f.name(), i, j) != 0 && v(j, f.child(0)) != 0) return 1;
      return 0;
    }
    case Op::AtLeast: return binomial_tail(f.n(), f.m(), v(i, f.child(0)));
  }
  return 0;
}

// Classical evaluation written independently of alc_eval.
inline bool oracle_holds(const Interpretation& itp, std::size_t i, const Concept& c) {
  switch (c.kind()) {
    case Concept::Kind::Top: return true;
    case Concept::Kind::Bottom: return false;
    case Concept::Kind::Atom: {
      auto it = itp.extension.find(c.name());
      return it != itp.extension.end() && it->second[i];
    }
    case Concept::Kind::And: return oracle_holds(itp, i, c.left()) && oracle_holds(itp, i, c.right());
    case Concept::Kind::Or: return oracle_holds(itp, i, c.left()) || oracle_holds(itp, i, c.right());
    case Concept::Kind::Not: return !oracle_holds(itp, i, c.body());
    case Concept::Kind::Exists: {
      auto it = itp.successors.find(c.name());
      if (it == itp.successors.end()) return false;
      for (auto j : it->second[i])
        if (oracle_holds(itp, j, c.body())) return true;
      return false;
    }
  }
  return false;
}

// functional: exactly one successor per role; otherwise 1..3 successors.
inline Interpretation random_interpretation(Rng& rng, bool functional, const std::vector<std::string>& atoms,
                                            const std::vector<std::string>& roles, std::size_t max_size = 5) {
  Interpretation itp;
  itp.size = static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(max_size)));
  for (const auto& a : atoms) {
    auto& ext = itp.extension[a];
    for (std::size_t i = 0; i < itp.size; ++i) ext.push_back(uniform(rng, 0, 1) == 1);
  }
  for (const auto& r : roles) {
    auto& succ = itp.successors[r];
    succ.resize(itp.size);
    for (std::size_t i = 0; i < itp.size; ++i) {
      int k = functional ? 1 : uniform(rng, 1, static_cast<int>(std::min<std::size_t>(3, itp.size)));
      std::set<std::size_t> picks;
      while (static_cast<int>(picks.size()) < k)
        picks.insert(static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(itp.size) - 1)));
      succ[i].assign(picks.begin(), picks.end());
    }
  }
  return itp;
}

// Brute-force sampling measure: enumerate which individual sits at every node
// of the role tree up to the concept's depth, then every truth assignment of
// the (node, atom) dice the concept can look at.
inline Rational oracle_measure(const BeliefModel& m, std::size_t point, const Concept& c) {
  const unsigned depth = adl::modal_depth(c);
  std::vector<std::string> roles;
  for (const auto& r : adl::roles_of(c)) roles.push_back(r);
  std::vector<std::string> atoms;
  for (const auto& a : adl::atoms_of(c)) atoms.push_back(a);

  // Nodes: words over roles of length <= depth; node 0 is the root.
  std::vector<std::vector<std::size_t>> words{{}};
  std::vector<int> parent{-1}, via{-1};
  for (std::size_t k = 0; k < words.size(); ++k)
    if (words[k].size() < depth)
      for (std::size_t r = 0; r < roles.size(); ++r) {
        auto w = words[k];
        w.push_back(r);
        words.push_back(w);
        parent.push_back(static_cast<int>(k));
        via.push_back(static_cast<int>(r));
      }
  const std::size_t nodes = words.size();
  std::vector<std::size_t> at(nodes, point);
  Rational total = 0;

  std::function<void(std::size_t, const Rational&)> place = [&](std::size_t node, const Rational& weight) {
    if (node == nodes) {
      // Interpretation over the tree: node k's r-successor is its child.
      Interpretation itp;
      itp.size = nodes;
      for (const auto& a : atoms) itp.extension[a].assign(nodes, false);
      for (std::size_t r = 0; r < roles.size(); ++r) {
        auto& succ = itp.successors[roles[r]];
        succ.assign(nodes, {});
        for (std::size_t k = 0; k < nodes; ++k) succ[k] = {k};
      }
      for (std::size_t k = 1; k < nodes; ++k)
        itp.successors[roles[static_cast<std::size_t>(via[k])]][static_cast<std::size_t>(parent[k])] = {k};
      const std::size_t dice = nodes * atoms.size();
      for (std::size_t bits = 0; bits < (std::size_t(1) << dice); ++bits) {
        Rational p = weight;
        for (std::size_t k = 0; k < nodes && p != 0; ++k)
          for (std::size_t a = 0; a < atoms.size(); ++a) {
            bool on = (bits >> (k * atoms.size() + a)) & 1;
            itp.extension[atoms[a]][k] = on;
            const Rational& l = m.likelihood(at[k], atoms[a]);
            p *= on ? l : 1 - l;
          }
        if (p != 0 && oracle_holds(itp, 0, c)) total += p;
      }
      return;
    }
    const std::size_t from = at[static_cast<std::size_t>(parent[node])];
    const std::string& role = roles[static_cast<std::size_t>(via[node])];
    for (std::size_t j = 0; j < m.size(); ++j) {
      const Rational& w = m.weight(role, from, j);
      if (w == 0) continue;
      at[node] = j;
      place(node + 1, weight * w);
    }
  };
  place(1, Rational(1));
  return total;
}

// A satisfiable KB read off a random model: fresh concepts defined by ite or
// marginal axioms, and assertions whose probabilities are computed on the
// model. Returns the KB and the model extended with the fresh concepts.
struct RoundTrip {
  adl::KnowledgeBase kb;
  BeliefModel model;
};

inline RoundTrip random_round_trip(Rng& rng) {
  ModelShape shape;
  shape.min_individuals = 2;
  shape.max_individuals = 4;
  shape.concepts = {"A", "B"};
  shape.roles = {"r"};
  shape.names = uniform(rng, 0, 1) ? std::vector<std::string>{"a", "b"} : std::vector<std::string>{"a"};
  shape.rows_uniform_in_block = true;
  BeliefModel m = random_model(rng, shape);
  adl::KnowledgeBase kb;
  kb.signature.concepts = {"A", "B"};
  kb.signature.roles.insert("r");
  kb.signature.names.insert(shape.names.begin(), shape.names.end());
  std::vector<std::string> pool{"A", "B"};
  auto atom = [&](const std::vector<std::string>& from) {
    return Formula::atom(from[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(from.size()) - 1))]);
  };
  int defs = uniform(rng, 1, 2);
  for (int k = 1; k <= defs; ++k) {
    std::string d = "D" + std::to_string(k);
    Formula rhs = uniform(rng, 0, 1) ? Formula::ite(atom(pool), atom(pool), atom(pool))
                                     : Formula::marginal(atom(pool), atom(pool), "r");
    m.declare_concept(d);
    for (std::size_t i = 0; i < m.size(); ++i) m.set_likelihood(d, i, oracle_value(m, i, rhs));
    kb.signature.concepts.insert(d);
    kb.tbook.push_back({adl::TAxiom::Kind::ExactlyAsLikely, Formula::atom(d), rhs});
    pool.push_back(d);
  }
  const std::string id(adl::kIdRole);
  for (const auto& a : shape.names) {
    std::size_t i = *m.names().at(a).begin();
    Formula f = atom(pool);
    kb.concept_assertions.push_back({a, oracle_value(m, i, Formula::expect(id, f)), f});
  }
  if (shape.names.size() == 2 && uniform(rng, 0, 1)) {
    std::size_t i = *m.names().at("a").begin();
    Rational mass = 0;
    for (auto j : m.names().at("b")) mass += m.weight("r", i, j);
    kb.role_assertions.push_back({"a", "b", mass, "r"});
  }
  return {kb, m};
}

}  // namespace testing_support
