#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "adl/formula.hpp"

namespace adl {

// Classical ALC concepts. Or and Bottom are kept as first-class variants so
// that positive normal form needs no encoding tricks.
class Concept {
 public:
  enum class Kind { Top, Bottom, Atom, And, Or, Not, Exists };

  Concept();  // Top

  static Concept top();
  static Concept bottom();
  static Concept atom(std::string name);
  static Concept conj(Concept a, Concept b);
  static Concept disj(Concept a, Concept b);
  static Concept neg(Concept a);
  static Concept exists(std::string role, Concept a);

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }  // atom or role
  const Concept& left() const { return node_->kids.at(0); }
  const Concept& right() const { return node_->kids.at(1); }
  const Concept& body() const { return node_->kids.at(0); }
  std::size_t hash() const { return node_->hash; }

  friend bool operator==(const Concept& a, const Concept& b);
  friend bool operator!=(const Concept& a, const Concept& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Concept> kids;
    std::size_t hash;
  };
  explicit Concept(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Concept make(Kind kind, std::string name, std::vector<Concept> kids);
  std::shared_ptr<const Node> node_;
};

std::string to_string(const Concept& c);

// Concepts share the formula grammar: top, bot, atoms, & | ! and Ex_role.
// Anything else is rejected with ParseError.
Concept parse_concept(std::string_view text, const Signature* sig = nullptr);
Concept concept_from_formula(const Formula& f);

// ALC embedding: the same connectives as ADL sugar.
Formula to_formula(const Concept& c);

std::set<std::string> atoms_of(const Concept& c);
std::set<std::string> roles_of(const Concept& c);
unsigned modal_depth(const Concept& c);
bool is_pnf(const Concept& c);

// Finite classical interpretation over individuals 0..size-1.
struct Interpretation {
  std::size_t size = 0;
  std::map<std::string, std::vector<bool>> extension;
  std::map<std::string, std::vector<std::vector<std::size_t>>> successors;

  bool holds(const std::string& cname, std::size_t i) const;
  const std::vector<std::size_t>& next(const std::string& role, std::size_t i) const;
  // Every role used has exactly one successor everywhere.
  bool functional() const;
};

bool alc_eval(const Interpretation& itp, std::size_t i, const Concept& c);

}  // namespace adl
