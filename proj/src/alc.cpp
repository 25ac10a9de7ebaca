#include "adl/alc.hpp"

#include <functional>

namespace adl {

namespace {
std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}
}  // namespace

Concept Concept::make(Kind kind, std::string name, std::vector<Concept> kids) {
  std::size_t h = mix(static_cast<std::size_t>(kind) + 101, std::hash<std::string>{}(name));
  for (const auto& k : kids) h = mix(h, k.hash());
  return Concept(std::make_shared<const Node>(Node{kind, std::move(name), std::move(kids), h}));
}

Concept::Concept() : Concept(top()) {}
Concept Concept::top() {
  static const Concept c = make(Kind::Top, "", {});
  return c;
}
Concept Concept::bottom() {
  static const Concept c = make(Kind::Bottom, "", {});
  return c;
}
Concept Concept::atom(std::string name) { return make(Kind::Atom, std::move(name), {}); }
Concept Concept::conj(Concept a, Concept b) { return make(Kind::And, "", {std::move(a), std::move(b)}); }
Concept Concept::disj(Concept a, Concept b) { return make(Kind::Or, "", {std::move(a), std::move(b)}); }
Concept Concept::neg(Concept a) { return make(Kind::Not, "", {std::move(a)}); }
Concept Concept::exists(std::string role, Concept a) { return make(Kind::Exists, std::move(role), {std::move(a)}); }

bool operator==(const Concept& a, const Concept& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.name() != b.name() ||
      a.node_->kids.size() != b.node_->kids.size())
    return false;
  for (std::size_t i = 0; i < a.node_->kids.size(); ++i)
    if (a.node_->kids[i] != b.node_->kids[i]) return false;
  return true;
}

std::string to_string(const Concept& c) { return to_string(to_formula(c)); }

Formula to_formula(const Concept& c) {
  switch (c.kind()) {
    case Concept::Kind::Top: return Formula::always();
    case Concept::Kind::Bottom: return Formula::never();
    case Concept::Kind::Atom: return Formula::atom(c.name());
    case Concept::Kind::And: return Formula::conj(to_formula(c.left()), to_formula(c.right()));
    case Concept::Kind::Or: return Formula::disj(to_formula(c.left()), to_formula(c.right()));
    case Concept::Kind::Not: return Formula::neg(to_formula(c.body()));
    case Concept::Kind::Exists: return Formula::exists(c.name(), to_formula(c.body()));
  }
  return Formula::always();
}

Concept concept_from_formula(const Formula& f) {
  switch (f.op()) {
    case Op::Always: return Concept::top();
    case Op::Never: return Concept::bottom();
    case Op::Atom: return Concept::atom(f.name());
    case Op::And: return Concept::conj(concept_from_formula(f.child(0)), concept_from_formula(f.child(1)));
    case Op::Or: return Concept::disj(concept_from_formula(f.child(0)), concept_from_formula(f.child(1)));
    case Op::Not: return Concept::neg(concept_from_formula(f.child(0)));
    case Op::Implies:
      return Concept::disj(Concept::neg(concept_from_formula(f.child(0))), concept_from_formula(f.child(1)));
    case Op::Exists: return Concept::exists(f.name(), concept_from_formula(f.child(0)));
    default:
      throw ParseError(std::string("operator ") + op_name(f.op()) + " is not an ALC connective", 0);
  }
}

Concept parse_concept(std::string_view text, const Signature* sig) {
  return concept_from_formula(parse_formula(text, sig));
}

namespace {
template <class F>
void visit(const Concept& c, F&& f) {
  f(c);
  switch (c.kind()) {
    case Concept::Kind::And:
    case Concept::Kind::Or:
      visit(c.left(), f);
      visit(c.right(), f);
      break;
    case Concept::Kind::Not:
    case Concept::Kind::Exists:
      visit(c.body(), f);
      break;
    default:
      break;
  }
}
}  // namespace

std::set<std::string> atoms_of(const Concept& c) {
  std::set<std::string> out;
  visit(c, [&](const Concept& d) {
    if (d.kind() == Concept::Kind::Atom) out.insert(d.name());
  });
  return out;
}

std::set<std::string> roles_of(const Concept& c) {
  std::set<std::string> out;
  visit(c, [&](const Concept& d) {
    if (d.kind() == Concept::Kind::Exists) out.insert(d.name());
  });
  return out;
}

unsigned modal_depth(const Concept& c) {
  switch (c.kind()) {
    case Concept::Kind::And:
    case Concept::Kind::Or:
      return std::max(modal_depth(c.left()), modal_depth(c.right()));
    case Concept::Kind::Not: return modal_depth(c.body());
    case Concept::Kind::Exists: return 1 + modal_depth(c.body());
    default: return 0;
  }
}

bool is_pnf(const Concept& c) {
  bool ok = true;
  visit(c, [&](const Concept& d) {
    if (d.kind() == Concept::Kind::Not && d.body().kind() != Concept::Kind::Atom) ok = false;
  });
  return ok;
}

bool Interpretation::holds(const std::string& cname, std::size_t i) const {
  auto it = extension.find(cname);
  return it != extension.end() && it->second.at(i);
}

const std::vector<std::size_t>& Interpretation::next(const std::string& role, std::size_t i) const {
  static const std::vector<std::size_t> none;
  auto it = successors.find(role);
  return it == successors.end() ? none : it->second.at(i);
}

bool Interpretation::functional() const {
  for (const auto& [r, succ] : successors)
    for (std::size_t i = 0; i < size; ++i)
      if (succ.at(i).size() != 1) return false;
  return true;
}

bool alc_eval(const Interpretation& itp, std::size_t i, const Concept& c) {
  switch (c.kind()) {
    case Concept::Kind::Top: return true;
    case Concept::Kind::Bottom: return false;
    case Concept::Kind::Atom: return itp.holds(c.name(), i);
    case Concept::Kind::And: return alc_eval(itp, i, c.left()) && alc_eval(itp, i, c.right());
    case Concept::Kind::Or: return alc_eval(itp, i, c.left()) || alc_eval(itp, i, c.right());
    case Concept::Kind::Not: return !alc_eval(itp, i, c.body());
    case Concept::Kind::Exists:
      for (auto j : itp.next(c.name(), i))
        if (alc_eval(itp, j, c.body())) return true;
      return false;
  }
  return false;
}

}  // namespace adl
