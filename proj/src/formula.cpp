#include "adl/formula.hpp"

#include <functional>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace adl {

struct Formula::Node {
  Op op;
  std::string name;
  unsigned n = 0, m = 0;
  std::vector<Formula> kids;
  std::size_t hash = 0;
  bool core = true;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

bool is_core_op(Op op) { return op <= Op::Marginal; }

}  // namespace

const char* op_name(Op op) {
  switch (op) {
    case Op::Always: return "Always";
    case Op::Never: return "Never";
    case Op::Atom: return "Atom";
    case Op::Ite: return "IfThenElse";
    case Op::Marginal: return "Marginal";
    case Op::And: return "And";
    case Op::Or: return "Or";
    case Op::Not: return "Not";
    case Op::Implies: return "Implies";
    case Op::Expect: return "Expect";
    case Op::Exists: return "Exists";
    case Op::AtLeast: return "AtLeast";
  }
  return "?";
}

Formula Formula::make(Op op, std::string name, unsigned n, unsigned m, std::vector<Formula> kids) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->name = std::move(name);
  node->n = n;
  node->m = m;
  node->kids = std::move(kids);
  std::size_t h = mix(static_cast<std::size_t>(op), std::hash<std::string>{}(node->name));
  h = mix(h, n);
  h = mix(h, m);
  bool core = is_core_op(op);
  for (const auto& k : node->kids) {
    h = mix(h, k.hash());
    core = core && k.is_core();
  }
  node->hash = h;
  node->core = core;
  return Formula(std::move(node));
}

Formula::Formula() : Formula(always()) {}

Formula Formula::always() {
  static const Formula f = make(Op::Always, "", 0, 0, {});
  return f;
}
Formula Formula::never() {
  static const Formula f = make(Op::Never, "", 0, 0, {});
  return f;
}
Formula Formula::atom(std::string name) { return make(Op::Atom, std::move(name), 0, 0, {}); }
Formula Formula::ite(Formula c, Formula t, Formula e) {
  return make(Op::Ite, "", 0, 0, {std::move(c), std::move(t), std::move(e)});
}
Formula Formula::marginal(Formula target, Formula given, std::string role) {
  return make(Op::Marginal, std::move(role), 0, 0, {std::move(target), std::move(given)});
}
Formula Formula::conj(Formula a, Formula b) { return make(Op::And, "", 0, 0, {std::move(a), std::move(b)}); }
Formula Formula::disj(Formula a, Formula b) { return make(Op::Or, "", 0, 0, {std::move(a), std::move(b)}); }
Formula Formula::neg(Formula a) { return make(Op::Not, "", 0, 0, {std::move(a)}); }
Formula Formula::implies(Formula a, Formula b) {
  return make(Op::Implies, "", 0, 0, {std::move(a), std::move(b)});
}
Formula Formula::expect(std::string role, Formula a) { return make(Op::Expect, std::move(role), 0, 0, {std::move(a)}); }
Formula Formula::exists(std::string role, Formula a) { return make(Op::Exists, std::move(role), 0, 0, {std::move(a)}); }
Formula Formula::at_least(unsigned n, unsigned m, Formula a) { return make(Op::AtLeast, "", n, m, {std::move(a)}); }

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }
unsigned Formula::n() const { return node_->n; }
unsigned Formula::m() const { return node_->m; }
std::size_t Formula::arity() const { return node_->kids.size(); }
const Formula& Formula::child(std::size_t i) const { return node_->kids.at(i); }
bool Formula::is_core() const { return node_->core; }
std::size_t Formula::hash() const { return node_->hash; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.op() != b.op() || a.name() != b.name() || a.n() != b.n() || a.m() != b.m() ||
      a.arity() != b.arity())
    return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (a.child(i) != b.child(i)) return false;
  return true;
}

namespace {

bool needs_postfix_parens(const Formula& f) {
  switch (f.op()) {
    case Op::Not:
    case Op::Expect:
    case Op::Exists:
      return true;
    default:
      return false;
  }
}

void print(const Formula& f, std::string& out) {
  auto binary = [&](const char* sym) {
    out += '(';
    print(f.child(0), out);
    out += ' ';
    out += sym;
    out += ' ';
    print(f.child(1), out);
    out += ')';
  };
  switch (f.op()) {
    case Op::Always: out += "top"; break;
    case Op::Never: out += "bot"; break;
    case Op::Atom: out += f.name(); break;
    case Op::Ite:
      out += '(';
      print(f.child(0), out);
      out += " ? ";
      print(f.child(1), out);
      out += " : ";
      print(f.child(2), out);
      out += ')';
      break;
    case Op::Marginal: {
      out += '[';
      print(f.target(), out);
      out += " | ";
      print(f.given(), out);
      out += "]_";
      out += f.name();
      break;
    }
    case Op::And: binary("&"); break;
    case Op::Or: binary("|"); break;
    case Op::Implies: binary("=>"); break;
    case Op::Not:
      out += '!';
      print(f.child(0), out);
      break;
    case Op::Expect:
      out += "E_" + f.name() + ' ';
      print(f.child(0), out);
      break;
    case Op::Exists:
      out += "Ex_" + f.name() + ' ';
      print(f.child(0), out);
      break;
    case Op::AtLeast: {
      bool wrap = needs_postfix_parens(f.child(0));
      if (wrap) out += '(';
      print(f.child(0), out);
      if (wrap) out += ')';
      out += "^{" + std::to_string(f.n()) + "/" + std::to_string(f.m()) + "}";
      break;
    }
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

namespace {

class Desugarer {
 public:
  Formula run(const Formula& f) {
    if (auto it = memo_.find(f.identity()); it != memo_.end()) return it->second;
    Formula out = rewrite(f);
    memo_.emplace(f.identity(), out);
    return out;
  }

 private:
  Formula rewrite(const Formula& f) {
    const Formula top = Formula::always(), bot = Formula::never();
    switch (f.op()) {
      case Op::Always:
      case Op::Never:
      case Op::Atom:
        return f;
      case Op::Ite:
        return Formula::ite(run(f.child(0)), run(f.child(1)), run(f.child(2)));
      case Op::Marginal:
        return Formula::marginal(run(f.target()), run(f.given()), f.name());
      case Op::And:
        return Formula::ite(run(f.child(0)), run(f.child(1)), bot);
      case Op::Or:
        return Formula::ite(run(f.child(0)), top, run(f.child(1)));
      case Op::Not:
        return Formula::ite(run(f.child(0)), bot, top);
      case Op::Implies:
        return Formula::ite(run(f.child(0)), run(f.child(1)), top);
      case Op::Expect:
        return Formula::marginal(run(f.child(0)), top, f.name());
      case Op::Exists:
        // not [bot | a]_role
        return Formula::ite(Formula::marginal(bot, run(f.child(0)), f.name()), bot, top);
      case Op::AtLeast: {
        Formula body = run(f.child(0));
        std::map<std::pair<unsigned, unsigned>, Formula> table;
        std::function<Formula(unsigned, unsigned)> sample = [&](unsigned n, unsigned m) -> Formula {
          if (n == 0) return top;
          if (m < n) return bot;
          auto key = std::make_pair(n, m);
          if (auto it = table.find(key); it != table.end()) return it->second;
          Formula r = Formula::ite(body, sample(n - 1, m - 1), sample(n, m - 1));
          table.emplace(key, r);
          return r;
        };
        return sample(f.n(), f.m());
      }
    }
    return f;
  }

  std::unordered_map<const void*, Formula> memo_;
};

template <class Visit>
void walk_distinct(const Formula& f, Visit&& visit) {
  std::unordered_set<const void*> seen;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (!seen.insert(g.identity()).second) continue;
    visit(g);
    for (std::size_t i = 0; i < g.arity(); ++i) stack.push_back(g.child(i));
  }
}

}  // namespace

Formula desugar(const Formula& f) { return Desugarer{}.run(f); }

unsigned modal_depth(const Formula& f) {
  std::unordered_map<const void*, unsigned> memo;
  std::function<unsigned(const Formula&)> depth = [&](const Formula& g) -> unsigned {
    if (auto it = memo.find(g.identity()); it != memo.end()) return it->second;
    unsigned d = 0;
    for (std::size_t i = 0; i < g.arity(); ++i) d = std::max(d, depth(g.child(i)));
    if (g.op() == Op::Marginal || g.op() == Op::Expect || g.op() == Op::Exists) ++d;
    memo.emplace(g.identity(), d);
    return d;
  };
  return depth(f);
}

std::size_t subformula_count(const Formula& f) {
  std::unordered_set<Formula, FormulaHash> distinct;
  walk_distinct(f, [&](const Formula& g) { distinct.insert(g); });
  return distinct.size();
}

std::set<std::string> atoms_of(const Formula& f) {
  std::set<std::string> out;
  walk_distinct(f, [&](const Formula& g) {
    if (g.op() == Op::Atom) out.insert(g.name());
  });
  return out;
}

std::set<std::string> roles_of(const Formula& f) {
  std::set<std::string> out;
  walk_distinct(f, [&](const Formula& g) {
    if (g.op() == Op::Marginal || g.op() == Op::Expect || g.op() == Op::Exists) out.insert(g.name());
  });
  return out;
}

void check_signature(const Formula& f, const Signature& sig) {
  for (const auto& a : atoms_of(f))
    if (!sig.has_concept(a)) throw UnknownSymbol("unknown concept '" + a + "'");
  for (const auto& r : roles_of(f))
    if (!sig.has_role(r)) throw UnknownSymbol("unknown role '" + r + "'");
}

}  // namespace adl
