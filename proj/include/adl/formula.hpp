#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace adl {

inline constexpr std::string_view kIdRole = "id";

// Declared vocabulary. `id` is always a role. Names are absolute {0,1}
// concepts, so formulas may mention them wherever a concept is allowed.
struct Signature {
  std::set<std::string> concepts;
  std::set<std::string> roles{std::string(kIdRole)};
  std::set<std::string> names;

  bool has_concept(const std::string& c) const { return concepts.count(c) || names.count(c); }
  bool has_role(const std::string& r) const { return roles.count(r) > 0; }
};

// The first five operators are the core language; the rest is sugar that
// desugar() rewrites away.
enum class Op : std::uint8_t {
  Always,
  Never,
  Atom,
  Ite,       // (cond ? then : else)
  Marginal,  // [target | given]_role
  And,
  Or,
  Not,
  Implies,
  Expect,   // E_role f
  Exists,   // Ex_role f
  AtLeast,  // f^{n/m}
};

const char* op_name(Op op);

// Immutable formula tree with shared subterms. Copying is a pointer copy, so
// formulas are cheap to pass by value and safe to share across threads.
class Formula {
 public:
  Formula();  // Always

  static Formula always();
  static Formula never();
  static Formula atom(std::string name);
  static Formula ite(Formula cond, Formula then, Formula otherwise);
  static Formula marginal(Formula target, Formula given, std::string role);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula neg(Formula a);
  static Formula implies(Formula a, Formula b);
  static Formula expect(std::string role, Formula a);
  static Formula exists(std::string role, Formula a);
  static Formula at_least(unsigned n, unsigned m, Formula a);

  Op op() const;
  // Atom name for Atom; role name for Marginal, Expect and Exists.
  const std::string& name() const;
  unsigned n() const;
  unsigned m() const;
  std::size_t arity() const;
  const Formula& child(std::size_t i) const;

  // Marginal accessors.
  const Formula& target() const { return child(0); }
  const Formula& given() const { return child(1); }

  bool is_core() const;
  std::size_t hash() const;
  const void* identity() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Op op, std::string name, unsigned n, unsigned m, std::vector<Formula> kids);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Parser-compatible rendering. Binary sugar is always parenthesised so that
// parse(to_string(f)) == f structurally.
std::string to_string(const Formula& f);

// Rewrites sugar into the five core operators. Repeated subterms are shared,
// so f^{n/m} becomes a DAG of O(n*m) distinct nodes.
Formula desugar(const Formula& f);

// Maximum nesting of role operators (Marginal, Expect, Exists).
unsigned modal_depth(const Formula& f);

// Number of structurally distinct subformulas.
std::size_t subformula_count(const Formula& f);

std::set<std::string> atoms_of(const Formula& f);
std::set<std::string> roles_of(const Formula& f);

// Throws UnknownSymbol if f mentions anything outside sig.
void check_signature(const Formula& f, const Signature& sig);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t position)
      : std::runtime_error(message + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnknownSymbol : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Grammar (lowest to highest precedence):
//   implies := or ("=>" implies)?
//   or      := and ("|" and)*
//   and     := unary ("&" unary)*
//   unary   := "!" unary | "E_"ROLE unary | "Ex_"ROLE unary | primary postfix*
//   postfix := "^{" NAT "/" NAT "}"
//   primary := "top" | "bot" | IDENT | "(" f ")" | "(" f "?" f ":" f ")"
//            | "[" and "|" f "]_" ROLE
// With a signature, unknown concepts and roles are rejected.
Formula parse_formula(std::string_view text, const Signature* sig = nullptr);
inline Formula parse_formula(std::string_view text, const Signature& sig) { return parse_formula(text, &sig); }

}  // namespace adl
