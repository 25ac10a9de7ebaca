#include <cctype>

#include "adl/formula.hpp"

namespace adl {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

class Parser {
 public:
  Parser(std::string_view text, const Signature* sig) : s_(text), sig_(sig) {}

  Formula parse() {
    Formula f = implies();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(std::string_view tok) {
    skip_ws();
    return s_.substr(pos_, tok.size()) == tok;
  }

  bool accept(std::string_view tok) {
    if (!peek(tok)) return false;
    pos_ += tok.size();
    return true;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  std::string ident() {
    skip_ws();
    if (pos_ >= s_.size() || !ident_start(s_[pos_])) fail("expected identifier");
    std::size_t start = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  unsigned nat() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a natural number");
    unsigned long v = std::stoul(std::string(s_.substr(start, pos_ - start)));
    return static_cast<unsigned>(v);
  }

  std::string role(std::size_t at) {
    std::string r = ident();
    if (sig_ && !sig_->has_role(r)) throw UnknownSymbol("unknown role '" + r + "' at position " + std::to_string(at));
    return r;
  }

  Formula implies() {
    Formula lhs = disjunction();
    if (accept("=>")) return Formula::implies(lhs, implies());
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (peek("|")) {
      ++pos_;
      f = Formula::disj(f, conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept("&")) f = Formula::conj(f, unary());
    return f;
  }

  Formula unary() {
    skip_ws();
    if (accept("!")) return Formula::neg(unary());
    if (pos_ < s_.size() && ident_start(s_[pos_])) {
      std::size_t save = pos_;
      std::string word = ident();
      if (word.rfind("Ex_", 0) == 0 && word.size() > 3) {
        pos_ = save + 3;
        std::string r = role(save);
        return Formula::exists(r, unary());
      }
      if (word.rfind("E_", 0) == 0 && word.size() > 2) {
        pos_ = save + 2;
        std::string r = role(save);
        return Formula::expect(r, unary());
      }
      pos_ = save;
    }
    return postfix(primary());
  }

  Formula postfix(Formula f) {
    while (accept("^{")) {
      unsigned n = nat();
      expect("/");
      unsigned m = nat();
      expect("}");
      f = Formula::at_least(n, m, f);
    }
    return f;
  }

  Formula primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (accept("(")) {
      Formula first = implies();
      if (accept("?")) {
        Formula then = implies();
        expect(":");
        Formula otherwise = implies();
        expect(")");
        return Formula::ite(first, then, otherwise);
      }
      expect(")");
      return first;
    }
    if (accept("[")) {
      Formula target = conjunction();
      expect("|");
      Formula given = implies();
      expect("]");
      if (pos_ >= s_.size() || s_[pos_] != '_') fail("expected '_' after ']'");
      ++pos_;
      std::size_t at = pos_;
      return Formula::marginal(target, given, role(at));
    }
    std::size_t at = pos_;
    std::string word = ident();
    if (word == "top") return Formula::always();
    if (word == "bot") return Formula::never();
    if (sig_ && !sig_->has_concept(word))
      throw UnknownSymbol("unknown concept '" + word + "' at position " + std::to_string(at));
    return Formula::atom(word);
  }

  std::string_view s_;
  const Signature* sig_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text, const Signature* sig) { return Parser(text, sig).parse(); }

}  // namespace adl
