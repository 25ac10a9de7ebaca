#include "adl/knowledge_base.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_map>

#include "adl/evaluator.hpp"

namespace adl {

std::string to_string(const TAxiom& t) {
  return to_string(t.lhs) + (t.kind == TAxiom::Kind::NoMoreLikely ? " <= " : " == ") + to_string(t.rhs);
}

std::string to_string(const ConceptAssertion& a) {
  return a.name + " : " + to_string(a.p) + " : " + to_string(a.concept_formula);
}

std::string to_string(const RoleAssertion& a) {
  return "(" + a.subject + "," + a.object + ") : " + to_string(a.p) + " : " + a.role;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw KbError("line " + std::to_string(line) + ": " + msg);
}

bool valid_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
  return s != "top" && s != "bot" && s.rfind("E_", 0) != 0 && s.rfind("Ex_", 0) != 0;
}

}  // namespace

KnowledgeBase parse_kb(std::string_view text) {
  KnowledgeBase kb;
  struct Pending {
    std::size_t line;
    std::string key, body;
  };
  std::vector<Pending> axioms;
  std::istringstream in{std::string(text)};
  std::size_t lineno = 0;
  std::set<std::string> declared;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) fail(lineno, "expected 'key: value'");
    std::string key = trim(line.substr(0, colon)), rest = trim(line.substr(colon + 1));
    if (key == "concepts" || key == "roles" || key == "names") {
      for (const auto& w : words(rest)) {
        if (!valid_identifier(w)) fail(lineno, "invalid identifier '" + w + "'");
        if (w == kIdRole && key == "roles") continue;
        if (!declared.insert(w).second) fail(lineno, "'" + w + "' declared twice");
        if (key == "concepts") kb.signature.concepts.insert(w);
        if (key == "roles") kb.signature.roles.insert(w);
        if (key == "names") kb.signature.names.insert(w);
      }
    } else if (key == "tbook" || key == "abook") {
      axioms.push_back({lineno, key, rest});
    } else {
      fail(lineno, "unknown key '" + key + "'");
    }
  }
  const Signature& sig = kb.signature;
  auto formula = [&](const std::string& s, std::size_t line) {
    try {
      return parse_formula(s, sig);
    } catch (const std::exception& e) {
      fail(line, e.what());
    }
  };
  auto probability = [&](const std::string& s, std::size_t line) {
    Rational p;
    try {
      p = parse_rational(s);
    } catch (const std::exception& e) {
      fail(line, e.what());
    }
    if (!in_unit_interval(p)) fail(line, "probability " + s + " outside [0,1]");
    return p;
  };
  for (const auto& ax : axioms) {
    if (ax.key == "tbook") {
      auto le = ax.body.find("<="), eq = ax.body.find("==");
      if ((le == std::string::npos) == (eq == std::string::npos))
        fail(ax.line, "a T-axiom needs exactly one of '<=' or '=='");
      auto at = le != std::string::npos ? le : eq;
      TAxiom t{le != std::string::npos ? TAxiom::Kind::NoMoreLikely : TAxiom::Kind::ExactlyAsLikely,
               formula(ax.body.substr(0, at), ax.line), formula(ax.body.substr(at + 2), ax.line)};
      kb.tbook.push_back(std::move(t));
      continue;
    }
    std::vector<std::string> parts;
    std::istringstream fields(ax.body);
    for (std::string part; std::getline(fields, part, ':');) parts.push_back(trim(part));
    if (parts.size() != 3) fail(ax.line, "an assertion has the form 'subject : p : target'");
    Rational p = probability(parts[1], ax.line);
    const std::string& subject = parts[0];
    if (!subject.empty() && subject.front() == '(') {
      if (subject.back() != ')') fail(ax.line, "expected '(a,b)'");
      auto comma = subject.find(',');
      if (comma == std::string::npos) fail(ax.line, "expected '(a,b)'");
      std::string a = trim(subject.substr(1, comma - 1)), b = trim(subject.substr(comma + 1, subject.size() - comma - 2));
      for (const auto& n : {a, b})
        if (!sig.names.count(n)) fail(ax.line, "unknown name '" + n + "'");
      if (!sig.has_role(parts[2])) fail(ax.line, "unknown role '" + parts[2] + "'");
      kb.role_assertions.push_back({a, b, p, parts[2]});
    } else {
      if (!sig.names.count(subject)) fail(ax.line, "unknown name '" + subject + "'");
      kb.concept_assertions.push_back({subject, p, formula(parts[2], ax.line)});
    }
  }
  if (auto errors = well_formedness_errors(kb); !errors.empty()) throw KbError(errors.front());
  return kb;
}

KnowledgeBase load_kb(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_kb(buf.str());
}

std::string to_kb_text(const KnowledgeBase& kb) {
  std::ostringstream out;
  auto list = [&](const char* key, const std::set<std::string>& items, bool skip_id) {
    std::vector<std::string> shown;
    for (const auto& s : items)
      if (!(skip_id && s == kIdRole)) shown.push_back(s);
    if (shown.empty()) return;
    out << key << ':';
    for (const auto& s : shown) out << ' ' << s;
    out << '\n';
  };
  list("concepts", kb.signature.concepts, false);
  list("roles", kb.signature.roles, true);
  list("names", kb.signature.names, false);
  for (const auto& a : kb.concept_assertions) out << "abook: " << to_string(a) << '\n';
  for (const auto& a : kb.role_assertions) out << "abook: " << to_string(a) << '\n';
  for (const auto& t : kb.tbook) out << "tbook: " << to_string(t) << '\n';
  return out.str();
}

std::vector<std::string> well_formedness_errors(const KnowledgeBase& kb) {
  std::map<std::pair<std::string, std::string>, Rational> sums;
  for (const auto& a : kb.role_assertions) sums[{a.subject, a.role}] += a.p;
  std::vector<std::string> out;
  for (const auto& [key, sum] : sums)
    if (sum > 1)
      out.push_back("role assertions for (" + key.first + ", " + key.second + ") sum to " + to_string(sum) +
                    " > 1");
  return out;
}

bool is_atom(const Formula& f) { return f.op() == Op::Always || f.op() == Op::Never || f.op() == Op::Atom; }

bool is_simple(const TAxiom& t) {
  if (t.kind != TAxiom::Kind::ExactlyAsLikely || !is_atom(t.lhs)) return false;
  const Formula& r = t.rhs;
  if (is_atom(r)) return true;
  if (r.op() == Op::Ite) return is_atom(r.child(0)) && is_atom(r.child(1)) && is_atom(r.child(2));
  if (r.op() == Op::Marginal) return is_atom(r.target()) && is_atom(r.given());
  return false;
}

bool is_simple(const KnowledgeBase& kb) {
  for (const auto& t : kb.tbook)
    if (!is_simple(t)) return false;
  for (const auto& a : kb.concept_assertions)
    if (!is_atom(a.concept_formula)) return false;
  return true;
}

bool check_acyclic(const std::vector<TAxiom>& tbook) {
  struct Edge {
    std::string to;
    bool marginal;
  };
  std::map<std::string, std::vector<Edge>> graph;
  for (const auto& t : tbook) {
    if (!is_simple(t)) throw KbError("check_acyclic needs simple axioms, got: " + to_string(t));
    if (t.lhs.op() != Op::Atom) continue;
    const bool marginal = t.rhs.op() == Op::Marginal;
    for (std::size_t k = 0; k < (is_atom(t.rhs) ? 1 : t.rhs.arity()); ++k) {
      const Formula& operand = is_atom(t.rhs) ? t.rhs : t.rhs.child(k);
      if (operand.op() == Op::Atom) graph[t.lhs.name()].push_back({operand.name(), marginal});
    }
  }
  auto reaches = [&](const std::string& from, const std::string& to) {
    std::set<std::string> seen{from};
    std::vector<std::string> stack{from};
    while (!stack.empty()) {
      std::string u = stack.back();
      stack.pop_back();
      if (u == to) return true;
      if (auto it = graph.find(u); it != graph.end())
        for (const auto& e : it->second)
          if (seen.insert(e.to).second) stack.push_back(e.to);
    }
    return false;
  };
  for (const auto& [u, edges] : graph)
    for (const auto& e : edges)
      if (e.marginal && reaches(e.to, u)) return false;
  return true;
}

Simplified simplify(const KnowledgeBase& kb) {
  Simplified out;
  out.kb.signature = kb.signature;
  out.kb.role_assertions = kb.role_assertions;
  Signature& sig = out.kb.signature;
  std::size_t counter = 0;
  auto fresh = [&](const std::string& stem) {
    std::string name;
    do {
      name = stem + std::to_string(++counter);
    } while (sig.has_concept(name) || sig.has_role(name));
    sig.concepts.insert(name);
    return name;
  };
  std::unordered_map<Formula, Formula, FormulaHash> named;
  std::function<Formula(const Formula&)> name_of = [&](const Formula& f) -> Formula {
    if (is_atom(f)) return f;
    if (auto it = named.find(f); it != named.end()) return it->second;
    Formula rhs = f.op() == Op::Ite ? Formula::ite(name_of(f.child(0)), name_of(f.child(1)), name_of(f.child(2)))
                                    : Formula::marginal(name_of(f.target()), name_of(f.given()), f.name());
    std::string c = fresh("C_");
    Formula atom = Formula::atom(c);
    out.kb.tbook.push_back({TAxiom::Kind::ExactlyAsLikely, atom, rhs});
    out.defined.emplace(c, f);
    named.emplace(f, atom);
    return atom;
  };
  for (const auto& t : kb.tbook) {
    if (is_simple(t)) {
      out.kb.tbook.push_back(t);
      continue;
    }
    Formula lhs = name_of(desugar(t.lhs)), rhs = name_of(desugar(t.rhs));
    if (t.kind == TAxiom::Kind::ExactlyAsLikely) {
      out.kb.tbook.push_back({TAxiom::Kind::ExactlyAsLikely, lhs, rhs});
    } else {
      std::string e = fresh("Etau_");
      out.kb.tbook.push_back(
          {TAxiom::Kind::ExactlyAsLikely, lhs, Formula::ite(rhs, Formula::atom(e), Formula::never())});
      out.ratios.emplace(e, std::make_pair(t.lhs, t.rhs));
    }
  }
  for (const auto& a : kb.concept_assertions)
    out.kb.concept_assertions.push_back({a.name, a.p, name_of(desugar(a.concept_formula))});
  return out;
}

BeliefModel extend_model(const BeliefModel& m, const Simplified& s) {
  BeliefModel out = m;
  for (const auto& [c, f] : s.defined) {
    auto values = evaluate_all_serial(m, f);
    for (std::size_t i = 0; i < m.size(); ++i) out.set_likelihood(c, i, values[i]);
  }
  for (const auto& [e, sides] : s.ratios) {
    auto lhs = evaluate_all_serial(m, sides.first), rhs = evaluate_all_serial(m, sides.second);
    for (std::size_t i = 0; i < m.size(); ++i)
      out.set_likelihood(e, i, rhs[i] == 0 ? Rational(0) : Rational(lhs[i] / rhs[i]));
  }
  return out;
}

SatisfactionReport kb_satisfied_by(const BeliefModel& m, const KnowledgeBase& kb, double tol) {
  const Signature msig = m.signature();
  for (const auto& n : kb.signature.names)
    if (!m.names().count(n)) throw UnknownSymbol("model has no name '" + n + "'");
  for (const auto& c : kb.signature.concepts)
    if (!msig.has_concept(c)) throw UnknownSymbol("model has no concept '" + c + "'");
  for (const auto& r : kb.signature.roles)
    if (!msig.has_role(r)) throw UnknownSymbol("model has no role '" + r + "'");

  SatisfactionReport report;
  const auto& ind = m.individuals();
  auto violation = [&](std::string msg) {
    report.satisfied = false;
    report.violations.push_back(std::move(msg));
  };
  auto equal = [&](const Rational& a, const Rational& b) {
    return tol > 0 ? std::fabs(to_double(a) - to_double(b)) <= tol : a == b;
  };
  auto at_most = [&](const Rational& a, const Rational& b) { return tol > 0 ? to_double(a) <= to_double(b) + tol : a <= b; };

  const auto& id = m.roles().at(std::string(kIdRole));
  for (const auto& n : kb.signature.names) {
    const auto& members = m.names().at(n);
    bool done = false;
    for (std::size_t i = 0; i < m.size() && !done; ++i)
      for (std::size_t j = 0; j < m.size() && !done; ++j)
        if (members.count(i) && id[i][j] > 0 && !members.count(j)) {
          violation("name " + n + " holds at " + ind[i] + " but not at its id-successor " + ind[j]);
          done = true;
        }
  }
  for (const auto& t : kb.tbook) {
    auto lhs = evaluate_all_serial(m, t.lhs), rhs = evaluate_all_serial(m, t.rhs);
    for (std::size_t i = 0; i < m.size(); ++i) {
      bool ok = t.kind == TAxiom::Kind::NoMoreLikely ? at_most(lhs[i], rhs[i]) : equal(lhs[i], rhs[i]);
      if (!ok) {
        violation("T-axiom " + to_string(t) + " fails at " + ind[i] + ": " + to_decimal(lhs[i]) + " vs " +
                  to_decimal(rhs[i]));
        break;
      }
    }
  }
  for (const auto& a : kb.concept_assertions) {
    Formula expected = Formula::marginal(desugar(a.concept_formula), Formula::always(), std::string(kIdRole));
    auto values = evaluate_all_serial(m, expected);
    for (auto i : m.names().at(a.name))
      if (!equal(values[i], a.p)) {
        violation("assertion " + to_string(a) + " fails at " + ind[i] + ": E_id gives " + format_probability(values[i]));
        break;
      }
  }
  for (const auto& a : kb.role_assertions) {
    const auto& objects = m.names().at(a.object);
    for (auto i : m.names().at(a.subject)) {
      Rational mass = 0;
      for (auto j : objects) mass += m.weight(a.role, i, j);
      if (!equal(mass, a.p)) {
        violation("assertion " + to_string(a) + " fails at " + ind[i] + ": mass " + format_probability(mass));
        break;
      }
    }
  }
  return report;
}

}  // namespace adl
