#include "adl/functional.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <random>

#include "adl/evaluator.hpp"

namespace adl {

Concept to_pnf(const Concept& c) {
  using K = Concept::Kind;
  switch (c.kind()) {
    case K::Top:
    case K::Bottom:
    case K::Atom:
      return c;
    case K::And: return Concept::conj(to_pnf(c.left()), to_pnf(c.right()));
    case K::Or: return Concept::disj(to_pnf(c.left()), to_pnf(c.right()));
    case K::Exists: return Concept::exists(c.name(), to_pnf(c.body()));
    case K::Not: break;
  }
  const Concept& b = c.body();
  switch (b.kind()) {
    case K::Top: return Concept::bottom();
    case K::Bottom: return Concept::top();
    case K::Atom: return c;
    case K::Not: return to_pnf(b.body());
    case K::And: return Concept::disj(to_pnf(Concept::neg(b.left())), to_pnf(Concept::neg(b.right())));
    case K::Or: return Concept::conj(to_pnf(Concept::neg(b.left())), to_pnf(Concept::neg(b.right())));
    case K::Exists: return Concept::exists(b.name(), to_pnf(Concept::neg(b.body())));
  }
  return c;
}

std::string prop_atom(const std::string& atom, const std::vector<std::string>& word) {
  std::string out = atom + "@";
  for (std::size_t k = 0; k < word.size(); ++k) out += (k ? "." : "") + word[k];
  return out;
}

namespace {

Concept prop_under(const Concept& c, std::vector<std::string>& word) {
  using K = Concept::Kind;
  switch (c.kind()) {
    case K::Top:
    case K::Bottom:
      return c;
    case K::Atom: return Concept::atom(prop_atom(c.name(), word));
    case K::And: return Concept::conj(prop_under(c.left(), word), prop_under(c.right(), word));
    case K::Or: return Concept::disj(prop_under(c.left(), word), prop_under(c.right(), word));
    case K::Not: return Concept::neg(prop_under(c.body(), word));
    case K::Exists: {
      word.push_back(c.name());
      Concept out = prop_under(c.body(), word);
      word.pop_back();
      return out;
    }
  }
  return c;
}

}  // namespace

Concept prop_translate(const Concept& c) {
  std::vector<std::string> word;
  return prop_under(c, word);
}

std::set<std::string> prop_valuation(const Interpretation& itp, std::size_t i, unsigned depth,
                                     const std::set<std::string>& atoms, const std::set<std::string>& roles) {
  std::set<std::string> out;
  std::vector<std::string> word;
  std::function<void(std::size_t, unsigned)> walk = [&](std::size_t x, unsigned left) {
    for (const auto& a : atoms)
      if (itp.holds(a, x)) out.insert(prop_atom(a, word));
    if (left == 0) return;
    for (const auto& r : roles) {
      const auto& next = itp.next(r, x);
      if (next.size() != 1) throw std::invalid_argument("interpretation is not functional for role '" + r + "'");
      word.push_back(r);
      walk(next[0], left - 1);
      word.pop_back();
    }
  };
  walk(i, depth);
  return out;
}

bool prop_eval(const Concept& prop, const std::set<std::string>& valuation) {
  using K = Concept::Kind;
  switch (prop.kind()) {
    case K::Top: return true;
    case K::Bottom: return false;
    case K::Atom: return valuation.count(prop.name()) > 0;
    case K::And: return prop_eval(prop.left(), valuation) && prop_eval(prop.right(), valuation);
    case K::Or: return prop_eval(prop.left(), valuation) || prop_eval(prop.right(), valuation);
    case K::Not: return !prop_eval(prop.body(), valuation);
    case K::Exists: throw std::invalid_argument("prop_eval on a modal concept");
  }
  return false;
}

std::vector<int> Automaton::exists_moves(int state, const std::set<std::string>& y) const {
  std::vector<int> out;
  for (const auto& o : options.at(state)) {
    bool ok = std::all_of(o.pos.begin(), o.pos.end(), [&](const std::string& a) { return y.count(a) > 0; }) &&
              std::none_of(o.neg.begin(), o.neg.end(), [&](const std::string& a) { return y.count(a) > 0; });
    if (ok) out.push_back(o.universal);
  }
  return out;
}

std::optional<int> Automaton::forall_move(int universal_state, const std::string& role) const {
  const auto& moves = universal.at(universal_state);
  if (auto it = moves.find(role); it != moves.end()) return it->second;
  return std::nullopt;
}

bool Automaton::acyclic() const {
  // 0 = unseen, 1 = on stack, 2 = done
  std::vector<int> mark(existential.size(), 0);
  std::function<bool(int)> dfs = [&](int s) {
    mark[s] = 1;
    for (const auto& o : options[s])
      for (const auto& [r, next] : universal[o.universal]) {
        if (mark[next] == 1) return false;
        if (mark[next] == 0 && !dfs(next)) return false;
      }
    mark[s] = 2;
    return true;
  };
  for (std::size_t s = 0; s < existential.size(); ++s)
    if (mark[s] == 0 && !dfs(static_cast<int>(s))) return false;
  return true;
}

unsigned Automaton::depth() const {
  std::vector<std::optional<unsigned>> memo(existential.size());
  std::function<unsigned(int)> d = [&](int s) -> unsigned {
    if (memo[s]) return *memo[s];
    unsigned best = 0;
    for (const auto& o : options[s])
      for (const auto& [r, next] : universal[o.universal]) best = std::max(best, 1 + d(next));
    memo[s] = best;
    return best;
  };
  return existential.empty() ? 0 : d(initial);
}

namespace {

struct Expansion {
  std::set<std::string> pos, neg;
  std::map<std::string, std::map<std::string, Concept>> roles;  // role -> obligations keyed by text

  bool operator<(const Expansion& o) const {
    auto key = [](const Expansion& e) {
      std::map<std::string, std::set<std::string>> r;
      for (const auto& [role, obs] : e.roles)
        for (const auto& [k, c] : obs) r[role].insert(k);
      return std::make_tuple(e.pos, e.neg, r);
    };
    return key(*this) < key(o);
  }
};

void expand(std::vector<Concept> pending, Expansion acc, std::set<Expansion>& out) {
  using K = Concept::Kind;
  while (!pending.empty()) {
    Concept c = pending.back();
    pending.pop_back();
    switch (c.kind()) {
      case K::Top: break;
      case K::Bottom: return;
      case K::Atom:
        if (acc.neg.count(c.name())) return;
        acc.pos.insert(c.name());
        break;
      case K::Not:
        if (c.body().kind() != K::Atom) throw std::invalid_argument("compile_automaton needs positive normal form");
        if (acc.pos.count(c.body().name())) return;
        acc.neg.insert(c.body().name());
        break;
      case K::And:
        pending.push_back(c.right());
        pending.push_back(c.left());
        break;
      case K::Or: {
        auto left = pending;
        left.push_back(c.left());
        expand(std::move(left), acc, out);
        pending.push_back(c.right());
        break;
      }
      case K::Exists:
        acc.roles[c.name()].emplace(to_string(c.body()), c.body());
        break;
    }
  }
  out.insert(std::move(acc));
}

}  // namespace

Automaton compile_automaton(const Concept& pnf) {
  if (!is_pnf(pnf)) throw std::invalid_argument("compile_automaton needs positive normal form");
  Automaton aut;
  aut.atoms = atoms_of(pnf);
  aut.roles = roles_of(pnf);
  std::map<std::set<std::string>, int> exist_index;
  std::map<std::map<std::string, int>, int> univ_index;
  std::vector<std::map<std::string, Concept>> pending_states;

  std::function<int(const std::map<std::string, Concept>&)> existential = [&](const std::map<std::string, Concept>& obs) {
    std::set<std::string> key;
    for (const auto& [k, c] : obs) key.insert(k);
    if (auto it = exist_index.find(key); it != exist_index.end()) return it->second;
    int id = static_cast<int>(aut.existential.size());
    exist_index.emplace(key, id);
    std::vector<Concept> list;
    for (const auto& [k, c] : obs) list.push_back(c);
    aut.existential.push_back(list);
    aut.options.emplace_back();
    std::set<Expansion> expansions;
    expand(std::vector<Concept>(list.rbegin(), list.rend()), {}, expansions);
    std::vector<Automaton::Option> opts;
    for (const auto& e : expansions) {
      std::map<std::string, int> moves;
      for (const auto& [role, obligations] : e.roles) moves[role] = existential(obligations);
      auto [it, fresh] = univ_index.emplace(moves, static_cast<int>(aut.universal.size()));
      if (fresh) aut.universal.push_back(moves);
      opts.push_back({e.pos, e.neg, it->second});
    }
    aut.options[id] = std::move(opts);
    return id;
  };
  aut.initial = existential({{to_string(pnf), pnf}});
  return aut;
}

bool automaton_accepts(const Automaton& aut, const Interpretation& itp, std::size_t i) {
  std::map<std::pair<int, std::size_t>, bool> memo;
  std::function<bool(int, std::size_t)> wins = [&](int s, std::size_t x) -> bool {
    if (auto it = memo.find({s, x}); it != memo.end()) return it->second;
    std::set<std::string> label;
    for (const auto& a : aut.atoms)
      if (itp.holds(a, x)) label.insert(a);
    bool result = false;
    for (int t : aut.exists_moves(s, label)) {
      bool all = true;
      for (const auto& [role, next] : aut.universal[t]) {
        const auto& succ = itp.next(role, x);
        if (succ.size() != 1) throw std::invalid_argument("interpretation is not functional for role '" + role + "'");
        if (!wins(next, succ[0])) {
          all = false;
          break;
        }
      }
      if (all) {
        result = true;
        break;
      }
    }
    memo.emplace(std::make_pair(s, x), result);
    return result;
  };
  return wins(aut.initial, i);
}

std::string to_string(const AcceptedTree& t) {
  if (t.facts.empty()) return "{}";
  std::string out;
  for (const auto& [path, facts] : t.facts) {
    if (!out.empty()) out += "; ";
    std::string w;
    for (std::size_t k = 0; k < path.size(); ++k) w += (k ? "." : "") + path[k];
    out += (w.empty() ? std::string("root") : w) + ":{";
    bool first = true;
    for (const auto& [a, v] : facts) {
      out += (first ? "" : ",") + std::string(v ? "" : "!") + a;
      first = false;
    }
    out += "}";
  }
  return out;
}

std::size_t tree_cap() {
  if (const char* env = std::getenv("ADL_TREE_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 100000;
}

namespace {

using Path = std::vector<std::string>;
using Facts = std::map<Path, std::map<std::string, bool>>;

enum class Tri { False, Unknown, True };

Tri tri_and(Tri a, Tri b) {
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
  return Tri::True;
}

Tri tri_or(Tri a, Tri b) {
  if (a == Tri::True || b == Tri::True) return Tri::True;
  if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
  return Tri::False;
}

struct Die {
  Path path;
  std::string atom;
};

// Decision tree over dice. Leaves have die < 0.
struct DecisionTree {
  struct Node {
    int die = -1;
    bool accept = false;
    int yes = -1, no = -1;
  };
  std::vector<Die> dice;
  std::vector<Node> nodes;
};

class TreeBuilder {
 public:
  TreeBuilder(const Automaton& aut, std::size_t cap) : aut_(aut), cap_(cap) { collect(); }

  DecisionTree build() {
    Facts facts;
    grow(facts, 0);
    return std::move(tree_);
  }

 private:
  void collect() {
    std::set<std::pair<int, Path>> seen;
    std::set<std::pair<Path, std::string>> found;
    std::function<void(int, Path&)> visit = [&](int s, Path& path) {
      if (!seen.insert({s, path}).second) return;
      for (const auto& o : aut_.options[s]) {
        for (const auto& a : o.pos) found.insert({path, a});
        for (const auto& a : o.neg) found.insert({path, a});
        for (const auto& [role, next] : aut_.universal[o.universal]) {
          path.push_back(role);
          visit(next, path);
          path.pop_back();
        }
      }
    };
    Path root;
    visit(aut_.initial, root);
    for (const auto& [p, a] : found) tree_.dice.push_back({p, a});
    std::stable_sort(tree_.dice.begin(), tree_.dice.end(), [](const Die& x, const Die& y) {
      if (x.path.size() != y.path.size()) return x.path.size() < y.path.size();
      if (x.path != y.path) return x.path < y.path;
      return x.atom < y.atom;
    });
  }

  Tri value(int s, Path& path, const Facts& facts) const {
    auto at = facts.find(path);
    Tri result = Tri::False;
    for (const auto& o : aut_.options[s]) {
      Tri v = Tri::True;
      auto literal = [&](const std::string& a, bool want) {
        if (at == facts.end()) return Tri::Unknown;
        auto f = at->second.find(a);
        if (f == at->second.end()) return Tri::Unknown;
        return f->second == want ? Tri::True : Tri::False;
      };
      for (const auto& a : o.pos) v = tri_and(v, literal(a, true));
      for (const auto& a : o.neg) v = tri_and(v, literal(a, false));
      for (const auto& [role, next] : aut_.universal[o.universal]) {
        if (v == Tri::False) break;
        path.push_back(role);
        v = tri_and(v, value(next, path, facts));
        path.pop_back();
      }
      result = tri_or(result, v);
      if (result == Tri::True) break;
    }
    return result;
  }

  int grow(Facts& facts, std::size_t next_die) {
    if (tree_.nodes.size() >= 4 * cap_ + 16) throw TreeCapExceeded("decision tree exceeds the tree cap");
    int id = static_cast<int>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    Path root;
    Tri v = value(aut_.initial, root, facts);
    if (v != Tri::Unknown) {
      tree_.nodes[id].accept = v == Tri::True;
      if (v == Tri::True && ++accepted_ > cap_)
        throw TreeCapExceeded("more than " + std::to_string(cap_) + " accepted trees");
      return id;
    }
    if (next_die >= tree_.dice.size()) throw std::logic_error("acceptance undecided after revealing every die");
    const Die& d = tree_.dice[next_die];
    tree_.nodes[id].die = static_cast<int>(next_die);
    auto& slot = facts[d.path];
    slot[d.atom] = true;
    int yes = grow(facts, next_die + 1);
    facts[d.path][d.atom] = false;
    int no = grow(facts, next_die + 1);
    facts[d.path].erase(d.atom);
    if (facts[d.path].empty()) facts.erase(d.path);
    tree_.nodes[id].yes = yes;
    tree_.nodes[id].no = no;
    return id;
  }

  const Automaton& aut_;
  std::size_t cap_;
  std::size_t accepted_ = 0;
  DecisionTree tree_;
};

DecisionTree decision_tree(const Automaton& aut) { return TreeBuilder(aut, tree_cap()).build(); }

Facts restrict(const Facts& facts, const std::string& role) {
  Facts out;
  for (const auto& [path, f] : facts)
    if (!path.empty() && path[0] == role) out.emplace(Path(path.begin() + 1, path.end()), f);
  return out;
}

std::set<std::string> child_roles(const Facts& facts) {
  std::set<std::string> out;
  for (const auto& [path, f] : facts)
    if (!path.empty()) out.insert(path[0]);
  return out;
}

Rational facts_probability(const BeliefModel& m, std::size_t i, const Facts& facts) {
  Rational p = 1;
  if (auto it = facts.find(Path{}); it != facts.end())
    for (const auto& [a, v] : it->second) {
      const Rational& l = m.likelihood(i, a);
      p *= v ? l : Rational(1 - l);
      if (p == 0) return p;
    }
  for (const auto& role : child_roles(facts)) {
    Facts sub = restrict(facts, role);
    const auto& row = m.row(role, i);
    Rational sum = 0;
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0) sum += row[j] * facts_probability(m, j, sub);
    p *= sum;
    if (p == 0) return p;
  }
  return p;
}

// B_j of the result is the probability at j of every fact in `facts`.
Formula conjunction_formula(const Facts& facts) {
  std::vector<Formula> factors;
  if (auto it = facts.find(Path{}); it != facts.end())
    for (const auto& [a, v] : it->second)
      factors.push_back(v ? Formula::atom(a) : Formula::ite(Formula::atom(a), Formula::never(), Formula::always()));
  for (const auto& role : child_roles(facts))
    factors.push_back(Formula::marginal(conjunction_formula(restrict(facts, role)), Formula::always(), role));
  Formula out = Formula::always();
  for (auto it = factors.rbegin(); it != factors.rend(); ++it)
    out = out.op() == Op::Always ? *it : Formula::ite(*it, out, Formula::never());
  return out;
}

// B_i of the result is the probability that `atom` holds at `path` given
// `facts`, both read from the sampling rooted at i.
Formula conditional_formula(const Path& path, const std::string& atom, const Facts& facts) {
  if (path.empty()) return Formula::atom(atom);
  Facts sub = restrict(facts, path[0]);
  Path rest(path.begin() + 1, path.end());
  return Formula::marginal(conditional_formula(rest, atom, sub), conjunction_formula(sub), path[0]);
}

}  // namespace

std::vector<AcceptedTree> recognized_trees(const Automaton& aut) {
  DecisionTree tree = decision_tree(aut);
  std::vector<AcceptedTree> out;
  Facts facts;
  std::function<void(int)> walk = [&](int n) {
    const auto& node = tree.nodes[n];
    if (node.die < 0) {
      if (node.accept) out.push_back({facts});
      return;
    }
    const Die& d = tree.dice[node.die];
    facts[d.path][d.atom] = true;
    walk(node.yes);
    facts[d.path][d.atom] = false;
    walk(node.no);
    facts[d.path].erase(d.atom);
    if (facts[d.path].empty()) facts.erase(d.path);
  };
  walk(0);
  return out;
}

Rational tree_probability(const BeliefModel& m, std::size_t point, const AcceptedTree& t) {
  return facts_probability(m, point, t.facts);
}

MeasureResult measure(const BeliefModel& m, std::size_t point, const Concept& c) {
  if (point >= m.size()) throw std::out_of_range("individual index out of range");
  for (const auto& a : atoms_of(c))
    if (!m.has_concept(a)) throw UnknownSymbol("unknown concept '" + a + "'");
  for (const auto& r : roles_of(c))
    if (!m.has_role(r)) throw UnknownSymbol("unknown role '" + r + "'");
  MeasureResult out;
  out.value = 0;
  for (auto& t : recognized_trees(compile_automaton(to_pnf(c)))) {
    Rational w = tree_probability(m, point, t);
    out.value += w;
    out.trees.emplace_back(std::move(t), std::move(w));
  }
  return out;
}

Formula adl_translate(const Concept& c) {
  DecisionTree tree = decision_tree(compile_automaton(to_pnf(c)));
  Facts facts;
  std::function<Formula(int)> build = [&](int n) -> Formula {
    const auto& node = tree.nodes[n];
    if (node.die < 0) return node.accept ? Formula::always() : Formula::never();
    const Die& d = tree.dice[node.die];
    Formula test = conditional_formula(d.path, d.atom, facts);
    facts[d.path][d.atom] = true;
    Formula yes = build(node.yes);
    facts[d.path][d.atom] = false;
    Formula no = build(node.no);
    facts[d.path].erase(d.atom);
    if (facts[d.path].empty()) facts.erase(d.path);
    return Formula::ite(test, yes, no);
  };
  return build(0);
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

// Double-precision copies of the model so sampling threads never touch GMP.
struct SamplerTables {
  std::vector<std::string> concepts;
  std::vector<std::vector<double>> likelihood;  // [concept][individual]
  std::vector<std::string> roles;
  std::vector<std::vector<std::vector<double>>> cumulative;  // [role][i][j]

  SamplerTables(const BeliefModel& m, const std::set<std::string>& wanted_concepts,
                const std::set<std::string>& wanted_roles) {
    for (const auto& c : wanted_concepts) {
      concepts.push_back(c);
      std::vector<double> l(m.size());
      for (std::size_t i = 0; i < m.size(); ++i) l[i] = to_double(m.likelihood(i, c));
      likelihood.push_back(std::move(l));
    }
    for (const auto& r : wanted_roles) {
      if (!m.has_role(r)) throw UnknownSymbol("unknown role '" + r + "'");
      roles.push_back(r);
      std::vector<std::vector<double>> cum(m.size(), std::vector<double>(m.size()));
      for (std::size_t i = 0; i < m.size(); ++i) {
        Rational acc = 0;
        for (std::size_t j = 0; j < m.size(); ++j) {
          acc += m.weight(r, i, j);
          cum[i][j] = m.weight(r, i, j) == 0 ? -1.0 : to_double(acc);
        }
      }
      cumulative.push_back(std::move(cum));
    }
  }
};

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Interpretation draw(const SamplerTables& tab, std::size_t point, unsigned depth, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Interpretation itp;
  std::vector<std::size_t> individual{point};
  std::vector<unsigned> level{0};
  std::vector<std::vector<std::size_t>> succ_of_role(tab.roles.size());
  for (std::size_t node = 0; node < individual.size(); ++node) {
    std::size_t x = individual[node];
    for (std::size_t r = 0; r < tab.roles.size(); ++r) {
      if (level[node] >= depth) {
        succ_of_role[r].push_back(node);
        continue;
      }
      double u = unit(rng);
      const auto& cum = tab.cumulative[r][x];
      std::size_t y = cum.size() - 1;
      for (std::size_t j = 0; j < cum.size(); ++j)
        if (cum[j] >= 0 && u < cum[j]) {
          y = j;
          break;
        }
      while (cum[y] < 0 && y > 0) --y;
      succ_of_role[r].push_back(individual.size());
      individual.push_back(y);
      level.push_back(level[node] + 1);
    }
  }
  itp.size = individual.size();
  for (std::size_t k = 0; k < tab.concepts.size(); ++k) {
    std::vector<bool> ext(itp.size);
    for (std::size_t node = 0; node < itp.size; ++node) ext[node] = unit(rng) < tab.likelihood[k][individual[node]];
    itp.extension[tab.concepts[k]] = std::move(ext);
  }
  for (std::size_t r = 0; r < tab.roles.size(); ++r) {
    auto& succ = itp.successors[tab.roles[r]];
    for (std::size_t node = 0; node < itp.size; ++node) succ.push_back({succ_of_role[r][node]});
  }
  return itp;
}

MonteCarloEstimate wilson(std::size_t hits, std::size_t n) {
  const double z = 2.5758293035489004;
  MonteCarloEstimate e;
  e.samples = n;
  e.hits = hits;
  double p = static_cast<double>(hits) / static_cast<double>(n), nn = static_cast<double>(n);
  e.estimate = p;
  double denom = 1 + z * z / nn;
  double center = (p + z * z / (2 * nn)) / denom;
  double half = z * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn)) / denom;
  e.low = std::max(0.0, center - half);
  e.high = std::min(1.0, center + half);
  return e;
}

MonteCarloEstimate run_monte_carlo(const BeliefModel& m, std::size_t point, const Concept& c, std::size_t n,
                                   std::uint64_t seed, bool parallel) {
  if (n == 0) throw std::invalid_argument("monte_carlo_measure needs n >= 1");
  if (point >= m.size()) throw std::out_of_range("individual index out of range");
  // A concept decided before any die is rolled has no sampling error.
  DecisionTree tree = decision_tree(compile_automaton(to_pnf(c)));
  if (tree.nodes[0].die < 0) {
    MonteCarloEstimate e;
    e.samples = n;
    e.hits = tree.nodes[0].accept ? n : 0;
    e.estimate = e.low = e.high = tree.nodes[0].accept ? 1.0 : 0.0;
    return e;
  }
  for (const auto& a : atoms_of(c))
    if (!m.has_concept(a)) throw UnknownSymbol("unknown concept '" + a + "'");
  SamplerTables tab(m, atoms_of(c), roles_of(c));
  const unsigned depth = modal_depth(c);
  const long count = static_cast<long>(n);
  long hits = 0;
#pragma omp parallel for reduction(+ : hits) schedule(static) if (parallel)
  for (long k = 0; k < count; ++k) {
    Interpretation itp = draw(tab, point, depth, sample_seed(seed, static_cast<std::uint64_t>(k)));
    if (alc_eval(itp, 0, c)) ++hits;
  }
  return wilson(static_cast<std::size_t>(hits), n);
}

}  // namespace

Interpretation sample_interpretation(const BeliefModel& m, std::size_t point, unsigned depth, std::uint64_t seed,
                                     const std::set<std::string>& roles) {
  if (point >= m.size()) throw std::out_of_range("individual index out of range");
  std::set<std::string> concepts;
  for (const auto& [c, v] : m.concepts()) concepts.insert(c);
  for (const auto& [n, s] : m.names()) concepts.insert(n);
  return draw(SamplerTables(m, concepts, roles), point, depth, seed);
}

MonteCarloEstimate monte_carlo_measure(const BeliefModel& m, std::size_t point, const Concept& c, std::size_t n,
                                       std::uint64_t seed) {
  return run_monte_carlo(m, point, c, n, seed, true);
}

MonteCarloEstimate monte_carlo_measure_serial(const BeliefModel& m, std::size_t point, const Concept& c,
                                              std::size_t n, std::uint64_t seed) {
  return run_monte_carlo(m, point, c, n, seed, false);
}

}  // namespace adl
