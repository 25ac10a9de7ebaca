#include "adl/consistency.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "adl/functional.hpp"

namespace adl {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a), b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

void require_simple_acyclic(const KnowledgeBase& kb) {
  for (const auto& t : kb.tbook)
    if (!is_simple(t)) throw KbError("T-axiom is not simple: " + to_string(t));
  if (!check_acyclic(kb.tbook)) throw KbError("T-Book is cyclic through a marginalisation");
}

}  // namespace

ConceptPartition build_partition(const KnowledgeBase& kb) {
  require_simple_acyclic(kb);
  const std::vector<std::string> concepts(kb.signature.concepts.begin(), kb.signature.concepts.end());
  std::map<std::string, int> index;
  for (std::size_t k = 0; k < concepts.size(); ++k) index[concepts[k]] = static_cast<int>(k);
  auto slot = [&](const Formula& f) -> int {
    if (f.op() != Op::Atom) return -1;
    auto it = index.find(f.name());
    return it == index.end() ? -1 : it->second;
  };

  UnionFind uf(concepts.size());
  auto unite_all = [&](std::initializer_list<int> xs) {
    int first = -1;
    for (int x : xs) {
      if (x < 0) continue;
      if (first < 0)
        first = x;
      else
        uf.unite(first, x);
    }
  };
  for (const auto& t : kb.tbook) {
    const Formula& r = t.rhs;
    int c = slot(t.lhs);
    if (r.op() == Op::Ite)
      unite_all({c, slot(r.child(0)), slot(r.child(1)), slot(r.child(2))});
    else if (r.op() == Op::Marginal)
      unite_all({slot(r.target()), slot(r.given())});
    else
      unite_all({c, slot(r)});
  }

  ConceptPartition out;
  std::map<int, int> class_of_root;
  for (std::size_t k = 0; k < concepts.size(); ++k) {
    int root = uf.find(static_cast<int>(k));
    auto [it, fresh] = class_of_root.emplace(root, static_cast<int>(out.classes.size()));
    if (fresh) out.classes.emplace_back();
    out.classes[it->second].insert(concepts[k]);
    out.class_of[concepts[k]] = it->second;
  }
  out.counts.assign(out.classes.size(), 0);
  for (const auto& t : kb.tbook) {
    if (t.rhs.op() != Op::Marginal || slot(t.lhs) < 0) continue;
    int from = out.class_of[t.lhs.name()];
    std::set<int> to;
    for (const Formula* f : {&t.rhs.target(), &t.rhs.given()})
      if (slot(*f) >= 0) to.insert(out.class_of[f->name()]);
    for (int d : to) {
      ++out.role_counts[{from, t.rhs.name(), d}];
      out.edges.insert({from, d});
      ++out.counts[d];
    }
  }
  return out;
}

namespace {

constexpr int kZero = -1, kOne = -2;

// Sparse polynomial keyed by sorted monomials.
struct Poly {
  std::map<std::vector<int>, double> terms;

  static Poly constant(double c) {
    Poly p;
    if (c != 0) p.terms[{}] = c;
    return p;
  }
  static Poly slot(int s) {
    if (s == kZero) return {};
    if (s == kOne) return constant(1);
    Poly p;
    p.terms[{s}] = 1;
    return p;
  }
  Poly& operator+=(const Poly& o) {
    for (const auto& [mono, c] : o.terms) {
      double& v = terms[mono];
      v += c;
      if (v == 0) terms.erase(mono);
    }
    return *this;
  }
  Poly operator-() const {
    Poly p = *this;
    for (auto& [mono, c] : p.terms) c = -c;
    return p;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a += -b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly p;
    for (const auto& [ma, ca] : a.terms)
      for (const auto& [mb, cb] : b.terms) {
        std::vector<int> mono = ma;
        mono.insert(mono.end(), mb.begin(), mb.end());
        std::sort(mono.begin(), mono.end());
        Poly t;
        t.terms[std::move(mono)] = ca * cb;
        p += t;
      }
    return p;
  }
};

ConstraintSystem::Equation to_equation(const Poly& p) {
  ConstraintSystem::Equation eq;
  for (const auto& [mono, c] : p.terms) {
    if (mono.empty())
      eq.constant += c;
    else
      eq.terms.push_back({c, mono});
  }
  return eq;
}

struct Individual {
  std::string tag;    // class label or name
  std::size_t local;  // 1-based index within the tag
  bool named;
  std::size_t generic_index;  // 1-based among generic individuals
};

}  // namespace

double ConstraintSystem::evaluate(const Equation& eq, const std::vector<double>& x) const {
  double v = eq.constant;
  for (const auto& t : eq.terms) {
    double m = t.coef;
    for (int k : t.vars) m *= x[k];
    v += m;
  }
  return v;
}

double ConstraintSystem::max_residual(const std::vector<double>& x) const {
  double worst = 0;
  for (const auto& eq : equations) worst = std::max(worst, std::abs(evaluate(eq, x)));
  return worst;
}

std::string ConstraintSystem::to_text() const {
  std::ostringstream out;
  out.precision(17);
  out << "# " << variables.size() << " variables, " << equations.size() << " equations\n";
  for (const auto& v : variables) {
    out << v.lower << " <= " << v.name;
    if (std::isfinite(v.upper)) out << " <= " << v.upper;
    out << '\n';
  }
  for (const auto& eq : equations) {
    bool first = true;
    for (const auto& t : eq.terms) {
      double c = t.coef;
      if (!first) out << (c < 0 ? " - " : " + ");
      else if (c < 0) out << "-";
      first = false;
      if (std::abs(c) != 1) out << std::abs(c) << "*";
      for (std::size_t k = 0; k < t.vars.size(); ++k) out << (k ? "*" : "") << variables[t.vars[k]].name;
    }
    if (eq.constant != 0 || first) {
      if (first)
        out << eq.constant;
      else
        out << (eq.constant < 0 ? " - " : " + ") << std::abs(eq.constant);
    }
    out << " = 0\n";
  }
  return out.str();
}

ConstraintSystem generate_constraints(const KnowledgeBase& kb) {
  require_simple_acyclic(kb);
  if (auto errs = well_formedness_errors(kb); !errs.empty()) throw KbError(errs.front());
  ConstraintSystem cs;
  cs.kb = kb;
  cs.partition = build_partition(kb);
  const ConceptPartition& part = cs.partition;
  const std::string id(kIdRole);

  // Individuals: generic ones per class, then the rows of each name.
  std::vector<Individual> inds;
  std::vector<std::size_t> generic;
  for (std::size_t k = 0; k < part.classes.size(); ++k)
    for (int j = 1; j <= std::max(1, part.counts[k]); ++j) {
      generic.push_back(inds.size());
      inds.push_back({part.label(static_cast<int>(k)), static_cast<std::size_t>(j), false, generic.size()});
    }
  if (generic.empty()) {
    generic.push_back(0);
    inds.push_back({"K1", 1, false, 1});
  }
  for (const auto& a : kb.signature.names) {
    std::size_t rows = 0;
    for (const auto& ca : kb.concept_assertions) rows += ca.name == a;
    for (const auto& ra : kb.role_assertions) rows += (ra.subject == a) + (ra.object == a && ra.subject != a);
    for (std::size_t j = 1; j <= std::max<std::size_t>(1, rows); ++j) {
      cs.name_rows[a].push_back(inds.size());
      inds.push_back({a, j, true, 0});
    }
  }
  const std::size_t n = inds.size();
  std::vector<std::string> where;  // subscript naming an individual in variable names
  for (const auto& ind : inds) {
    cs.individuals.push_back(ind.tag + "_" + std::to_string(ind.local));
    where.push_back("{" + ind.tag + "," + std::to_string(ind.local) + "}");
  }

  auto add_var = [&](std::string name, double upper = 1) {
    cs.variables.push_back({std::move(name), 0, upper});
    return static_cast<int>(cs.variables.size() - 1);
  };

  for (const auto& c : kb.signature.concepts) {
    auto& slots = cs.concept_slots[c];
    for (const auto& ind : inds)
      slots.push_back(add_var(ind.named ? "n^{" + ind.tag + "," + c + "}_" + std::to_string(ind.local)
                                        : "x^" + (c.size() > 1 ? "{" + c + "}" : c) + "_" +
                                              std::to_string(ind.generic_index)));
  }

  std::set<std::string> marginal_roles{id}, asserted_roles;
  for (const auto& t : kb.tbook)
    if (t.rhs.op() == Op::Marginal) marginal_roles.insert(t.rhs.name());
  for (const auto& ra : kb.role_assertions) asserted_roles.insert(ra.role);

  std::vector<int> block_of(n, -1);
  {
    std::vector<std::size_t> all_generic = generic;
    cs.id_blocks.push_back(all_generic);
    for (auto k : all_generic) block_of[k] = 0;
    for (const auto& [a, rows] : cs.name_rows) {
      for (auto k : rows) block_of[k] = static_cast<int>(cs.id_blocks.size());
      cs.id_blocks.push_back(rows);
    }
  }

  std::set<std::string> roles = marginal_roles;
  roles.insert(asserted_roles.begin(), asserted_roles.end());
  for (const auto& role : roles) {
    auto& mat = cs.role_slots[role];
    mat.assign(n, std::vector<int>(n, kZero));
    for (std::size_t u = 0; u < n; ++u) {
      std::vector<std::size_t> cols;
      if (role == id) {
        cols = cs.id_blocks[block_of[u]];
      } else if (inds[u].named && (marginal_roles.count(role) || asserted_roles.count(role))) {
        cols.resize(n);
        std::iota(cols.begin(), cols.end(), 0);
      } else if (!inds[u].named && marginal_roles.count(role)) {
        cols = generic;
      }
      if (cols.empty()) {
        mat[u][u] = kOne;
        continue;
      }
      for (auto v : cols)
        mat[u][v] = add_var("r^{" + inds[u].tag + "," + role + "," + inds[v].tag + "}_{" +
                            std::to_string(inds[u].local) + "," + std::to_string(inds[v].local) + "}");
    }
  }

  auto value = [&](const Formula& f, std::size_t u) -> Poly {
    switch (f.op()) {
      case Op::Always: return Poly::constant(1);
      case Op::Never: return {};
      case Op::Atom: {
        if (auto it = cs.concept_slots.find(f.name()); it != cs.concept_slots.end()) return Poly::slot(it->second[u]);
        if (auto it = cs.name_rows.find(f.name()); it != cs.name_rows.end())
          return Poly::constant(std::count(it->second.begin(), it->second.end(), u) ? 1 : 0);
        throw UnknownSymbol("unknown concept '" + f.name() + "'");
      }
      default: throw KbError("operand is not an atom: " + to_string(f));
    }
  };
  auto weight = [&](const std::string& role, std::size_t u, std::size_t v) -> Poly {
    auto it = cs.role_slots.find(role);
    if (it == cs.role_slots.end()) return Poly::constant(u == v ? 1 : 0);
    return Poly::slot(it->second[u][v]);
  };
  auto emit = [&](const Poly& p) { cs.equations.push_back(to_equation(p)); };

  for (const auto& t : kb.tbook) {
    const Formula& r = t.rhs;
    for (std::size_t u = 0; u < n; ++u) {
      Poly c = value(t.lhs, u);
      if (t.kind == TAxiom::Kind::NoMoreLikely) {
        int s = add_var("s^{" + to_string(t.lhs) + "}_" + where[u], std::numeric_limits<double>::infinity());
        emit(value(r, u) - c - Poly::slot(s));
      } else if (r.op() == Op::Ite) {
        Poly d = value(r.child(0), u);
        emit(c - d * value(r.child(1), u) - (Poly::constant(1) - d) * value(r.child(2), u));
      } else if (r.op() == Op::Marginal) {
        Poly mass, joint;
        for (std::size_t v = 0; v < n; ++v) {
          Poly w = weight(r.name(), u, v);
          if (w.terms.empty()) continue;
          Poly given = value(r.given(), v);
          mass += w * given;
          joint += w * value(r.target(), v) * given;
        }
        emit(mass * c - joint);
        int e = add_var("e^{" + to_string(t.lhs) + "," + r.name() + "}_" + where[u],
                        std::numeric_limits<double>::infinity());
        emit(mass * Poly::slot(e) + c - Poly::constant(1));
      } else {
        emit(c - value(r, u));
      }
    }
  }

  for (const auto& [role, mat] : cs.role_slots)
    for (std::size_t u = 0; u < n; ++u) {
      if (mat[u][u] == kOne) continue;
      Poly sum = Poly::constant(-1);
      for (std::size_t v = 0; v < n; ++v) sum += Poly::slot(mat[u][v]);
      emit(sum);
    }
  for (const auto& block : cs.id_blocks)
    for (std::size_t k = 1; k < block.size(); ++k)
      for (auto v : block) emit(weight(id, block[k], v) - weight(id, block[0], v));

  for (const auto& ca : kb.concept_assertions) {
    const auto& rows = cs.name_rows.at(ca.name);
    for (auto u : rows) {
      Poly sum = Poly::constant(-to_double(ca.p));
      for (auto v : rows) sum += weight(id, u, v) * value(ca.concept_formula, v);
      emit(sum);
    }
  }
  for (const auto& ra : kb.role_assertions) {
    for (auto u : cs.name_rows.at(ra.subject)) {
      Poly sum = Poly::constant(-to_double(ra.p));
      for (auto v : cs.name_rows.at(ra.object)) sum += weight(ra.role, u, v);
      emit(sum);
    }
  }
  return cs;
}

const char* status_name(Verdict::Status s) {
  switch (s) {
    case Verdict::Status::Consistent: return "CONSISTENT";
    case Verdict::Status::Infeasible: return "INFEASIBLE";
    case Verdict::Status::Unknown: return "UNKNOWN";
  }
  return "?";
}

std::optional<std::string> find_contradiction(const KnowledgeBase& kb) {
  if (auto errs = well_formedness_errors(kb); !errs.empty()) return errs.front();
  std::map<std::pair<std::string, std::string>, Rational> concept_p;
  for (const auto& a : kb.concept_assertions) {
    const Formula& f = a.concept_formula;
    if ((f.op() == Op::Always || (f.op() == Op::Atom && f.name() == a.name)) && a.p != 1)
      return a.name + " satisfies " + to_string(f) + " with probability 1, not " + to_string(a.p);
    if (f.op() == Op::Never && a.p != 0)
      return a.name + " satisfies bot with probability 0, not " + to_string(a.p);
    auto [it, fresh] = concept_p.emplace(std::make_pair(a.name, to_string(f)), a.p);
    if (!fresh && it->second != a.p)
      return a.name + " is given " + to_string(it->second) + " and " + to_string(a.p) + " for " + to_string(f);
  }
  std::map<std::tuple<std::string, std::string, std::string>, Rational> role_p;
  for (const auto& a : kb.role_assertions) {
    if (a.role == kIdRole && a.subject == a.object && a.p != 1)
      return "(" + a.subject + "," + a.object + ") is id-related with probability 1, not " + to_string(a.p);
    auto [it, fresh] = role_p.emplace(std::make_tuple(a.subject, a.object, a.role), a.p);
    if (!fresh && it->second != a.p)
      return "(" + a.subject + "," + a.object + ") is given " + to_string(it->second) + " and " + to_string(a.p) +
             " for " + a.role;
  }
  return std::nullopt;
}

namespace {

struct StartResult {
  bool solved = false;
  double residual = std::numeric_limits<double>::infinity();
  std::vector<double> x;
};

std::vector<double> initial_point(const ConstraintSystem& cs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> x(cs.variables.size());
  for (auto& v : x) v = unit(rng);
  for (const auto& [role, mat] : cs.role_slots)
    for (const auto& row : mat) {
      double sum = 0;
      for (int s : row)
        if (s >= 0) sum += x[s];
      if (sum > 0)
        for (int s : row)
          if (s >= 0) x[s] /= sum;
    }
  if (auto it = cs.role_slots.find(std::string(kIdRole)); it != cs.role_slots.end())
    for (const auto& block : cs.id_blocks)
      for (std::size_t k = 1; k < block.size(); ++k)
        for (auto v : block) x[it->second[block[k]][v]] = x[it->second[block[0]][v]];
  return x;
}

// Projected Levenberg-Marquardt with an active set: coordinates sitting on a
// bound whose gradient pushes outward are frozen for the step.
StartResult run_start(const ConstraintSystem& cs, std::vector<double> x, const SolveOptions& opt) {
  const std::size_t nv = x.size(), ne = cs.equations.size();
  StartResult out;
  auto residuals = [&](const std::vector<double>& at, Eigen::VectorXd& f) {
    f.resize(static_cast<Eigen::Index>(ne));
    for (std::size_t k = 0; k < ne; ++k) f[static_cast<Eigen::Index>(k)] = cs.evaluate(cs.equations[k], at);
  };
  auto project = [&](std::vector<double>& at) {
    for (std::size_t k = 0; k < nv; ++k) at[k] = std::clamp(at[k], cs.variables[k].lower, cs.variables[k].upper);
  };
  project(x);
  Eigen::VectorXd f;
  residuals(x, f);
  double cost = f.squaredNorm();
  double lambda = 1e-3;
  Eigen::MatrixXd jac(static_cast<Eigen::Index>(ne), static_cast<Eigen::Index>(nv));
  for (std::size_t it = 0; it < opt.iterations; ++it) {
    if (f.size() == 0 || f.cwiseAbs().maxCoeff() <= opt.tol) break;
    jac.setZero();
    for (std::size_t k = 0; k < ne; ++k)
      for (const auto& t : cs.equations[k].terms)
        for (std::size_t p = 0; p < t.vars.size(); ++p) {
          double d = t.coef;
          for (std::size_t q = 0; q < t.vars.size(); ++q)
            if (q != p) d *= x[t.vars[q]];
          jac(static_cast<Eigen::Index>(k), t.vars[p]) += d;
        }
    Eigen::VectorXd grad = jac.transpose() * f;
    std::vector<Eigen::Index> free;
    for (std::size_t k = 0; k < nv; ++k) {
      const auto& v = cs.variables[k];
      double g = grad[static_cast<Eigen::Index>(k)];
      if ((x[k] <= v.lower && g > 0) || (x[k] >= v.upper && g < 0)) continue;
      free.push_back(static_cast<Eigen::Index>(k));
    }
    if (free.empty()) break;
    Eigen::MatrixXd jf(jac.rows(), static_cast<Eigen::Index>(free.size()));
    for (std::size_t k = 0; k < free.size(); ++k) jf.col(static_cast<Eigen::Index>(k)) = jac.col(free[k]);
    Eigen::MatrixXd normal = jf.transpose() * jf;
    Eigen::VectorXd rhs = -(jf.transpose() * f);
    Eigen::VectorXd diag = normal.diagonal();
    bool improved = false;
    for (int tries = 0; tries < 12 && !improved; ++tries) {
      Eigen::MatrixXd damped = normal;
      for (Eigen::Index k = 0; k < damped.rows(); ++k) damped(k, k) += lambda * (diag[k] + 1e-6);
      Eigen::VectorXd step = damped.ldlt().solve(rhs);
      std::vector<double> trial = x;
      for (std::size_t k = 0; k < free.size(); ++k) trial[free[k]] += step[static_cast<Eigen::Index>(k)];
      project(trial);
      Eigen::VectorXd ft;
      residuals(trial, ft);
      double ct = ft.squaredNorm();
      if (std::isfinite(ct) && ct < cost) {
        x = std::move(trial);
        f = std::move(ft);
        cost = ct;
        lambda = std::max(lambda / 3, 1e-12);
        improved = true;
      } else {
        lambda *= 4;
      }
    }
    if (!improved) break;
  }
  out.residual = f.size() ? f.cwiseAbs().maxCoeff() : 0.0;
  out.solved = out.residual <= opt.tol;
  out.x = std::move(x);
  return out;
}

constexpr std::size_t kBatch = 8;

Verdict solve_impl(const ConstraintSystem& cs, const SolveOptions& opt, bool parallel) {
  if (opt.starts == 0 || opt.iterations == 0) throw std::invalid_argument("solver budget must be positive");
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  StartResult best;
  for (std::size_t begin = 0; begin < opt.starts; begin += kBatch) {
    const std::size_t end = std::min(opt.starts, begin + kBatch);
    std::vector<StartResult> results(end - begin);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::size_t k = begin; k < end; ++k)
      results[k - begin] = run_start(cs, initial_point(cs, sample_seed(opt.seed, k)), opt);
    v.starts_run = end;
    for (auto& r : results) {
      if (r.residual < best.residual || (r.solved && !best.solved)) best = r;
      if (r.solved) break;
    }
    if (best.solved) break;
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (elapsed > opt.time_limit) {
      v.note = "time limit reached";
      break;
    }
  }
  v.residual = best.residual;
  v.assignment = best.x;
  if (!best.solved) {
    if (v.note.empty()) v.note = "no start reached the tolerance";
    return v;
  }
  v.status = Verdict::Status::Consistent;
  v.witness = extract_model(cs, v.assignment);
  auto report = kb_satisfied_by(*v.witness, cs.kb, 1e-6);
  v.witness_verified = report.satisfied;
  if (!report.satisfied) v.note = "rational witness failed re-verification: " + report.violations.front();
  return v;
}

}  // namespace

Verdict solve(const ConstraintSystem& cs, const SolveOptions& options) { return solve_impl(cs, options, true); }
Verdict solve_serial(const ConstraintSystem& cs, const SolveOptions& options) {
  return solve_impl(cs, options, false);
}

BeliefModel extract_model(const ConstraintSystem& cs, const std::vector<double>& x) {
  constexpr std::int64_t kMaxDen = 1000000;
  auto read = [&](int s) -> Rational {
    if (s == kZero) return 0;
    if (s == kOne) return 1;
    const auto& v = cs.variables[s];
    return rationalize(std::clamp(x[s], v.lower, std::min(v.upper, 1.0)), kMaxDen);
  };
  BeliefModel m(cs.individuals);
  for (const auto& c : cs.kb.signature.concepts) {
    m.declare_concept(c);
    const auto& slots = cs.concept_slots.at(c);
    for (std::size_t u = 0; u < slots.size(); ++u) m.set_likelihood(c, u, read(slots[u]));
  }
  for (const auto& r : cs.kb.signature.roles) m.declare_role(r);
  for (const auto& [role, mat] : cs.role_slots) {
    m.declare_role(role);
    for (std::size_t u = 0; u < mat.size(); ++u) {
      std::vector<Rational> row(mat.size());
      Rational sum = 0;
      for (std::size_t v = 0; v < mat.size(); ++v) sum += row[v] = read(mat[u][v]);
      if (sum == 0) {
        row[u] = 1;
      } else {
        // Rounding slack goes to the heaviest entry; full rescaling only if
        // that would leave [0,1].
        auto heaviest = std::max_element(row.begin(), row.end());
        Rational fixed = *heaviest + (1 - sum);
        if (in_unit_interval(fixed))
          *heaviest = fixed;
        else
          for (auto& w : row) w /= sum;
      }
      m.set_row(role, u, std::move(row));
    }
  }
  const std::string id(kIdRole);
  for (const auto& block : cs.id_blocks)
    for (std::size_t k = 1; k < block.size(); ++k) m.set_row(id, block[k], m.row(id, block[0]));
  for (const auto& [name, rows] : cs.name_rows) m.set_name(name, std::set<std::size_t>(rows.begin(), rows.end()));
  return m;
}

Verdict check_consistency(const KnowledgeBase& kb, const SolveOptions& options) {
  if (auto why = find_contradiction(kb)) {
    Verdict v;
    v.status = Verdict::Status::Infeasible;
    v.note = *why;
    return v;
  }
  Simplified s = simplify(kb);
  ConstraintSystem cs = generate_constraints(s.kb);
  Verdict v = solve(cs, options);
  if (v.status == Verdict::Status::Consistent && v.witness_verified) {
    auto report = kb_satisfied_by(*v.witness, kb, 1e-6);
    if (!report.satisfied) {
      v.witness_verified = false;
      v.note = "rational witness failed the original KB: " + report.violations.front();
    }
  }
  return v;
}

Verdict query_bound(const KnowledgeBase& kb, const std::string& name, const Formula& f, const Rational& p,
                    Bound direction, const SolveOptions& options) {
  if (!kb.signature.names.count(name)) throw UnknownSymbol("unknown name '" + name + "'");
  check_signature(f, kb.signature);
  if (!in_unit_interval(p)) throw std::invalid_argument("probability outside [0,1]");
  KnowledgeBase q = kb;
  if (direction == Bound::Exact) {
    q.concept_assertions.push_back({name, p, f});
  } else {
    std::string fresh = "Q";
    for (int k = 1; q.signature.has_concept(fresh) || q.signature.has_role(fresh); ++k) fresh = "Q_" + std::to_string(k);
    q.signature.concepts.insert(fresh);
    Formula atom = Formula::atom(fresh);
    q.concept_assertions.push_back({name, p, atom});
    if (direction == Bound::AtLeast)
      q.tbook.push_back({TAxiom::Kind::NoMoreLikely, atom, f});
    else
      q.tbook.push_back({TAxiom::Kind::NoMoreLikely, f, atom});
  }
  return check_consistency(q, options);
}

}  // namespace adl
