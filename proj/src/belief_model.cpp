#include "adl/belief_model.hpp"

#include <fstream>
#include <sstream>

namespace adl {

namespace {

RoleMatrix identity(std::size_t n) {
  RoleMatrix m(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

const Rational kZero(0), kOne(1);

}  // namespace

BeliefModel::BeliefModel(std::vector<std::string> individuals) : individuals_(std::move(individuals)) {
  std::set<std::string> seen;
  for (const auto& ind : individuals_)
    if (!seen.insert(ind).second) throw std::invalid_argument("duplicate individual '" + ind + "'");
  roles_[std::string(kIdRole)] = identity(size());
}

std::optional<std::size_t> BeliefModel::find(const std::string& individual) const {
  for (std::size_t i = 0; i < individuals_.size(); ++i)
    if (individuals_[i] == individual) return i;
  return std::nullopt;
}

std::size_t BeliefModel::index_of(const std::string& individual) const {
  if (auto i = find(individual)) return *i;
  throw std::out_of_range("unknown individual '" + individual + "'");
}

std::size_t BeliefModel::add_individual(std::string label) {
  if (find(label)) throw std::invalid_argument("duplicate individual '" + label + "'");
  std::size_t k = size();
  individuals_.push_back(std::move(label));
  for (auto& [name, values] : concepts_) values.emplace_back(0);
  for (auto& [name, values] : name_values_) values.emplace_back(0);
  for (auto& [name, mat] : roles_) {
    for (auto& r : mat) r.emplace_back(0);
    mat.emplace_back(k + 1, Rational(0));
    mat[k][k] = 1;
  }
  return k;
}

void BeliefModel::declare_concept(const std::string& cname) {
  if (names_.count(cname)) throw std::invalid_argument("'" + cname + "' is already a name");
  concepts_.try_emplace(cname, size(), Rational(0));
}

bool BeliefModel::has_concept(const std::string& cname) const {
  return concepts_.count(cname) || names_.count(cname);
}

void BeliefModel::set_likelihood(const std::string& cname, std::size_t i, Rational p) {
  declare_concept(cname);
  concepts_.at(cname).at(i) = std::move(p);
}

const Rational& BeliefModel::likelihood(std::size_t i, const std::string& cname) const {
  if (auto it = concepts_.find(cname); it != concepts_.end()) return it->second.at(i);
  if (auto it = name_values_.find(cname); it != name_values_.end()) return it->second.at(i);
  throw UnknownSymbol("unknown concept '" + cname + "'");
}

void BeliefModel::declare_role(const std::string& role) {
  if (!roles_.count(role)) roles_[role] = identity(size());
}

bool BeliefModel::has_role(const std::string& role) const { return roles_.count(role) > 0; }

RoleMatrix& BeliefModel::matrix(const std::string& role) {
  declare_role(role);
  return roles_.at(role);
}

const Rational& BeliefModel::weight(const std::string& role, std::size_t i, std::size_t j) const {
  auto it = roles_.find(role);
  if (it == roles_.end()) throw UnknownSymbol("unknown role '" + role + "'");
  return it->second.at(i).at(j);
}

void BeliefModel::set_weight(const std::string& role, std::size_t i, std::size_t j, Rational w) {
  matrix(role).at(i).at(j) = std::move(w);
}

const std::vector<Rational>& BeliefModel::row(const std::string& role, std::size_t i) const {
  auto it = roles_.find(role);
  if (it == roles_.end()) throw UnknownSymbol("unknown role '" + role + "'");
  return it->second.at(i);
}

void BeliefModel::set_row(const std::string& role, std::size_t i, std::vector<Rational> r) {
  if (r.size() != size()) throw std::invalid_argument("row length mismatch for role '" + role + "'");
  matrix(role).at(i) = std::move(r);
}

void BeliefModel::set_name(const std::string& name, std::set<std::size_t> members) {
  if (concepts_.count(name)) throw std::invalid_argument("'" + name + "' is already a concept");
  std::vector<Rational> values(size(), Rational(0));
  for (auto i : members) values.at(i) = 1;
  names_[name] = std::move(members);
  name_values_[name] = std::move(values);
}

Signature BeliefModel::signature() const {
  Signature sig;
  for (const auto& [c, v] : concepts_) sig.concepts.insert(c);
  for (const auto& [r, m] : roles_) sig.roles.insert(r);
  for (const auto& [n, s] : names_) sig.names.insert(n);
  return sig;
}

const char* kind_name(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::RowSum: return "row-sum";
    case Violation::Kind::IdCoherence: return "id-coherence";
    case Violation::Kind::Bounds: return "bounds";
    case Violation::Kind::NameCoherence: return "name-coherence";
  }
  return "?";
}

std::string to_string(const Violation& v) {
  return std::string(kind_name(v.kind)) + " at " + v.where + ": " + v.detail;
}

std::vector<Violation> validate_model(const BeliefModel& m) {
  std::vector<Violation> out;
  const auto& ind = m.individuals();
  const std::size_t n = m.size();
  for (const auto& [role, mat] : m.roles()) {
    for (std::size_t i = 0; i < n; ++i) {
      Rational sum = 0;
      for (std::size_t j = 0; j < n; ++j) {
        const Rational& w = mat[i][j];
        if (!in_unit_interval(w))
          out.push_back({Violation::Kind::Bounds, role + "(" + ind[i] + "," + ind[j] + ")",
                         "weight " + to_string(w) + " outside [0,1]"});
        sum += w;
      }
      if (sum != 1)
        out.push_back({Violation::Kind::RowSum, role + "(" + ind[i] + ",*)", "row sums to " + to_string(sum)});
    }
  }
  const auto& id = m.roles().at(std::string(kIdRole));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (id[i][j] <= 0) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (id[j][k] != id[i][k]) {
          out.push_back({Violation::Kind::IdCoherence, "id(" + ind[i] + "," + ind[j] + ")",
                         "id(" + ind[j] + "," + ind[k] + ")=" + to_string(id[j][k]) + " but id(" + ind[i] + "," +
                             ind[k] + ")=" + to_string(id[i][k])});
          break;
        }
    }
  for (const auto& [c, values] : m.concepts())
    for (std::size_t i = 0; i < n; ++i)
      if (!in_unit_interval(values[i]))
        out.push_back({Violation::Kind::Bounds, c + "(" + ind[i] + ")",
                       "likelihood " + to_string(values[i]) + " outside [0,1]"});
  for (const auto& [name, members] : m.names())
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (id[i][j] > 0 && members.count(i) != members.count(j))
          out.push_back({Violation::Kind::NameCoherence, name + "(" + ind[i] + ")",
                         "id links " + ind[i] + " to " + ind[j] + " but only one of them is " + name});
  return out;
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

Rational probability(const std::string& text, std::size_t line) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw ModelParseError(e.what(), line);
  }
}

}  // namespace

BeliefModel parse_model(std::string_view text) {
  BeliefModel m;
  bool have_individuals = false;
  std::istringstream in{std::string(text)};
  std::size_t lineno = 0;
  auto individual = [&](const std::string& name) {
    if (auto i = m.find(name)) return *i;
    throw ModelParseError("unknown individual '" + name + "'", lineno);
  };
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ModelParseError("expected 'key: value'", lineno);
    std::string key = trim(line.substr(0, colon));
    std::string rest = trim(line.substr(colon + 1));
    auto head = words(key);
    if (key == "individuals") {
      if (have_individuals) throw ModelParseError("individuals declared twice", lineno);
      auto list = words(rest);
      if (list.empty()) throw ModelParseError("no individuals", lineno);
      try {
        m = BeliefModel(list);
      } catch (const std::invalid_argument& e) {
        throw ModelParseError(e.what(), lineno);
      }
      have_individuals = true;
      continue;
    }
    if (!have_individuals) throw ModelParseError("'individuals:' must come first", lineno);
    if (head.size() == 2 && head[0] == "concept") {
      const std::string& c = head[1];
      if (m.has_concept(c)) throw ModelParseError("concept '" + c + "' declared twice", lineno);
      m.declare_concept(c);
      for (const auto& item : words(rest)) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw ModelParseError("expected individual=value, got '" + item + "'", lineno);
        m.set_likelihood(c, individual(item.substr(0, eq)), probability(item.substr(eq + 1), lineno));
      }
    } else if (head.size() == 2 && head[0] == "role") {
      const std::string& r = head[1];
      auto entries = words(rest);
      std::map<std::size_t, std::vector<Rational>> rows;
      for (const auto& item : entries) {
        auto arrow = item.find("->"), eq = item.find('=');
        if (arrow == std::string::npos || eq == std::string::npos || eq < arrow)
          throw ModelParseError("expected i->j=w, got '" + item + "'", lineno);
        std::size_t i = individual(item.substr(0, arrow));
        std::size_t j = individual(item.substr(arrow + 2, eq - arrow - 2));
        auto& row = rows.try_emplace(i, m.size(), Rational(0)).first->second;
        row[j] = probability(item.substr(eq + 1), lineno);
      }
      m.declare_role(r);
      for (auto& [i, row] : rows) m.set_row(r, i, std::move(row));
    } else if (key == "names") {
      for (const auto& item : words(rest)) {
        auto eq = item.find('=');
        if (eq == std::string::npos || item.size() < eq + 3 || item[eq + 1] != '{' || item.back() != '}')
          throw ModelParseError("expected Name={i,j}, got '" + item + "'", lineno);
        std::string name = item.substr(0, eq);
        std::set<std::size_t> members;
        std::string body = item.substr(eq + 2, item.size() - eq - 3);
        std::istringstream parts(body);
        for (std::string part; std::getline(parts, part, ',');)
          if (!trim(part).empty()) members.insert(individual(trim(part)));
        if (m.has_concept(name)) throw ModelParseError("'" + name + "' declared twice", lineno);
        m.set_name(name, std::move(members));
      }
    } else {
      throw ModelParseError("unknown key '" + key + "'", lineno);
    }
  }
  return m;
}

BeliefModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

std::string to_model_text(const BeliefModel& m) {
  const auto& ind = m.individuals();
  std::ostringstream out;
  out << "individuals:";
  for (const auto& i : ind) out << ' ' << i;
  out << '\n';
  for (const auto& [c, values] : m.concepts()) {
    out << "concept " << c << ':';
    for (std::size_t i = 0; i < values.size(); ++i)
      if (values[i] != 0) out << ' ' << ind[i] << '=' << to_string(values[i]);
    out << '\n';
  }
  for (const auto& [r, mat] : m.roles()) {
    bool is_identity = true;
    for (std::size_t i = 0; i < mat.size() && is_identity; ++i)
      for (std::size_t j = 0; j < mat.size(); ++j)
        if (mat[i][j] != (i == j ? kOne : kZero)) {
          is_identity = false;
          break;
        }
    if (is_identity && r == kIdRole) continue;
    out << "role " << r << ':';
    for (std::size_t i = 0; i < mat.size(); ++i)
      for (std::size_t j = 0; j < mat.size(); ++j)
        if (mat[i][j] != 0) out << ' ' << ind[i] << "->" << ind[j] << '=' << to_string(mat[i][j]);
    out << '\n';
  }
  if (!m.names().empty()) {
    out << "names:";
    for (const auto& [name, members] : m.names()) {
      out << ' ' << name << "={";
      bool first = true;
      for (auto i : members) {
        out << (first ? "" : ",") << ind[i];
        first = false;
      }
      out << '}';
    }
    out << '\n';
  }
  return out.str();
}

BeliefModel from_alc_interpretation(const Interpretation& itp) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < itp.size; ++i) labels.push_back("i" + std::to_string(i));
  BeliefModel m(labels);
  for (const auto& [c, ext] : itp.extension) {
    m.declare_concept(c);
    for (std::size_t i = 0; i < itp.size; ++i)
      if (ext.at(i)) m.set_likelihood(c, i, 1);
  }
  for (const auto& [r, succ] : itp.successors) {
    m.declare_role(r);
    for (std::size_t i = 0; i < itp.size; ++i) {
      std::set<std::size_t> targets(succ.at(i).begin(), succ.at(i).end());
      if (targets.empty())
        throw std::invalid_argument("individual " + labels[i] + " has no " + r + "-successor");
      std::vector<Rational> row(itp.size, Rational(0));
      for (auto j : targets) row[j] = Rational(1, static_cast<unsigned long>(targets.size()));
      m.set_row(r, i, std::move(row));
    }
  }
  return m;
}

}  // namespace adl
