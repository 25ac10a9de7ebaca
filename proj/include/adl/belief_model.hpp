#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "adl/alc.hpp"
#include "adl/formula.hpp"
#include "adl/rational.hpp"

namespace adl {

using RoleMatrix = std::vector<std::vector<Rational>>;

// Finite aleatoric belief model: individuals, one stochastic matrix per role
// and one likelihood per (individual, concept). Roles that were never set are
// the identity, and `id` always exists. Names are {0,1} concepts kept apart
// from ordinary concepts so they can be checked for absoluteness.
class BeliefModel {
 public:
  BeliefModel() = default;
  explicit BeliefModel(std::vector<std::string> individuals);

  std::size_t size() const { return individuals_.size(); }
  const std::vector<std::string>& individuals() const { return individuals_; }
  std::optional<std::size_t> find(const std::string& individual) const;
  std::size_t index_of(const std::string& individual) const;  // throws std::out_of_range

  // New individual with zero likelihoods and identity rows in every role.
  std::size_t add_individual(std::string label);

  void declare_concept(const std::string& cname);
  bool has_concept(const std::string& cname) const;
  void set_likelihood(const std::string& cname, std::size_t i, Rational p);
  // Ordinary concepts and names alike; unknown concepts throw UnknownSymbol.
  const Rational& likelihood(std::size_t i, const std::string& cname) const;
  const std::map<std::string, std::vector<Rational>>& concepts() const { return concepts_; }

  void declare_role(const std::string& role);
  bool has_role(const std::string& role) const;
  const Rational& weight(const std::string& role, std::size_t i, std::size_t j) const;
  void set_weight(const std::string& role, std::size_t i, std::size_t j, Rational w);
  const std::vector<Rational>& row(const std::string& role, std::size_t i) const;
  void set_row(const std::string& role, std::size_t i, std::vector<Rational> row);
  const std::map<std::string, RoleMatrix>& roles() const { return roles_; }

  void set_name(const std::string& name, std::set<std::size_t> members);
  const std::map<std::string, std::set<std::size_t>>& names() const { return names_; }

  Signature signature() const;

 private:
  RoleMatrix& matrix(const std::string& role);

  std::vector<std::string> individuals_;
  std::map<std::string, std::vector<Rational>> concepts_;
  std::map<std::string, RoleMatrix> roles_{{std::string(kIdRole), {}}};
  std::map<std::string, std::set<std::size_t>> names_;
  std::map<std::string, std::vector<Rational>> name_values_;
};

struct PointedModel {
  const BeliefModel* model;
  std::size_t point;
};

struct Violation {
  enum class Kind { RowSum, IdCoherence, Bounds, NameCoherence };
  Kind kind;
  std::string where;
  std::string detail;
};

const char* kind_name(Violation::Kind k);
std::string to_string(const Violation& v);

std::vector<Violation> validate_model(const BeliefModel& m);

class ModelParseError : public std::runtime_error {
 public:
  ModelParseError(const std::string& msg, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Line format, `#` starts a comment:
//   individuals: u v w
//   concept A: u=1/2 v=0 w=9/10      (unlisted individuals get 0)
//   role c: u->v=3/10 u->w=7/10      (unlisted rows stay identity)
//   names: Hector={h0,h1} Julia={j0}
BeliefModel parse_model(std::string_view text);
BeliefModel load_model(const std::string& path);
std::string to_model_text(const BeliefModel& m);

// 0/1 likelihoods, uniform rows over successor sets. Throws
// std::invalid_argument if some individual has no successor for a role.
BeliefModel from_alc_interpretation(const Interpretation& itp);

}  // namespace adl
