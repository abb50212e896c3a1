#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "treebar/report.hpp"
#include "treebar/species.hpp"

namespace treebar {

/// Partial composition x o_i y with x of arity m and y of arity n; i is 1-based.
struct CompositionKey {
  std::size_t m = 0, i = 0, n = 0;
  friend auto operator<=>(const CompositionKey&, const CompositionKey&) = default;
};

/// Operad truncated at max_arity, given by structure constants. The unit is
/// basis element 0 of arity 1. x o_i y places the slots of y between the
/// slots of x before i and after i.
class Operad {
 public:
  /// table[key][a * dim(n) + b] = x_a o_i y_b
  using Table = std::map<CompositionKey, std::vector<LinComb>>;

  Operad(std::string name, Species species, Table table);

  const std::string& name() const { return name_; }
  const Species& species() const { return species_; }
  std::size_t max_arity() const { return species_.max_arity(); }
  std::size_t dim(std::size_t n) const { return species_.dim(n); }
  static constexpr std::size_t unit = 0;

  /// Throws ArityOverflow when m + n - 1 exceeds max_arity.
  const LinComb& compose(std::size_t m, std::size_t a, std::size_t i, std::size_t n, std::size_t b) const;
  LinComb compose(std::size_t m, const LinComb& x, std::size_t i, std::size_t n, const LinComb& y) const;

  /// Overwrites one structure constant (used to build faulty fixtures).
  void set_composition(std::size_t m, std::size_t a, std::size_t i, std::size_t n, std::size_t b, LinComb value);
  const Table& table() const { return table_; }

 private:
  std::string name_;
  Species species_;
  Table table_;
};

Operad make_com(std::size_t max_arity);
Operad make_ass(std::size_t max_arity);
/// Free operad on a generator species without arity-1 part.
Operad make_free(const Species& generators, std::size_t max_arity, std::string name = "free");
/// One binary generator with trivial S_2 action.
Species binary_generator();
/// com with every composition of two non-units landing above cutoff set to 0.
Operad make_nilpotent(std::size_t max_arity, std::size_t cutoff);

/// "com", "ass", "free-binary", "nilpotent" or "nilpotent:<cutoff>" (default cutoff 3).
Operad builtin_operad(const std::string& name, std::size_t max_arity);
bool is_builtin_operad(const std::string& name);

/// Unit, sequential and parallel associativity, and equivariance, exhaustively.
Report check_operad_axioms(const Operad& p);

nlohmann::json species_to_json(const Species& s);
Species species_from_json(const nlohmann::json& j);
nlohmann::json operad_to_json(const Operad& p);
/// Throws std::invalid_argument on malformed input.
Operad operad_from_json(const nlohmann::json& j);
Operad load_operad(const std::string& path);

}  // namespace treebar
