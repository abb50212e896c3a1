#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "treebar/permutation.hpp"
#include "treebar/report.hpp"
#include "treebar/scalar.hpp"
#include "treebar/sparse.hpp"

namespace treebar {

/// Sparse combination of basis indices.
using LinComb = std::map<std::size_t, Rational>;

void add_terms(LinComb& into, std::size_t index, const Rational& c);
void add_terms(LinComb& into, const LinComb& terms, const Rational& scale = 1);

enum class ActionKind { trivial, regular, explicit_matrices };

/// One arity of a species.
struct SpeciesComponent {
  std::vector<std::string> basis;
  std::vector<int> degrees;  // defaults to all 0
  ActionKind action = ActionKind::trivial;
  /// explicit_matrices: one dim x dim matrix per adjacent transposition s_1..s_{n-1}.
  std::vector<SparseMatrix> transpositions;
  /// Internal differential, dim x dim; zero when absent.
  SparseMatrix differential;
};

/// Thrown when an arity exceeds the truncation.
class ArityOverflow : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Finite species truncated at max_arity. relabel(x, pi) moves slot j to slot pi(j).
class Species {
 public:
  Species() = default;
  /// components[n-1] describes arity n.
  explicit Species(std::vector<SpeciesComponent> components);

  std::size_t max_arity() const { return components_.size(); }
  std::size_t dim(std::size_t n) const;
  const SpeciesComponent& component(std::size_t n) const;
  const std::string& name(std::size_t n, std::size_t i) const { return component(n).basis.at(i); }
  int degree(std::size_t n, std::size_t i) const { return component(n).degrees.at(i); }
  std::optional<std::size_t> find(std::size_t n, const std::string& name) const;
  bool connected() const;

  LinComb relabel(std::size_t n, std::size_t index, const Permutation& pi) const;
  LinComb relabel(std::size_t n, const LinComb& x, const Permutation& pi) const;
  /// Column j is relabel(j, pi).
  SparseMatrix action_matrix(std::size_t n, const Permutation& pi) const;

  /// Group-action axioms for every arity (Coxeter relations for explicit actions).
  Report check_action() const;

 private:
  std::vector<SpeciesComponent> components_;
  std::vector<std::vector<std::vector<std::size_t>>> words_;  // regular actions: word of each basis index
};

/// Basis names "x1x2x3"-style for permutation words, in lexicographic order.
std::vector<std::string> word_names(std::size_t n);
/// Lexicographic rank of a permutation word.
std::size_t word_rank(const std::vector<std::size_t>& word);

}  // namespace treebar
