#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "treebar/tree_species.hpp"

namespace treebar {

/// One term F (x) G of a cocomposition, F u G = E.
struct SignedSplit {
  EdgeSet f, g;
  int sign = 1;
  friend bool operator==(const SignedSplit&, const SignedSplit&) = default;
};

/// Sign of the permutation taking the concatenation F, G to canonical order.
int shuffle_sign(const EdgeSet& f, const EdgeSet& g);

/// Delta(E) = 1 (x) E + E (x) 1 + sum over shuffles; unit terms first, then by |F|.
std::vector<SignedSplit> koszul_cocomposition(const Tree& t, const EdgeSet& e);

/// Proper splittings with the cobar sign (-1)^{|F|} eps(F, G); the term reads
/// "contract G first, then F".
std::vector<SignedSplit> cobar_generator_differential(const Tree& t, const EdgeSet& e);

/// Expands d(d(s o_E)) formally. Returns the words (innermost factor last)
/// with nonzero coefficient; empty means the cobar differential squares to 0.
/// With plain_sign the (-1)^{|F|} factor is omitted.
std::map<std::vector<EdgeSet>, int> cobar_d_squared(const EdgeSet& e, bool plain_sign = false);

/// Signed terms of (Delta (x) id) Delta minus (id (x) Delta) Delta; empty when coassociative.
std::map<std::vector<EdgeSet>, int> coassociativity_defect(const Tree& t, const EdgeSet& e);

class MissingOperation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Species with operations o_E : M(t) -> M(t/E) of degree |E| - 1, for trees
/// over {1..m}, m <= max_labels.
class HomotopyOperadData {
 public:
  HomotopyOperadData(Species species, std::size_t max_labels);

  const Species& species() const { return species_; }
  std::size_t max_labels() const { return max_labels_; }

  void set(const Tree& t, const EdgeSet& e, SparseMatrix m);
  /// Throws MissingOperation naming (t, E).
  const SparseMatrix& op(const Tree& t, const EdgeSet& e) const;
  bool has(const Tree& t, const EdgeSet& e) const;
  void erase(const Tree& t, const EdgeSet& e);
  /// Negates o_E on one tree.
  void negate(const Tree& t, const EdgeSet& e);
  std::size_t size() const { return ops_.size(); }

  nlohmann::json to_json() const;
  static HomotopyOperadData from_json(const nlohmann::json& j);

 private:
  Species species_;
  std::size_t max_labels_;
  std::map<std::pair<std::string, EdgeSet>, SparseMatrix> ops_;
};

/// o_e = e_* for single edges, o_E = 0 for |E| >= 2.
HomotopyOperadData strict_to_homotopy(const Operad& p, std::size_t max_labels);

/// Internal differential of M(t) (Koszul rule across the vertex factors).
SparseMatrix tree_differential(const Species& s, const Tree& t);

struct HomotopyCheck {
  Report report{"operad up to homotopy"};
  std::size_t relations = 0;
};

/// For every tree over {1..m}, m <= max_labels, and nonempty E:
///   d o_E - (-1)^{|E|-1} o_E d = sum (-1)^{|F|} eps(F,G) o_F o_G,
/// plus degree bookkeeping and equivariance under relabelling.
HomotopyCheck check_homotopy_operad(const HomotopyOperadData& h, std::size_t max_labels);

}  // namespace treebar
