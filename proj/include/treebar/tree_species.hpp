#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "treebar/operads.hpp"
#include "treebar/trees.hpp"

namespace treebar {

/// One basis index per vertex of a tree, in the tree's vertex order.
using Labeling = std::vector<std::size_t>;
using LabelingComb = std::map<Labeling, Rational>;

/// Basis of M(t) = tensor of M(In(v)) over the vertices: all labelings in
/// mixed radix, the root being the most significant digit.
class TreeBasis {
 public:
  /// Throws ArityOverflow naming the vertex whose arity exceeds max_arity.
  TreeBasis(const Species& species, Tree tree);

  const Tree& tree() const { return tree_; }
  std::size_t size() const { return size_; }
  const std::vector<std::size_t>& arities() const { return arities_; }
  std::size_t index(const Labeling& x) const;
  Labeling labeling(std::size_t index) const;
  /// Basis names per vertex, e.g. "x1x2,x2x1"; "1" for the bare leaf.
  std::string name(const Labeling& x) const;
  int degree(const Labeling& x) const;

 private:
  const Species* species_;
  Tree tree_;
  std::vector<std::size_t> arities_;
  std::vector<std::size_t> radix_;
  std::size_t size_ = 1;
};

inline TreeBasis species_on_tree(const Species& m, const Tree& t) { return TreeBasis(m, t); }

/// Element of M(t).
struct TreeVector {
  Tree tree;
  LabelingComb coeffs;
};

/// Transports a labeling of t to relabel(t, pi).
LabelingComb relabel_labeling(const Species& m, const Tree& t, const Labeling& x, const Permutation& pi);

/// Composes along one edge into its parent vertex. Result lives on t/{edge}.
LabelingComb contract_edge(const Operad& p, const Tree& t, Mask edge, const Labeling& x);
/// Contracts the edges one at a time, in the given order.
LabelingComb contract_sequence(const Operad& p, const Tree& t, const std::vector<Mask>& order, const Labeling& x);
/// E_* on a basis element, in canonical edge order.
LabelingComb contract_basis(const Operad& p, const Tree& t, const EdgeSet& e, const Labeling& x);
TreeVector contract_action(const Operad& p, const Tree& t, const EdgeSet& e, const TreeVector& x);
/// Matrix of E_* : P(t) -> P(t/E) in the TreeBasis bases.
SparseMatrix contraction_matrix(const Operad& p, const Tree& t, const EdgeSet& e);

}  // namespace treebar
