#pragma once

#include <tuple>
#include <vector>

#include "treebar/complexes.hpp"
#include "treebar/tree_species.hpp"
#include "treebar/trees.hpp"

namespace treebar {

/// Ordered tuple (E_1, ..., E_n) of disjoint nonempty edge sets.
using Blocks = std::vector<EdgeSet>;

/// Ordered partitions of e into exactly k nonempty blocks, deterministic order.
std::vector<Blocks> ordered_partitions(const EdgeSet& e, std::size_t k);
std::string blocks_string(const LabelSet& labels, const Blocks& b);

/// Basis element (t; E_1..E_n; p) of N(b_I, T_I, P).
struct BarKey {
  Tree tree;
  Blocks blocks;
  Labeling label;
  friend bool operator<(const BarKey& a, const BarKey& b) {
    return std::tie(a.tree.edges(), a.blocks, a.label) < std::tie(b.tree.edges(), b.blocks, b.label);
  }
  friend bool operator==(const BarKey& a, const BarKey& b) {
    return a.tree == b.tree && a.blocks == b.blocks && a.label == b.label;
  }
};

/// Basis element e_1 ^ ... ^ e_n (x) p of K(b_I, T_I, P); the wedge is all of E_t, canonically oriented.
struct KoszulKey {
  Tree tree;
  Labeling label;
  friend bool operator<(const KoszulKey& a, const KoszulKey& b) {
    return std::tie(a.tree.edges(), a.label) < std::tie(b.tree.edges(), b.label);
  }
  friend bool operator==(const KoszulKey& a, const KoszulKey& b) { return a.tree == b.tree && a.label == b.label; }
};

/// Basis element H (x) wedge(G) (x) F; H is empty for b_s coefficients.
struct ResolutionKey {
  EdgeSet h, g, f;
  bool augmentation = false;  // the degree -1 class
  friend auto operator<=>(const ResolutionKey&, const ResolutionKey&) = default;
};

using CategoryBar = IndexedComplex<Blocks>;
using CategoryKoszul = IndexedComplex<EdgeSet>;
using OperadBar = IndexedComplex<BarKey>;
using OperadKoszul = IndexedComplex<KoszulKey>;
using Resolution = IndexedComplex<ResolutionKey>;

/// N(b_s, T_I, b_t). Throws std::domain_error when there is no morphism t -> s.
CategoryBar build_N_category(const Tree& t, const Tree& s);
/// K(b_s, T_I, b_t): the wedge of E in degree |E|.
CategoryKoszul build_K_category(const Tree& t, const Tree& s);
ChainMap kappa_category(const CategoryKoszul& k, const CategoryBar& n);

/// N(b_I, T_I, P) over every tree on the labels.
OperadBar build_N_operad(const LabelSetPtr& labels, const Operad& p);
/// K(b_I, T_I, P).
OperadKoszul build_K_operad(const LabelSetPtr& labels, const Operad& p);
/// kappa-bar : K(b_I, T_I, P) -> N(b_I, T_I, P).
ChainMap kappa(const OperadKoszul& k, const OperadBar& n);

/// K(b_s, T_I, T_I)(t), optionally augmented by b_s(t) in degree -1.
Resolution build_K_resolution(const Tree& t, const Tree& s, bool augmented = true);
/// K(T_I, T_I, T_I)(t, s), optionally augmented by kT_I(t, s) in degree -1.
Resolution build_K_bifunctor(const Tree& t, const Tree& s, bool augmented = true);

}  // namespace treebar
