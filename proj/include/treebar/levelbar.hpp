#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "treebar/barkoszul.hpp"

namespace treebar {

/// Basis element of N°_n(I, P, I): a reduced tree with labels and a level per
/// vertex (aligned with tree.vertices()). Levels run 0..n-1 from the root,
/// every level is occupied and levels grow strictly towards the leaves.
/// Unit vertices are implicit.
struct LevelKey {
  Tree tree;
  Labeling label;
  std::vector<int> levels;

  int level_count() const;
  friend bool operator<(const LevelKey& a, const LevelKey& b) {
    return std::tie(a.tree.edges(), a.levels, a.label) < std::tie(b.tree.edges(), b.levels, b.label);
  }
  friend bool operator==(const LevelKey& a, const LevelKey& b) {
    return a.tree == b.tree && a.levels == b.levels && a.label == b.label;
  }
};

using LevelBar = IndexedComplex<LevelKey>;

/// Surjective strictly monotone level functions on t with exactly n levels.
std::vector<std::vector<int>> level_functions(const Tree& t, int n);
/// Throws std::invalid_argument when the levels do not form a normalized level tree.
void validate_levels(const Tree& t, const std::vector<int>& levels);

std::string level_key_name(const Species& s, const LevelKey& k);

/// Merges level i into level i-1 (1 <= i <= n-1).
Chain<LevelKey> merge_levels(const Operad& p, const LevelKey& k, int i);

/// N°(I, P, I)(I) in degrees 1..max_levels (all levels when max_levels <= 0).
LevelBar build_levelbar(const LabelSetPtr& labels, const Operad& p, int max_levels = 0);

struct LevelEdgeData {
  std::map<Mask, std::pair<int, int>> span;  // edge -> (s(e), t(e))
  std::vector<EdgeSet> n;                    // n[i-1] = N_i
};

/// Level-edge sets of a level function with `level_count` levels, which may
/// leave some levels empty (unit-only levels).
LevelEdgeData level_edge_sets(const Tree& t, const std::vector<int>& levels, int level_count);
LevelEdgeData level_edge_sets(const LevelKey& k);

/// Terms sum_sigma eps(sigma) (E_1^sigma, ..., E_n^sigma); with `normalize`
/// the terms holding an empty block are dropped and the rest collected.
std::vector<std::pair<Blocks, int>> psi_terms(const LevelEdgeData& data, bool normalize);

/// Levelization Phi : K_n(b_I, T_I, P) -> N°_{n+1}.
ChainMap phi(const OperadKoszul& k, const LevelBar& level);
/// Collapse psi-bar : N°_{n+1} -> N_n(b_I, T_I, P).
ChainMap psi_bar(const LevelBar& level, const OperadBar& n);

struct FactorizationResult {
  Report report{"psi-bar Phi = kappa-bar"};
  std::map<int, bool> degree_ok;  // K degree -> matrix identity holds
  bool kappa_chain = false, phi_chain = false, psi_chain = false;
  bool kappa_qi = false, phi_qi = false, psi_qi = false;
};

FactorizationResult verify_factorization(const LabelSetPtr& labels, const Operad& p, const Field& field);

}  // namespace treebar
