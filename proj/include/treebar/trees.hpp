#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "treebar/permutation.hpp"

namespace treebar {

/// Subset of a label set, bit i standing for the i-th label in the ambient order.
using Mask = std::uint64_t;

inline int popcount(Mask m) { return __builtin_popcountll(m); }
inline int lowest(Mask m) { return __builtin_ctzll(m); }
inline Mask bit(std::size_t i) { return Mask{1} << i; }

/// Lexicographic order on sorted index lists, a proper prefix first.
bool cluster_less(Mask a, Mask b);

/// Totally ordered finite set of atoms. Integers when every atom parses as
/// one (ordered numerically), strings otherwise.
class LabelSet {
 public:
  static constexpr std::size_t max_size = 64;

  explicit LabelSet(std::vector<std::string> atoms);
  static LabelSet range(std::size_t n);
  static LabelSet parse(std::string_view csv);

  std::size_t size() const { return atoms_.size(); }
  Mask full() const { return size() == 64 ? ~Mask{0} : bit(size()) - 1; }
  const std::string& atom(std::size_t i) const { return atoms_[i]; }
  std::optional<std::size_t> index_of(std::string_view atom) const;
  bool numeric() const { return numeric_; }

  /// "{1,2,3}"
  std::string to_string() const;
  /// "[1,2]" for a subset
  std::string subset_string(Mask m) const;

  friend bool operator==(const LabelSet& a, const LabelSet& b) { return a.atoms_ == b.atoms_; }

 private:
  std::vector<std::string> atoms_;
  bool numeric_ = true;
};

using LabelSetPtr = std::shared_ptr<const LabelSet>;

/// Internal edges, always kept in canonical order.
using EdgeSet = std::vector<Mask>;

/// Reduced I-tree: the leaf sets of its non-root vertices. Each such cluster
/// also names the internal edge leaving that vertex.
class Tree {
 public:
  Tree(LabelSetPtr labels, std::vector<Mask> clusters);
  static Tree corolla(LabelSetPtr labels) { return Tree(std::move(labels), {}); }
  /// Canonical form "{1,2,3}|[[1,2]]"; "{1,2,3}|[]" for the corolla.
  static Tree parse(std::string_view form);

  const LabelSet& labels() const { return *labels_; }
  const LabelSetPtr& labels_ptr() const { return labels_; }
  Mask root() const { return labels_->full(); }

  const EdgeSet& edges() const { return clusters_; }
  std::size_t edge_count() const { return clusters_.size(); }
  bool has_edge(Mask e) const;
  /// Position of e in canonical order; throws std::domain_error if absent.
  std::size_t edge_index(Mask e) const;

  /// Root first, then clusters in canonical order. Empty when |I| = 1.
  std::vector<Mask> vertices() const;
  std::size_t vertex_index(Mask v) const;
  bool is_vertex(Mask v) const { return (labels_->size() >= 2 && v == root()) || has_edge(v); }
  /// Smallest vertex strictly containing the cluster.
  Mask parent(Mask cluster) const;
  /// Maximal clusters strictly inside v plus uncovered leaves, by minimum label.
  std::vector<Mask> inputs(Mask v) const;

  std::string to_string() const;

  friend bool operator==(const Tree& a, const Tree& b) {
    return a.clusters_ == b.clusters_ && (a.labels_ == b.labels_ || *a.labels_ == *b.labels_);
  }
  friend bool operator<(const Tree& a, const Tree& b);

 private:
  LabelSetPtr labels_;
  std::vector<Mask> clusters_;
};

std::vector<Tree> enumerate_trees(const LabelSetPtr& labels);

/// t/E. Throws std::domain_error if some edge is not in t.
Tree contract(const Tree& t, const EdgeSet& e);

/// The unique E with s = t/E, if any. Throws std::domain_error on mismatched labels.
std::optional<EdgeSet> hom_set(const Tree& t, const Tree& s);

/// Throws std::domain_error for an unknown vertex.
std::vector<Mask> vertex_inputs(const Tree& t, Mask v);

/// e <= f iff f lies above e.
bool edge_leq(const Tree& t, Mask e, Mask f);

struct LinearExtension {
  std::vector<std::size_t> position;  // sigma(e_i), 1-based, canonical edge order
  int sign = 1;
};

/// Order-preserving bijections E_t -> {1..n}, sorted by position vector.
std::vector<LinearExtension> linear_extensions(const Tree& t);

/// Image of a tree under a permutation of label indices.
Tree relabel(const Tree& t, const Permutation& pi);
Mask relabel(Mask m, const Permutation& pi);

/// Subset of t's edges selected by bits of an index mask.
EdgeSet edge_subset(const Tree& t, std::uint64_t index_bits);
/// Canonically sorted copy.
EdgeSet canonical(EdgeSet e);
EdgeSet set_minus(const EdgeSet& a, const EdgeSet& b);
EdgeSet set_union(const EdgeSet& a, const EdgeSet& b);
std::string edge_set_string(const LabelSet& labels, const EdgeSet& e);

}  // namespace treebar
