#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace treebar {

/// Bijection of {0..n-1}; p(j) is the image of j.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> images);
  static Permutation identity(std::size_t n);
  /// Swaps k and k+1.
  static Permutation adjacent(std::size_t n, std::size_t k);

  std::size_t size() const { return images_.size(); }
  std::size_t operator()(std::size_t j) const { return images_[j]; }
  const std::vector<std::size_t>& images() const { return images_; }

  /// (p * q)(j) = p(q(j)).
  Permutation operator*(const Permutation& q) const;
  Permutation inverse() const;
  int sign() const;
  bool is_identity() const;

  /// Adjacent transpositions k_1, ..., k_r with p = s_{k_1} * ... * s_{k_r}.
  std::vector<std::size_t> adjacent_word() const;
  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> images_;
};

/// All permutations of n in lexicographic order of image sequences.
std::vector<Permutation> all_permutations(std::size_t n);

/// Sign of the permutation sorting a sequence of distinct keys.
template <class T>
int sort_sign(const std::vector<T>& seq) {
  int s = 1;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[j] < seq[i]) s = -s;
  return s;
}

}  // namespace treebar
