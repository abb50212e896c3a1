#include "treebar/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace treebar {

Permutation::Permutation(std::vector<std::size_t> images) : images_{std::move(images)} {
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t v : images_) {
    if (v >= images_.size() || seen[v]) throw std::invalid_argument("not a permutation");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> im(n);
  std::iota(im.begin(), im.end(), 0);
  return Permutation(std::move(im));
}

Permutation Permutation::adjacent(std::size_t n, std::size_t k) {
  if (k + 1 >= n) throw std::out_of_range("adjacent transposition out of range");
  Permutation p = identity(n);
  std::swap(p.images_[k], p.images_[k + 1]);
  return p;
}

Permutation Permutation::operator*(const Permutation& q) const {
  if (q.size() != size()) throw std::invalid_argument("composing permutations of different sizes");
  std::vector<std::size_t> im(size());
  for (std::size_t j = 0; j < size(); ++j) im[j] = images_[q.images_[j]];
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> im(size());
  for (std::size_t j = 0; j < size(); ++j) im[images_[j]] = j;
  return Permutation(std::move(im));
}

int Permutation::sign() const { return sort_sign(images_); }

bool Permutation::is_identity() const {
  for (std::size_t j = 0; j < size(); ++j)
    if (images_[j] != j) return false;
  return true;
}

std::vector<std::size_t> Permutation::adjacent_word() const {
  // Bubble sort the image sequence: each swap at k right-multiplies by s_k,
  // so p * s_{k_1} * ... * s_{k_r} = id and p = s_{k_r} * ... * s_{k_1}.
  std::vector<std::size_t> work = images_;
  std::vector<std::size_t> swaps;
  for (std::size_t pass = 0; pass < work.size(); ++pass)
    for (std::size_t k = 0; k + 1 < work.size(); ++k)
      if (work[k] > work[k + 1]) {
        std::swap(work[k], work[k + 1]);
        swaps.push_back(k);
      }
  std::reverse(swaps.begin(), swaps.end());
  return swaps;
}

std::string Permutation::to_string() const {
  std::string s = "[";
  for (std::size_t j = 0; j < size(); ++j) s += (j ? "," : "") + std::to_string(images_[j] + 1);
  return s + "]";
}

std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<std::size_t> im(n);
  std::iota(im.begin(), im.end(), 0);
  std::vector<Permutation> out;
  do out.emplace_back(im);
  while (std::next_permutation(im.begin(), im.end()));
  return out;
}

}  // namespace treebar
