#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "treebar/scalar.hpp"

namespace treebar {

/// Exact sparse matrix in triplet form. Entries are kept sorted by (row, col)
/// with zeros dropped, so equality is structural.
class SparseMatrix {
 public:
  using Index = std::pair<std::size_t, std::size_t>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_{rows}, cols_{cols} {}

  static SparseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  /// Accumulates value into (row, col).
  void add(std::size_t row, std::size_t col, const Rational& value);
  Rational at(std::size_t row, std::size_t col) const;

  const std::map<Index, Rational>& entries() const { return entries_; }
  std::size_t nonzeros() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }

  /// Nonzero rows of one column.
  std::vector<std::pair<std::size_t, Rational>> column(std::size_t col) const;

  SparseMatrix operator*(const SparseMatrix& rhs) const;
  SparseMatrix operator+(const SparseMatrix& rhs) const;
  SparseMatrix operator-(const SparseMatrix& rhs) const;
  SparseMatrix scaled(const Rational& factor) const;
  SparseMatrix transposed() const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::map<Index, Rational> entries_;
};

/// Rank over Q (fraction-free integer elimination) or over F_p.
std::size_t rank(const SparseMatrix& m, const Field& field);

}  // namespace treebar
