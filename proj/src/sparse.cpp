#include "treebar/sparse.hpp"

#include <algorithm>
#include <stdexcept>

namespace treebar {

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_.emplace(Index{i, i}, Rational(1));
  return m;
}

void SparseMatrix::add(std::size_t row, std::size_t col, const Rational& value) {
  if (row >= rows_ || col >= cols_) throw std::out_of_range("SparseMatrix::add outside the matrix");
  if (value == 0) return;
  auto [it, inserted] = entries_.emplace(Index{row, col}, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) entries_.erase(it);
  }
}

Rational SparseMatrix::at(std::size_t row, std::size_t col) const {
  auto it = entries_.find({row, col});
  return it == entries_.end() ? Rational(0) : it->second;
}

std::vector<std::pair<std::size_t, Rational>> SparseMatrix::column(std::size_t col) const {
  std::vector<std::pair<std::size_t, Rational>> out;
  for (const auto& [idx, v] : entries_)
    if (idx.second == col) out.emplace_back(idx.first, v);
  return out;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("SparseMatrix product: shape mismatch");
  std::vector<std::vector<std::pair<std::size_t, const Rational*>>> by_col(cols_);
  for (const auto& [idx, v] : entries_) by_col[idx.second].emplace_back(idx.first, &v);
  SparseMatrix out(rows_, rhs.cols_);
  for (const auto& [idx, v] : rhs.entries_)
    for (const auto& [row, lv] : by_col[idx.first]) out.add(row, idx.second, *lv * v);
  return out;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("SparseMatrix sum: shape mismatch");
  SparseMatrix out = *this;
  for (const auto& [idx, v] : rhs.entries_) out.add(idx.first, idx.second, v);
  return out;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& rhs) const { return *this + rhs.scaled(-1); }

SparseMatrix SparseMatrix::scaled(const Rational& factor) const {
  SparseMatrix out(rows_, cols_);
  if (factor == 0) return out;
  for (const auto& [idx, v] : entries_) out.entries_.emplace(idx, v * factor);
  return out;
}

SparseMatrix SparseMatrix::transposed() const {
  SparseMatrix out(cols_, rows_);
  for (const auto& [idx, v] : entries_) out.entries_.emplace(Index{idx.second, idx.first}, v);
  return out;
}

namespace {

using IntRow = std::vector<std::pair<std::size_t, BigInt>>;

void normalize_content(IntRow& row) {
  BigInt g = 0;
  for (const auto& [c, v] : row) {
    g = boost::multiprecision::gcd(g, v);
    if (g == 1) break;
  }
  if (row.front().second < 0) g = -g;
  if (g != 1)
    for (auto& [c, v] : row) v /= g;
}

// a_lead * row - row_lead * pivot; both leading entries cancel.
IntRow eliminate(const IntRow& row, const IntRow& pivot) {
  const BigInt a = pivot.front().second;
  const BigInt b = row.front().second;
  IntRow out;
  out.reserve(row.size() + pivot.size());
  std::size_t i = 1, j = 1;
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      out.emplace_back(row[i].first, a * row[i].second);
      ++i;
    } else if (i == row.size() || pivot[j].first < row[i].first) {
      out.emplace_back(pivot[j].first, -b * pivot[j].second);
      ++j;
    } else {
      BigInt v = a * row[i].second - b * pivot[j].second;
      if (v != 0) out.emplace_back(row[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  if (!out.empty()) normalize_content(out);
  return out;
}

std::size_t rank_rational(const SparseMatrix& m) {
  std::vector<std::vector<std::pair<std::size_t, Rational>>> rows(m.rows());
  for (const auto& [idx, v] : m.entries()) rows[idx.first].emplace_back(idx.second, v);
  std::map<std::size_t, IntRow> pivots;
  for (auto& rrow : rows) {
    if (rrow.empty()) continue;
    BigInt lcm = 1;
    for (const auto& [c, v] : rrow) {
      const BigInt d = boost::multiprecision::denominator(v);
      lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
    }
    IntRow row;
    row.reserve(rrow.size());
    for (const auto& [c, v] : rrow)
      row.emplace_back(c, boost::multiprecision::numerator(v) * (lcm / boost::multiprecision::denominator(v)));
    normalize_content(row);
    while (!row.empty()) {
      auto it = pivots.find(row.front().first);
      if (it == pivots.end()) {
        pivots.emplace(row.front().first, std::move(row));
        break;
      }
      row = eliminate(row, it->second);
    }
  }
  return pivots.size();
}

using ModRow = std::vector<std::pair<std::size_t, std::uint64_t>>;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t result = 1, e = p - 2;
  while (e) {
    if (e & 1) result = mul_mod(result, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return result;
}

std::size_t rank_modular(const SparseMatrix& m, const Field& field) {
  const std::uint64_t p = field.characteristic();
  std::vector<ModRow> rows(m.rows());
  for (const auto& [idx, v] : m.entries()) {
    std::uint64_t r = field.reduce(v);
    if (r) rows[idx.first].emplace_back(idx.second, r);
  }
  std::map<std::size_t, ModRow> pivots;  // leading coefficient normalized to 1
  for (auto& row : rows) {
    while (!row.empty()) {
      auto it = pivots.find(row.front().first);
      if (it == pivots.end()) {
        const std::uint64_t inv = inv_mod(row.front().second, p);
        for (auto& [c, v] : row) v = mul_mod(v, inv, p);
        pivots.emplace(row.front().first, std::move(row));
        break;
      }
      const ModRow& piv = it->second;
      const std::uint64_t f = row.front().second;
      ModRow out;
      std::size_t i = 1, j = 1;
      while (i < row.size() || j < piv.size()) {
        if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
          out.push_back(row[i++]);
        } else if (i == row.size() || piv[j].first < row[i].first) {
          out.emplace_back(piv[j].first, (p - mul_mod(f, piv[j].second, p)) % p);
          ++j;
        } else {
          std::uint64_t v = (row[i].second + p - mul_mod(f, piv[j].second, p)) % p;
          if (v) out.emplace_back(row[i].first, v);
          ++i;
          ++j;
        }
      }
      row = std::move(out);
    }
  }
  return pivots.size();
}

}  // namespace

std::size_t rank(const SparseMatrix& m, const Field& field) {
  return field.is_rational() ? rank_rational(m) : rank_modular(m, field);
}

}  // namespace treebar
