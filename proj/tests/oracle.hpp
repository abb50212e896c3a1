#pragma once

// Independent dense Gaussian elimination, used to cross-check the sparse ranks.

#include <cstdint>
#include <map>
#include <vector>

#include "treebar/complexes.hpp"

namespace oracle {

using treebar::Rational;

inline std::vector<std::vector<Rational>> to_dense(const treebar::SparseMatrix& m) {
  std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols()));
  for (const auto& [pos, v] : m.entries()) a[pos.first][pos.second] = v;
  return a;
}

// Rank over Q, or over F_p when p > 0.
inline std::size_t dense_rank(const treebar::SparseMatrix& m, std::uint64_t p = 0) {
  auto a = to_dense(m);
  if (p) {
    const treebar::Field f = treebar::Field::prime(p);
    for (auto& row : a)
      for (auto& x : row) x = Rational(f.reduce(x));
  }
  auto normalize = [p](Rational& x) {
    if (!p) return;
    using treebar::BigInt;
    const BigInt num = boost::multiprecision::numerator(x), den = boost::multiprecision::denominator(x);
    BigInt inv = 1, base = den % p, e = p - 2;
    while (e > 0) {
      if (e % 2 == 1) inv = inv * base % p;
      base = base * base % p;
      e /= 2;
    }
    BigInt r = num * inv % p;
    if (r < 0) r += p;
    x = Rational(r);
  };
  std::size_t rank = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const Rational k = a[r][c] / a[rank][c];
      for (std::size_t j = c; j < cols; ++j) {
        a[r][j] -= k * a[rank][j];
        normalize(a[r][j]);
      }
    }
    ++rank;
  }
  return rank;
}

inline std::map<int, std::size_t> dense_betti(const treebar::BasedChainComplex& c, std::uint64_t p = 0) {
  std::map<int, std::size_t> out;
  for (int n : c.degrees()) {
    const std::size_t b = c.dim(n) - dense_rank(c.differential(n), p) - dense_rank(c.differential(n + 1), p);
    if (b) out[n] = b;
  }
  return out;
}

}  // namespace oracle
