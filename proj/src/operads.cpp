#include "treebar/operads.hpp"

#include <algorithm>

namespace treebar {

Operad::Operad(std::string name, Species species, Table table)
    : name_{std::move(name)}, species_{std::move(species)}, table_{std::move(table)} {
  if (!species_.connected()) throw std::invalid_argument("operad " + name_ + ": species is not connected");
  const std::size_t top = max_arity();
  for (std::size_t m = 1; m <= top; ++m)
    for (std::size_t n = 1; m + n - 1 <= top; ++n)
      for (std::size_t i = 1; i <= m; ++i) {
        const CompositionKey key{m, i, n};
        const std::size_t dm = dim(m), dn = dim(n), dr = dim(m + n - 1);
        auto it = table_.find(key);
        if (it == table_.end()) {
          std::vector<LinComb> entries(dm * dn);
          if (m == 1)
            for (std::size_t b = 0; b < dn; ++b) entries[b] = {{b, 1}};
          else if (n == 1)
            for (std::size_t a = 0; a < dm; ++a) entries[a] = {{a, 1}};
          table_.emplace(key, std::move(entries));
          continue;
        }
        if (it->second.size() != dm * dn)
          throw std::invalid_argument("operad " + name_ + ": composition table (" + std::to_string(m) + "," +
                                      std::to_string(i) + "," + std::to_string(n) + ") has the wrong size");
        for (const auto& terms : it->second)
          for (const auto& [r, c] : terms)
            if (r >= dr) throw std::invalid_argument("operad " + name_ + ": composition result out of range");
      }
  for (const auto& [key, entries] : table_)
    if (key.m + key.n - 1 > top || key.i < 1 || key.i > key.m || key.n < 1)
      throw std::invalid_argument("operad " + name_ + ": composition outside the truncation");
}

const LinComb& Operad::compose(std::size_t m, std::size_t a, std::size_t i, std::size_t n, std::size_t b) const {
  if (m + n - 1 > max_arity())
    throw ArityOverflow("operad " + name_ + ": composite arity " + std::to_string(m + n - 1) + " exceeds max_arity " +
                        std::to_string(max_arity()));
  auto it = table_.find({m, i, n});
  if (it == table_.end()) throw std::out_of_range("no composition slot " + std::to_string(i));
  return it->second.at(a * dim(n) + b);
}

LinComb Operad::compose(std::size_t m, const LinComb& x, std::size_t i, std::size_t n, const LinComb& y) const {
  LinComb out;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) add_terms(out, compose(m, a, i, n, b), ca * cb);
  return out;
}

void Operad::set_composition(std::size_t m, std::size_t a, std::size_t i, std::size_t n, std::size_t b, LinComb value) {
  auto it = table_.find({m, i, n});
  if (it == table_.end()) throw std::out_of_range("no such composition");
  it->second.at(a * dim(n) + b) = std::move(value);
}

namespace {

// Insertion position of slot a of x after x o_i y (0-based slots, 1-based i).
std::size_t slot_of_x(std::size_t a, std::size_t i, std::size_t n) { return a + 1 < i ? a : a + n - 1; }

std::string element(const Species& s, std::size_t n, std::size_t a) { return s.name(n, a); }

std::string show(const Species& s, std::size_t n, const LinComb& v) {
  if (v.empty()) return "0";
  std::string out;
  for (const auto& [i, c] : v) out += (out.empty() ? "" : " + ") + to_string(c) + "*" + s.name(n, i);
  return out;
}

}  // namespace

Report check_operad_axioms(const Operad& p) {
  Report report("operad axioms " + p.name());
  const Species& s = p.species();
  const std::size_t top = p.max_arity();
  const Report action = s.check_action();
  report.absorb(action);

  for (std::size_t n = 1; n <= top; ++n)
    for (std::size_t x = 0; x < p.dim(n); ++x) {
      const LinComb id{{x, 1}};
      if (p.compose(1, Operad::unit, 1, n, x) != id)
        report.fail("u o_1 x = x", "x = " + element(s, n, x));
      for (std::size_t i = 1; i <= n; ++i)
        if (p.compose(n, x, i, 1, Operad::unit) != id)
          report.fail("x o_i u = x", "x = " + element(s, n, x) + ", i = " + std::to_string(i));
    }

  // associativity, both shapes
  for (std::size_t m = 1; m <= top; ++m)
    for (std::size_t n = 1; m + n - 1 <= top; ++n)
      for (std::size_t k = 1; m + n + k - 2 <= top; ++k)
        for (std::size_t x = 0; x < p.dim(m); ++x)
          for (std::size_t y = 0; y < p.dim(n); ++y)
            for (std::size_t z = 0; z < p.dim(k); ++z) {
              const LinComb X{{x, 1}}, Y{{y, 1}}, Z{{z, 1}};
              const std::string who = "x = " + element(s, m, x) + ", y = " + element(s, n, y) + ", z = " + element(s, k, z);
              for (std::size_t i = 1; i <= m; ++i) {
                const LinComb xy = p.compose(m, X, i, n, Y);
                for (std::size_t j = 1; j <= n; ++j) {
                  const LinComb lhs = p.compose(m + n - 1, xy, i + j - 1, k, Z);
                  const LinComb rhs = p.compose(m, X, i, n + k - 1, p.compose(n, Y, j, k, Z));
                  if (lhs != rhs)
                    report.fail("(x o_i y) o_{i+j-1} z = x o_i (y o_j z)",
                                who + ", i = " + std::to_string(i) + ", j = " + std::to_string(j) + ": " +
                                    show(s, m + n + k - 2, lhs) + " != " + show(s, m + n + k - 2, rhs));
                }
                for (std::size_t l = i + 1; l <= m; ++l) {
                  const LinComb lhs = p.compose(m + n - 1, xy, l + n - 1, k, Z);
                  LinComb rhs;
                  const int sign = (s.degree(n, y) * s.degree(k, z)) % 2 ? -1 : 1;
                  add_terms(rhs, p.compose(m + k - 1, p.compose(m, X, l, k, Z), i, n, Y), sign);
                  if (lhs != rhs)
                    report.fail("(x o_i y) o_{l+n-1} z = +-(x o_l z) o_i y",
                                who + ", i = " + std::to_string(i) + ", l = " + std::to_string(l) + ": " +
                                    show(s, m + n + k - 2, lhs) + " != " + show(s, m + n + k - 2, rhs));
                }
              }
            }

  // equivariance: sigma(x) o_{sigma(i)} tau(y) = Pi(x o_i y)
  if (!action.passed()) return report;
  for (std::size_t m = 1; m <= top; ++m)
    for (std::size_t n = 1; m + n - 1 <= top; ++n) {
      const std::size_t r = m + n - 1;
      const auto sigmas = all_permutations(m);
      const auto taus = all_permutations(n);
      for (const auto& sigma : sigmas)
        for (const auto& tau : taus) {
          if (sigma.is_identity() && tau.is_identity()) continue;
          for (std::size_t i = 1; i <= m; ++i) {
            const std::size_t si = sigma(i - 1) + 1;
            std::vector<std::size_t> im(r);
            for (std::size_t a = 0; a < m; ++a)
              if (a + 1 != i) im[slot_of_x(a, i, n)] = slot_of_x(sigma(a), si, n);
            for (std::size_t b = 0; b < n; ++b) im[i - 1 + b] = si - 1 + tau(b);
            const Permutation big(im);
            for (std::size_t x = 0; x < p.dim(m); ++x)
              for (std::size_t y = 0; y < p.dim(n); ++y) {
                const LinComb lhs = p.compose(m, s.relabel(m, x, sigma), si, n, s.relabel(n, y, tau));
                const LinComb rhs = s.relabel(r, p.compose(m, x, i, n, y), big);
                if (lhs != rhs)
                  report.fail("sigma(x) o_sigma(i) tau(y) = Pi(x o_i y)",
                              "x = " + element(s, m, x) + ", y = " + element(s, n, y) + ", i = " + std::to_string(i) +
                                  ", sigma = " + sigma.to_string() + ", tau = " + tau.to_string());
              }
          }
        }
    }
  return report;
}

}  // namespace treebar
