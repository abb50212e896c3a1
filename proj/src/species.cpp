#include "treebar/species.hpp"

#include <algorithm>

namespace treebar {

void add_terms(LinComb& into, std::size_t index, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = into.emplace(index, c);
  if (fresh) return;
  it->second += c;
  if (it->second == 0) into.erase(it);
}

void add_terms(LinComb& into, const LinComb& terms, const Rational& scale) {
  for (const auto& [i, c] : terms) add_terms(into, i, c * scale);
}

std::vector<std::string> word_names(std::size_t n) {
  std::vector<std::string> out;
  for (const auto& p : all_permutations(n)) {
    std::string s;
    for (std::size_t v : p.images()) s += "x" + std::to_string(v + 1);
    out.push_back(std::move(s));
  }
  return out;
}

std::size_t word_rank(const std::vector<std::size_t>& word) {
  std::size_t rank = 0;
  const std::size_t n = word.size();
  std::size_t fact = 1;
  for (std::size_t k = 2; k < n; ++k) fact *= k;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j)
      if (word[j] < word[i]) ++smaller;
    rank += smaller * fact;
    if (n - 1 - i > 1) fact /= (n - 1 - i);
  }
  return rank;
}

Species::Species(std::vector<SpeciesComponent> components) : components_{std::move(components)} {
  words_.resize(components_.size());
  for (std::size_t k = 0; k < components_.size(); ++k) {
    auto& c = components_[k];
    const std::size_t n = k + 1, d = c.basis.size();
    if (c.degrees.empty()) c.degrees.assign(d, 0);
    if (c.degrees.size() != d) throw std::invalid_argument("arity " + std::to_string(n) + ": one degree per basis element");
    if (c.differential.rows() == 0 && c.differential.cols() == 0) c.differential = SparseMatrix(d, d);
    if (c.differential.rows() != d || c.differential.cols() != d)
      throw std::invalid_argument("arity " + std::to_string(n) + ": differential has the wrong shape");
    if (c.action == ActionKind::regular) {
      std::size_t fact = 1;
      for (std::size_t j = 2; j <= n; ++j) fact *= j;
      if (d % fact != 0 || d == 0)
        throw std::invalid_argument("arity " + std::to_string(n) + ": regular action needs n! basis elements");
      if (d != fact) throw std::invalid_argument("arity " + std::to_string(n) + ": regular action supports one orbit");
      for (const auto& p : all_permutations(n)) words_[k].push_back(p.images());
    }
    if (c.action == ActionKind::explicit_matrices) {
      if (c.transpositions.size() != (n >= 1 ? n - 1 : 0))
        throw std::invalid_argument("arity " + std::to_string(n) + ": need one matrix per adjacent transposition");
      for (const auto& m : c.transpositions)
        if (m.rows() != d || m.cols() != d)
          throw std::invalid_argument("arity " + std::to_string(n) + ": action matrix has the wrong shape");
    }
  }
}

std::size_t Species::dim(std::size_t n) const { return n >= 1 && n <= max_arity() ? components_[n - 1].basis.size() : 0; }

const SpeciesComponent& Species::component(std::size_t n) const {
  if (n < 1 || n > max_arity())
    throw ArityOverflow("arity " + std::to_string(n) + " exceeds max_arity " + std::to_string(max_arity()));
  return components_[n - 1];
}

std::optional<std::size_t> Species::find(std::size_t n, const std::string& name) const {
  const auto& b = component(n).basis;
  auto it = std::find(b.begin(), b.end(), name);
  if (it == b.end()) return std::nullopt;
  return static_cast<std::size_t>(it - b.begin());
}

bool Species::connected() const {
  return max_arity() >= 1 && dim(1) == 1 && components_[0].degrees[0] == 0;
}

LinComb Species::relabel(std::size_t n, std::size_t index, const Permutation& pi) const {
  const auto& c = component(n);
  if (pi.size() != n) throw std::invalid_argument("relabel: permutation size differs from arity");
  switch (c.action) {
    case ActionKind::trivial:
      return {{index, 1}};
    case ActionKind::regular: {
      std::vector<std::size_t> word = words_[n - 1].at(index);
      for (auto& letter : word) letter = pi(letter);
      return {{word_rank(word), 1}};
    }
    case ActionKind::explicit_matrices: {
      LinComb v{{index, 1}};
      // pi = s_{k_1} ... s_{k_r}: apply the rightmost factor first
      const auto word = pi.adjacent_word();
      for (auto k = word.rbegin(); k != word.rend(); ++k) {
        LinComb next;
        for (const auto& [j, a] : v)
          for (const auto& [row, b] : c.transpositions[*k].column(j)) add_terms(next, row, a * b);
        v = std::move(next);
      }
      return v;
    }
  }
  return {};
}

LinComb Species::relabel(std::size_t n, const LinComb& x, const Permutation& pi) const {
  if (component(n).action == ActionKind::trivial) return x;
  LinComb out;
  for (const auto& [i, a] : x) add_terms(out, relabel(n, i, pi), a);
  return out;
}

SparseMatrix Species::action_matrix(std::size_t n, const Permutation& pi) const {
  SparseMatrix m(dim(n), dim(n));
  for (std::size_t j = 0; j < dim(n); ++j)
    for (const auto& [i, a] : relabel(n, j, pi)) m.add(i, j, a);
  return m;
}

Report Species::check_action() const {
  Report report("species action");
  for (std::size_t n = 1; n <= max_arity(); ++n) {
    const auto& c = component(n);
    const std::size_t d = dim(n);
    const SparseMatrix id = SparseMatrix::identity(d);
    const std::string where = "arity " + std::to_string(n);
    if (c.action == ActionKind::explicit_matrices) {
      const auto& t = c.transpositions;
      for (std::size_t k = 0; k < t.size(); ++k) {
        if (!(t[k] * t[k] == id)) report.fail("s_k^2 = 1", where + ", k = " + std::to_string(k + 1));
        for (std::size_t l = k + 1; l < t.size(); ++l) {
          if (l == k + 1) {
            const SparseMatrix st = t[k] * t[l];
            if (!(st * st * st == id))
              report.fail("(s_k s_{k+1})^3 = 1", where + ", k = " + std::to_string(k + 1));
          } else if (!(t[k] * t[l] == t[l] * t[k])) {
            report.fail("s_k s_l = s_l s_k", where + ", k = " + std::to_string(k + 1) + ", l = " + std::to_string(l + 1));
          }
        }
      }
    }
    // action preserves the grading and commutes with the internal differential
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const SparseMatrix s = action_matrix(n, Permutation::adjacent(n, k));
      for (const auto& [pos, v] : s.entries())
        if (c.degrees[pos.first] != c.degrees[pos.second]) {
          report.fail("action preserves degree", where + ", basis " + c.basis[pos.second]);
          break;
        }
      if (!(s * c.differential == c.differential * s))
        report.fail("action commutes with the differential", where + ", s_" + std::to_string(k + 1));
    }
  }
  return report;
}

}  // namespace treebar
