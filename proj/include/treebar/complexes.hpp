#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "treebar/report.hpp"
#include "treebar/scalar.hpp"
#include "treebar/sparse.hpp"

namespace treebar {

/// Chain complex with an ordered basis in each degree and exact differentials
/// d_n : C_n -> C_{n-1}. Degrees form the contiguous range [min_degree, max_degree].
class BasedChainComplex {
 public:
  BasedChainComplex() = default;
  /// differentials[k] is d_{min_degree + k}; its row count must match the
  /// dimension one degree lower (0 below the range).
  BasedChainComplex(int min_degree, std::vector<std::vector<std::string>> bases,
                    std::vector<SparseMatrix> differentials);

  bool empty() const { return bases_.empty(); }
  int min_degree() const { return min_degree_; }
  int max_degree() const { return min_degree_ + static_cast<int>(bases_.size()) - 1; }
  std::vector<int> degrees() const;

  std::size_t dim(int n) const;
  std::size_t total_dim() const;
  const std::vector<std::string>& basis(int n) const;
  /// d_n as a dim(n-1) x dim(n) matrix; the zero matrix outside the range.
  SparseMatrix differential(int n) const;

 private:
  bool in_range(int n) const { return !empty() && n >= min_degree_ && n <= max_degree(); }

  int min_degree_ = 0;
  std::vector<std::vector<std::string>> bases_;
  std::vector<SparseMatrix> differentials_;
};

using Betti = std::map<int, std::size_t>;

/// Thrown by betti() when the input is not a complex.
class NotAComplex : public std::domain_error {
 public:
  NotAComplex(const std::string& what, Report report) : std::domain_error(what), report_{std::move(report)} {}
  const Report& report() const { return report_; }

 private:
  Report report_;
};

Report verify_d_squared(const BasedChainComplex& c);

/// betti_n = dim C_n - rank d_n - rank d_{n+1} for every degree of the range.
Betti betti(const BasedChainComplex& c, const Field& field);

/// Degrees with nonzero homology only.
Betti nonzero(const Betti& b);
long euler_characteristic(const BasedChainComplex& c);
long euler_characteristic(const Betti& b);

/// f_n : C_n -> D_{n+shift}, satisfying f_{n-1} d = d f_n.
class ChainMap {
 public:
  ChainMap(std::shared_ptr<const BasedChainComplex> source, std::shared_ptr<const BasedChainComplex> target,
           int shift);

  const BasedChainComplex& source() const { return *source_; }
  const BasedChainComplex& target() const { return *target_; }
  const std::shared_ptr<const BasedChainComplex>& source_ptr() const { return source_; }
  const std::shared_ptr<const BasedChainComplex>& target_ptr() const { return target_; }
  int shift() const { return shift_; }

  /// Component on source degree n, shaped dim D_{n+shift} x dim C_n.
  SparseMatrix component(int n) const;
  void set_component(int n, SparseMatrix m);

 private:
  std::shared_ptr<const BasedChainComplex> source_;
  std::shared_ptr<const BasedChainComplex> target_;
  int shift_;
  std::map<int, SparseMatrix> components_;
};

ChainMap identity_map(std::shared_ptr<const BasedChainComplex> c);
ChainMap zero_map(std::shared_ptr<const BasedChainComplex> source, std::shared_ptr<const BasedChainComplex> target,
                  int shift = 0);
/// g o f; requires f.target() and g.source() to be the same object.
ChainMap compose(const ChainMap& g, const ChainMap& f);

Report verify_chain_map(const ChainMap& f);

/// cone_n = D_n (+) C_{n-1-shift}, differential [[d_D, f], [0, -d_C]].
BasedChainComplex mapping_cone(const ChainMap& f);

struct QuasiIsoResult {
  bool quasi_iso = false;
  Betti cone_betti;
  Report report;
};

/// Cone criterion; refuses (report failure) when f is not a chain map.
QuasiIsoResult is_quasi_iso(const ChainMap& f, const Field& field);

nlohmann::json to_json(const BasedChainComplex& c);
/// One line per nonzero entry: "degree row col value".
std::string to_triplets(const BasedChainComplex& c);

/// A complex together with the structured keys behind its basis.
template <class Key>
struct IndexedComplex {
  std::shared_ptr<const BasedChainComplex> complex;
  std::map<int, std::vector<Key>> keys;
  std::map<int, std::map<Key, std::size_t>> index;

  std::optional<std::size_t> find(int n, const Key& key) const {
    auto d = index.find(n);
    if (d == index.end()) return std::nullopt;
    auto it = d->second.find(key);
    if (it == d->second.end()) return std::nullopt;
    return it->second;
  }
  std::size_t at(int n, const Key& key) const {
    auto i = find(n, key);
    if (!i) throw std::logic_error("basis key missing from complex in degree " + std::to_string(n));
    return *i;
  }
};

template <class Key>
using Chain = std::vector<std::pair<Key, Rational>>;

/// Builds a complex from per-degree keys and a boundary function returning
/// a chain of keys one degree lower.
template <class Key>
IndexedComplex<Key> assemble_complex(std::map<int, std::vector<Key>> keys,
                                     const std::function<std::string(const Key&)>& name,
                                     const std::function<Chain<Key>(int, const Key&)>& boundary) {
  IndexedComplex<Key> out;
  if (keys.empty()) {
    out.complex = std::make_shared<BasedChainComplex>();
    return out;
  }
  const int lo = keys.begin()->first;
  const int hi = keys.rbegin()->first;
  for (int n = lo; n <= hi; ++n) keys[n];
  for (auto& [n, ks] : keys)
    for (std::size_t i = 0; i < ks.size(); ++i)
      if (!out.index[n].emplace(ks[i], i).second) throw std::logic_error("duplicate basis key");
  std::vector<std::vector<std::string>> bases;
  std::vector<SparseMatrix> diffs;
  for (int n = lo; n <= hi; ++n) {
    const auto& ks = keys[n];
    std::vector<std::string> names;
    names.reserve(ks.size());
    for (const auto& k : ks) names.push_back(name(k));
    bases.push_back(std::move(names));
    const std::size_t below = n > lo ? keys[n - 1].size() : 0;
    SparseMatrix d(below, ks.size());
    for (std::size_t j = 0; j < ks.size(); ++j)
      for (const auto& [k, c] : boundary(n, ks[j])) d.add(out.at(n - 1, k), j, c);
    diffs.push_back(std::move(d));
  }
  out.keys = std::move(keys);
  out.complex = std::make_shared<BasedChainComplex>(lo, std::move(bases), std::move(diffs));
  return out;
}

/// Builds a chain map from a per-basis-element image function.
template <class SrcKey, class TgtKey>
ChainMap assemble_map(const IndexedComplex<SrcKey>& source, const IndexedComplex<TgtKey>& target, int shift,
                      const std::function<Chain<TgtKey>(int, const SrcKey&)>& image) {
  ChainMap f(source.complex, target.complex, shift);
  for (const auto& [n, ks] : source.keys) {
    SparseMatrix m(target.complex->dim(n + shift), ks.size());
    for (std::size_t j = 0; j < ks.size(); ++j)
      for (const auto& [k, c] : image(n, ks[j])) m.add(target.at(n + shift, k), j, c);
    f.set_component(n, std::move(m));
  }
  return f;
}

}  // namespace treebar
