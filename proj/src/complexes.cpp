#include "treebar/complexes.hpp"

#include <sstream>

namespace treebar {

BasedChainComplex::BasedChainComplex(int min_degree, std::vector<std::vector<std::string>> bases,
                                     std::vector<SparseMatrix> differentials)
    : min_degree_{min_degree}, bases_{std::move(bases)}, differentials_{std::move(differentials)} {
  if (bases_.size() != differentials_.size())
    throw std::invalid_argument("one differential per degree is required");
  for (std::size_t k = 0; k < bases_.size(); ++k) {
    const auto& d = differentials_[k];
    const std::size_t below = k == 0 ? 0 : bases_[k - 1].size();
    if (d.cols() != bases_[k].size() || d.rows() != below)
      throw std::invalid_argument("differential in degree " + std::to_string(min_degree_ + static_cast<int>(k)) +
                                  " has the wrong shape");
  }
}

std::vector<int> BasedChainComplex::degrees() const {
  std::vector<int> out;
  for (int n = min_degree_; !empty() && n <= max_degree(); ++n) out.push_back(n);
  return out;
}

std::size_t BasedChainComplex::dim(int n) const {
  return in_range(n) ? bases_[static_cast<std::size_t>(n - min_degree_)].size() : 0;
}

std::size_t BasedChainComplex::total_dim() const {
  std::size_t total = 0;
  for (const auto& b : bases_) total += b.size();
  return total;
}

const std::vector<std::string>& BasedChainComplex::basis(int n) const {
  static const std::vector<std::string> none;
  return in_range(n) ? bases_[static_cast<std::size_t>(n - min_degree_)] : none;
}

SparseMatrix BasedChainComplex::differential(int n) const {
  if (in_range(n)) return differentials_[static_cast<std::size_t>(n - min_degree_)];
  return SparseMatrix(dim(n - 1), dim(n));
}

Report verify_d_squared(const BasedChainComplex& c) {
  Report report("d^2 = 0");
  for (int n : c.degrees()) {
    const SparseMatrix dd = c.differential(n - 1) * c.differential(n);
    if (dd.is_zero()) continue;
    const auto& [pos, value] = *dd.entries().begin();
    report.fail("d_" + std::to_string(n - 1) + " d_" + std::to_string(n) + " = 0",
                "coefficient " + to_string(value) + " of " + c.basis(n - 2)[pos.first] + " in d^2(" +
                    c.basis(n)[pos.second] + ")");
  }
  return report;
}

Betti betti(const BasedChainComplex& c, const Field& field) {
  Report check = verify_d_squared(c);
  if (!check.passed()) throw NotAComplex("d^2 != 0: " + check.failures().front().detail, check);
  Betti out;
  std::map<int, std::size_t> ranks;
  for (int n : c.degrees()) ranks[n] = rank(c.differential(n), field);
  for (int n : c.degrees()) {
    const std::size_t above = ranks.count(n + 1) ? ranks[n + 1] : 0;
    out[n] = c.dim(n) - ranks[n] - above;
  }
  return out;
}

Betti nonzero(const Betti& b) {
  Betti out;
  for (const auto& [n, v] : b)
    if (v != 0) out[n] = v;
  return out;
}

long euler_characteristic(const BasedChainComplex& c) {
  long chi = 0;
  for (int n : c.degrees()) chi += (n % 2 == 0 ? 1 : -1) * static_cast<long>(c.dim(n));
  return chi;
}

long euler_characteristic(const Betti& b) {
  long chi = 0;
  for (const auto& [n, v] : b) chi += (n % 2 == 0 ? 1 : -1) * static_cast<long>(v);
  return chi;
}

ChainMap::ChainMap(std::shared_ptr<const BasedChainComplex> source, std::shared_ptr<const BasedChainComplex> target,
                   int shift)
    : source_{std::move(source)}, target_{std::move(target)}, shift_{shift} {}

SparseMatrix ChainMap::component(int n) const {
  auto it = components_.find(n);
  if (it != components_.end()) return it->second;
  return SparseMatrix(target_->dim(n + shift_), source_->dim(n));
}

void ChainMap::set_component(int n, SparseMatrix m) {
  if (m.rows() != target_->dim(n + shift_) || m.cols() != source_->dim(n))
    throw std::invalid_argument("chain map component in degree " + std::to_string(n) + " has the wrong shape");
  components_[n] = std::move(m);
}

ChainMap identity_map(std::shared_ptr<const BasedChainComplex> c) {
  ChainMap f(c, c, 0);
  for (int n : c->degrees()) f.set_component(n, SparseMatrix::identity(c->dim(n)));
  return f;
}

ChainMap zero_map(std::shared_ptr<const BasedChainComplex> source, std::shared_ptr<const BasedChainComplex> target,
                  int shift) {
  return ChainMap(std::move(source), std::move(target), shift);
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  if (f.target_ptr() != g.source_ptr()) throw std::invalid_argument("compose: complexes do not match");
  ChainMap out(f.source_ptr(), g.target_ptr(), f.shift() + g.shift());
  for (int n : f.source().degrees()) out.set_component(n, g.component(n + f.shift()) * f.component(n));
  return out;
}

Report verify_chain_map(const ChainMap& f) {
  Report report("chain map");
  std::vector<int> degrees = f.source().degrees();
  if (!degrees.empty()) degrees.push_back(degrees.back() + 1);
  for (int n : degrees) {
    // f_{n-1} d_n = d_{n+shift} f_n
    const SparseMatrix lhs = f.component(n - 1) * f.source().differential(n);
    const SparseMatrix rhs = f.target().differential(n + f.shift()) * f.component(n);
    if (lhs == rhs) continue;
    const SparseMatrix diff = lhs - rhs;
    const auto& [pos, value] = *diff.entries().begin();
    report.fail("f d = d f in degree " + std::to_string(n),
                "discrepancy " + to_string(value) + " at " + f.target().basis(n - 1 + f.shift())[pos.first] +
                    " for source " + f.source().basis(n)[pos.second]);
  }
  return report;
}

BasedChainComplex mapping_cone(const ChainMap& f) {
  const BasedChainComplex& src = f.source();
  const BasedChainComplex& tgt = f.target();
  // source degree m sits in cone degree m + shift + 1
  const int off = f.shift() + 1;
  int lo = 0, hi = -1;
  bool any = false;
  auto widen = [&](const BasedChainComplex& c, int o) {
    if (c.empty()) return;
    lo = any ? std::min(lo, c.min_degree() + o) : c.min_degree() + o;
    hi = any ? std::max(hi, c.max_degree() + o) : c.max_degree() + o;
    any = true;
  };
  widen(tgt, 0);
  widen(src, off);
  if (!any) return {};
  std::vector<std::vector<std::string>> bases;
  std::vector<SparseMatrix> diffs;
  for (int n = lo; n <= hi; ++n) {
    std::vector<std::string> b;
    for (const auto& k : tgt.basis(n)) b.push_back("T:" + k);
    for (const auto& k : src.basis(n - off)) b.push_back("S:" + k);
    const std::size_t t_n = tgt.dim(n), t_below = tgt.dim(n - 1);
    const std::size_t rows = n > lo ? t_below + src.dim(n - 1 - off) : 0;
    SparseMatrix d(rows, b.size());
    if (n > lo) {
      const SparseMatrix dt = tgt.differential(n), fn = f.component(n - off), ds = src.differential(n - off);
      for (const auto& [pos, v] : dt.entries()) d.add(pos.first, pos.second, v);
      for (const auto& [pos, v] : fn.entries()) d.add(pos.first, t_n + pos.second, v);
      for (const auto& [pos, v] : ds.entries()) d.add(t_below + pos.first, t_n + pos.second, -v);
    }
    bases.push_back(std::move(b));
    diffs.push_back(std::move(d));
  }
  return BasedChainComplex(lo, std::move(bases), std::move(diffs));
}

QuasiIsoResult is_quasi_iso(const ChainMap& f, const Field& field) {
  QuasiIsoResult out;
  out.report = verify_chain_map(f);
  if (!out.report.passed()) return out;
  const BasedChainComplex cone = mapping_cone(f);
  try {
    out.cone_betti = nonzero(betti(cone, field));
  } catch (const NotAComplex& e) {
    out.report.absorb(e.report());
    return out;
  }
  out.quasi_iso = out.cone_betti.empty();
  if (!out.quasi_iso) {
    const auto& [n, v] = *out.cone_betti.begin();
    out.report.fail("cone acyclic", "cone homology of dimension " + std::to_string(v) + " in degree " +
                                        std::to_string(n));
  }
  return out;
}

nlohmann::json to_json(const BasedChainComplex& c) {
  nlohmann::json degrees = nlohmann::json::array(), dims = nlohmann::json::array(),
                 diffs = nlohmann::json::array();
  for (int n : c.degrees()) {
    degrees.push_back(n);
    dims.push_back(c.dim(n));
    nlohmann::json entries = nlohmann::json::array();
    for (const SparseMatrix d = c.differential(n); const auto& [pos, v] : d.entries())
      entries.push_back(nlohmann::json::array({pos.first, pos.second, to_string(v)}));
    diffs.push_back({{"degree", n}, {"entries", std::move(entries)}});
  }
  return {{"degrees", degrees}, {"dims", dims}, {"differentials", diffs}};
}

std::string to_triplets(const BasedChainComplex& c) {
  std::ostringstream out;
  for (int n : c.degrees()) out << "# degree " << n << " dim " << c.dim(n) << '\n';
  for (int n : c.degrees())
    for (const SparseMatrix d = c.differential(n); const auto& [pos, v] : d.entries())
      out << n << ' ' << pos.first << ' ' << pos.second << ' ' << to_string(v) << '\n';
  return out.str();
}

}  // namespace treebar
