#include "treebar/tree_species.hpp"

#include <algorithm>

namespace treebar {

TreeBasis::TreeBasis(const Species& species, Tree tree) : species_{&species}, tree_{std::move(tree)} {
  for (Mask v : tree_.vertices()) {
    const std::size_t k = tree_.inputs(v).size();
    if (k > species.max_arity())
      throw ArityOverflow("vertex " + tree_.labels().subset_string(v) + " of " + tree_.to_string() + " has arity " +
                          std::to_string(k) + " above max_arity " + std::to_string(species.max_arity()));
    arities_.push_back(k);
    radix_.push_back(species.dim(k));
    size_ *= species.dim(k);
  }
}

std::size_t TreeBasis::index(const Labeling& x) const {
  std::size_t idx = 0;
  for (std::size_t v = 0; v < radix_.size(); ++v) idx = idx * radix_[v] + x.at(v);
  return idx;
}

Labeling TreeBasis::labeling(std::size_t index) const {
  Labeling x(radix_.size());
  for (std::size_t v = radix_.size(); v-- > 0;) {
    x[v] = index % radix_[v];
    index /= radix_[v];
  }
  return x;
}

std::string TreeBasis::name(const Labeling& x) const {
  if (x.empty()) return "1";
  std::string s;
  for (std::size_t v = 0; v < x.size(); ++v) s += (v ? "," : "") + species_->name(arities_[v], x[v]);
  return s;
}

int TreeBasis::degree(const Labeling& x) const {
  int d = 0;
  for (std::size_t v = 0; v < x.size(); ++v) d += species_->degree(arities_[v], x[v]);
  return d;
}

namespace {

// Expands a per-vertex choice of combinations into labelings.
LabelingComb tensor(const std::vector<LinComb>& factors) {
  LabelingComb out{{Labeling{}, 1}};
  for (const auto& f : factors) {
    LabelingComb next;
    for (const auto& [x, a] : out)
      for (const auto& [i, b] : f) {
        Labeling y = x;
        y.push_back(i);
        next[y] += a * b;
      }
    out = std::move(next);
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

}  // namespace

LabelingComb relabel_labeling(const Species& m, const Tree& t, const Labeling& x, const Permutation& pi) {
  const Tree u = relabel(t, pi);
  const auto verts = t.vertices();
  std::vector<LinComb> factors(verts.size());
  for (std::size_t k = 0; k < verts.size(); ++k) {
    const auto in = t.inputs(verts[k]);
    const Mask image = relabel(verts[k], pi);
    const auto image_in = u.inputs(image);
    std::vector<std::size_t> rho(in.size());
    for (std::size_t j = 0; j < in.size(); ++j)
      rho[j] = static_cast<std::size_t>(std::find(image_in.begin(), image_in.end(), relabel(in[j], pi)) - image_in.begin());
    factors[u.vertex_index(image)] = m.relabel(in.size(), x[k], Permutation(rho));
  }
  return tensor(factors);
}

LabelingComb contract_edge(const Operad& p, const Tree& t, Mask edge, const Labeling& x) {
  const Mask v = t.parent(edge);
  const auto in_v = t.inputs(v);
  const auto in_c = t.inputs(edge);
  const std::size_t i = static_cast<std::size_t>(std::find(in_v.begin(), in_v.end(), edge) - in_v.begin());
  const std::size_t m = in_v.size(), n = in_c.size();
  const std::size_t vi = t.vertex_index(v), ci = t.vertex_index(edge);
  const LinComb& z = p.compose(m, x[vi], i + 1, n, x[ci]);

  std::vector<Mask> inserted(in_v.begin(), in_v.begin() + static_cast<std::ptrdiff_t>(i));
  inserted.insert(inserted.end(), in_c.begin(), in_c.end());
  inserted.insert(inserted.end(), in_v.begin() + static_cast<std::ptrdiff_t>(i) + 1, in_v.end());
  std::vector<Mask> sorted = inserted;
  std::sort(sorted.begin(), sorted.end(), [](Mask a, Mask b) { return lowest(a) < lowest(b); });
  std::vector<std::size_t> pi(inserted.size());
  for (std::size_t j = 0; j < inserted.size(); ++j)
    pi[j] = static_cast<std::size_t>(std::find(sorted.begin(), sorted.end(), inserted[j]) - sorted.begin());
  const LinComb merged = p.species().relabel(m + n - 1, z, Permutation(pi));

  LabelingComb out;
  for (const auto& [r, c] : merged) {
    Labeling y = x;
    y[vi] = r;
    y.erase(y.begin() + static_cast<std::ptrdiff_t>(ci));
    out[y] += c;
  }
  return out;
}

LabelingComb contract_sequence(const Operad& p, const Tree& t, const std::vector<Mask>& order, const Labeling& x) {
  LabelingComb current{{x, 1}};
  Tree cur = t;
  for (Mask e : order) {
    if (!cur.has_edge(e)) throw std::domain_error("edge " + t.labels().subset_string(e) + " not in tree " + cur.to_string());
    LabelingComb next;
    for (const auto& [y, a] : current)
      for (const auto& [z, b] : contract_edge(p, cur, e, y)) next[z] += a * b;
    std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
    current = std::move(next);
    cur = contract(cur, {e});
  }
  return current;
}

LabelingComb contract_basis(const Operad& p, const Tree& t, const EdgeSet& e, const Labeling& x) {
  return contract_sequence(p, t, canonical(e), x);
}

TreeVector contract_action(const Operad& p, const Tree& t, const EdgeSet& e, const TreeVector& x) {
  if (!(x.tree == t)) throw std::invalid_argument("contract_action: vector lives on another tree");
  TreeVector out{contract(t, e), {}};
  for (const auto& [y, a] : x.coeffs)
    for (const auto& [z, b] : contract_basis(p, t, e, y)) out.coeffs[z] += a * b;
  std::erase_if(out.coeffs, [](const auto& kv) { return kv.second == 0; });
  return out;
}

SparseMatrix contraction_matrix(const Operad& p, const Tree& t, const EdgeSet& e) {
  const TreeBasis src(p.species(), t);
  const TreeBasis dst(p.species(), contract(t, e));
  SparseMatrix m(dst.size(), src.size());
  for (std::size_t j = 0; j < src.size(); ++j)
    for (const auto& [y, c] : contract_basis(p, t, e, src.labeling(j))) m.add(dst.index(y), j, c);
  return m;
}

}  // namespace treebar
