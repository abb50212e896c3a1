#include "treebar/levelbar.hpp"

#include <algorithm>

namespace treebar {

int LevelKey::level_count() const {
  return levels.empty() ? 0 : *std::max_element(levels.begin(), levels.end()) + 1;
}

void validate_levels(const Tree& t, const std::vector<int>& levels) {
  const auto verts = t.vertices();
  if (levels.size() != verts.size()) throw std::invalid_argument("one level per vertex is required");
  if (verts.empty()) return;
  if (levels[0] != 0) throw std::invalid_argument("the root sits at level 0");
  const int n = *std::max_element(levels.begin(), levels.end()) + 1;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (std::size_t k = 0; k < verts.size(); ++k) {
    if (levels[k] < 0) throw std::invalid_argument("negative level");
    used[static_cast<std::size_t>(levels[k])] = true;
    if (k > 0 && levels[k] <= levels[t.vertex_index(t.parent(verts[k]))])
      throw std::invalid_argument("levels must increase towards the leaves");
  }
  if (std::find(used.begin(), used.end(), false) != used.end())
    throw std::invalid_argument("every level must carry a vertex");
}

std::vector<std::vector<int>> level_functions(const Tree& t, int n) {
  std::vector<std::vector<int>> out;
  const auto verts = t.vertices();
  if (verts.empty() || n < 1) return out;
  // parents before children
  std::vector<std::size_t> order(verts.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return popcount(verts[a]) > popcount(verts[b]); });
  std::vector<int> levels(verts.size(), 0);
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == order.size()) {
      std::vector<bool> used(static_cast<std::size_t>(n), false);
      for (int l : levels) used[static_cast<std::size_t>(l)] = true;
      if (std::find(used.begin(), used.end(), false) == used.end()) out.push_back(levels);
      return;
    }
    const std::size_t k = order[pos];
    if (k == 0) {
      levels[0] = 0;
      self(self, pos + 1);
      return;
    }
    const int above = levels[t.vertex_index(t.parent(verts[k]))];
    for (int l = above + 1; l < n; ++l) {
      levels[k] = l;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::string level_key_name(const Species& s, const LevelKey& k) {
  const auto verts = k.tree.vertices();
  const LabelSet& labels = k.tree.labels();
  auto vname = [&](std::size_t v) { return v == 0 ? std::string("root") : labels.subset_string(verts[v]); };
  std::string lv = "levels:{", lb = "labels:{";
  for (std::size_t v = 0; v < verts.size(); ++v) {
    lv += (v ? "," : "") + vname(v) + "->" + std::to_string(k.levels[v]);
    lb += (v ? "," : "") + vname(v) + "->" + s.name(k.tree.inputs(verts[v]).size(), k.label[v]);
  }
  return k.tree.to_string() + " @ " + lv + "} " + lb + "}";
}

Chain<LevelKey> merge_levels(const Operad& p, const LevelKey& k, int i) {
  const int n = k.level_count();
  if (i < 1 || i >= n) throw std::out_of_range("merge_levels needs 1 <= i <= n-1");
  const auto verts = k.tree.vertices();
  // edges from level i straight into level i-1; vertices crossing through units only move down
  EdgeSet joined;
  for (std::size_t v = 1; v < verts.size(); ++v)
    if (k.levels[v] == i && k.levels[k.tree.vertex_index(k.tree.parent(verts[v]))] == i - 1) joined.push_back(verts[v]);
  const Tree target = contract(k.tree, joined);
  std::vector<int> levels;
  for (Mask v : target.vertices()) {
    const int l = k.levels[k.tree.vertex_index(v)];
    levels.push_back(l >= i ? l - 1 : l);
  }
  Chain<LevelKey> out;
  for (const auto& [y, c] : contract_basis(p, k.tree, joined, k.label)) out.push_back({{target, y, levels}, c});
  return out;
}

LevelBar build_levelbar(const LabelSetPtr& labels, const Operad& p, int max_levels) {
  if (labels->size() < 2) throw std::invalid_argument("N°(I, P, I) needs |I| >= 2");
  std::map<int, std::vector<LevelKey>> keys;
  const int top = max_levels > 0 ? max_levels : static_cast<int>(labels->size()) - 1;
  for (int n = 1; n <= top; ++n) keys[n];
  for (const Tree& t : enumerate_trees(labels)) {
    const TreeBasis basis(p.species(), t);
    const int vcount = static_cast<int>(t.vertices().size());
    for (int n = 1; n <= std::min(top, vcount); ++n)
      for (const auto& lv : level_functions(t, n))
        for (std::size_t j = 0; j < basis.size(); ++j) keys[n].push_back({t, basis.labeling(j), lv});
  }
  const Species& s = p.species();
  return assemble_complex<LevelKey>(
      std::move(keys), [&](const LevelKey& k) { return level_key_name(s, k); },
      [&](int n, const LevelKey& k) {
        // d_0 and d_n meet the augmentation P -> I on a vertex of arity >= 2: zero
        Chain<LevelKey> out;
        for (int i = 1; i < n; ++i)
          for (auto& [key, c] : merge_levels(p, k, i)) out.emplace_back(std::move(key), i % 2 ? -c : c);
        return out;
      });
}

LevelEdgeData level_edge_sets(const Tree& t, const std::vector<int>& levels, int level_count) {
  LevelEdgeData out;
  out.n.resize(level_count > 0 ? static_cast<std::size_t>(level_count - 1) : 0);
  for (Mask e : t.edges()) {
    const int s = levels[t.vertex_index(e)];
    const int tt = levels[t.vertex_index(t.parent(e))];
    out.span[e] = {s, tt};
    for (int i = tt + 1; i <= s; ++i) out.n.at(static_cast<std::size_t>(i - 1)).push_back(e);
  }
  return out;
}

LevelEdgeData level_edge_sets(const LevelKey& k) { return level_edge_sets(k.tree, k.levels, k.level_count()); }

std::vector<std::pair<Blocks, int>> psi_terms(const LevelEdgeData& data, bool normalize) {
  std::vector<std::pair<Blocks, int>> out;
  const std::size_t n = data.n.size();
  for (const auto& sigma : all_permutations(n)) {
    Blocks b;
    EdgeSet seen;
    bool empty_block = false;
    for (std::size_t i = 0; i < n; ++i) {
      EdgeSet block = set_minus(data.n[sigma(i)], seen);
      seen = set_union(seen, block);
      empty_block = empty_block || block.empty();
      b.push_back(canonical(std::move(block)));
    }
    if (normalize && empty_block) continue;
    out.emplace_back(std::move(b), sigma.sign());
  }
  if (normalize) {
    std::map<Blocks, int> collected;
    for (const auto& [b, s] : out) collected[b] += s;
    std::vector<std::pair<Blocks, int>> kept;
    for (const auto& [b, s] : out)
      if (auto it = collected.find(b); it != collected.end()) {
        if (it->second != 0) kept.emplace_back(b, it->second);
        collected.erase(it);
      }
    out = std::move(kept);
  }
  return out;
}

ChainMap phi(const OperadKoszul& k, const LevelBar& level) {
  return assemble_map<KoszulKey, LevelKey>(k, level, 1, [](int, const KoszulKey& key) {
    Chain<LevelKey> out;
    const auto& edges = key.tree.edges();
    for (const auto& ext : linear_extensions(key.tree)) {
      // the source of e_i (the vertex named by e_i) goes to level sigma(e_i)
      std::vector<int> levels(edges.size() + 1, 0);
      for (std::size_t i = 0; i < edges.size(); ++i) levels[i + 1] = static_cast<int>(ext.position[i]);
      out.push_back({{key.tree, key.label, std::move(levels)}, ext.sign});
    }
    return out;
  });
}

ChainMap psi_bar(const LevelBar& level, const OperadBar& n) {
  return assemble_map<LevelKey, BarKey>(level, n, -1, [](int, const LevelKey& key) {
    Chain<BarKey> out;
    for (auto& [blocks, sign] : psi_terms(level_edge_sets(key), true))
      out.push_back({{key.tree, std::move(blocks), key.label}, sign});
    return out;
  });
}

FactorizationResult verify_factorization(const LabelSetPtr& labels, const Operad& p, const Field& field) {
  FactorizationResult out;
  const OperadKoszul k = build_K_operad(labels, p);
  const OperadBar n = build_N_operad(labels, p);
  const LevelBar level = build_levelbar(labels, p);
  const ChainMap kap = kappa(k, n);
  const ChainMap ph = phi(k, level);
  const ChainMap ps = psi_bar(level, n);

  const std::pair<const ChainMap*, const char*> maps[] = {{&kap, "kappa-bar"}, {&ph, "Phi"}, {&ps, "psi-bar"}};
  bool* chain[] = {&out.kappa_chain, &out.phi_chain, &out.psi_chain};
  bool* qi[] = {&out.kappa_qi, &out.phi_qi, &out.psi_qi};
  for (std::size_t m = 0; m < 3; ++m) {
    const Report r = verify_chain_map(*maps[m].first);
    *chain[m] = r.passed();
    for (const auto& w : r.failures()) out.report.fail(std::string(maps[m].second) + ": " + w.identity, w.detail);
    const QuasiIsoResult q = is_quasi_iso(*maps[m].first, field);
    *qi[m] = q.quasi_iso;
    if (r.passed())
      for (const auto& w : q.report.failures()) out.report.fail(std::string(maps[m].second) + ": " + w.identity, w.detail);
  }

  const ChainMap composite = compose(ps, ph);
  for (int d : k.complex->degrees()) {
    const SparseMatrix lhs = composite.component(d), rhs = kap.component(d);
    out.degree_ok[d] = lhs == rhs;
    if (lhs == rhs) continue;
    const SparseMatrix diff = lhs - rhs;
    const auto& [pos, v] = *diff.entries().begin();
    out.report.fail("psi-bar Phi = kappa-bar in degree " + std::to_string(d),
                    "discrepancy " + to_string(v) + " at " + n.complex->basis(d)[pos.first] + " for " +
                        k.complex->basis(d)[pos.second]);
  }
  return out;
}

}  // namespace treebar
