#include "treebar/barkoszul.hpp"

#include <algorithm>

namespace treebar {

std::vector<Blocks> ordered_partitions(const EdgeSet& e, std::size_t k) {
  std::vector<Blocks> out;
  const std::size_t n = e.size();
  if (k == 0) {
    if (n == 0) out.push_back({});
    return out;
  }
  if (k > n) return out;
  std::vector<std::size_t> f(n, 0);
  while (true) {
    std::vector<std::size_t> used(k, 0);
    for (std::size_t v : f) ++used[v];
    if (std::all_of(used.begin(), used.end(), [](std::size_t u) { return u > 0; })) {
      Blocks b(k);
      for (std::size_t i = 0; i < n; ++i) b[f[i]].push_back(e[i]);
      for (auto& block : b) block = canonical(std::move(block));
      out.push_back(std::move(b));
    }
    std::size_t pos = n;
    while (pos > 0 && f[pos - 1] + 1 == k) f[--pos] = 0;
    if (pos == 0) break;
    ++f[pos - 1];
  }
  return out;
}

std::string blocks_string(const LabelSet& labels, const Blocks& b) {
  std::string s = "(";
  for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + edge_set_string(labels, b[i]);
  return s + ")";
}

namespace {

// Merge of blocks i and i+1 (0-based i).
Blocks merged(const Blocks& b, std::size_t i) {
  Blocks out;
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (j == i + 1) continue;
    out.push_back(j == i ? set_union(b[i], b[i + 1]) : b[j]);
  }
  return out;
}

int alt(std::size_t i) { return i % 2 ? -1 : 1; }

}  // namespace

CategoryBar build_N_category(const Tree& t, const Tree& s) {
  const auto e = hom_set(t, s);
  if (!e) throw std::domain_error("no morphism " + t.to_string() + " -> " + s.to_string());
  std::map<int, std::vector<Blocks>> keys;
  if (e->empty()) keys[0] = {Blocks{}};
  for (std::size_t n = 1; n <= e->size(); ++n) keys[static_cast<int>(n)] = ordered_partitions(*e, n);
  const LabelSet& labels = t.labels();
  return assemble_complex<Blocks>(
      std::move(keys), [&](const Blocks& b) { return blocks_string(labels, b); },
      [](int, const Blocks& b) {
        // the outer faces land in b_s(t/E_1...) or b_t(...) at a nonidentity morphism: zero
        Chain<Blocks> out;
        for (std::size_t i = 1; i < b.size(); ++i) out.emplace_back(merged(b, i - 1), alt(i));
        return out;
      });
}

CategoryKoszul build_K_category(const Tree& t, const Tree& s) {
  const auto e = hom_set(t, s);
  if (!e) throw std::domain_error("no morphism " + t.to_string() + " -> " + s.to_string());
  std::map<int, std::vector<EdgeSet>> keys;
  keys[static_cast<int>(e->size())] = {*e};
  const LabelSet& labels = t.labels();
  return assemble_complex<EdgeSet>(
      std::move(keys), [&](const EdgeSet& w) { return "wedge" + edge_set_string(labels, w); },
      [](int, const EdgeSet&) { return Chain<EdgeSet>{}; });
}

ChainMap kappa_category(const CategoryKoszul& k, const CategoryBar& n) {
  return assemble_map<EdgeSet, Blocks>(k, n, 0, [](int, const EdgeSet& w) {
    Chain<Blocks> out;
    for (const auto& sigma : all_permutations(w.size())) {
      Blocks b;
      for (std::size_t i = 0; i < w.size(); ++i) b.push_back({w[sigma(i)]});
      out.emplace_back(std::move(b), sigma.sign());
    }
    return out;
  });
}

namespace {

std::string tree_key_name(const TreeBasis& basis, const Labeling& x) { return basis.tree().to_string() + " " + basis.name(x); }

}  // namespace

OperadBar build_N_operad(const LabelSetPtr& labels, const Operad& p) {
  if (labels->size() < 2) throw std::invalid_argument("N(b_I, T_I, P) needs |I| >= 2");
  std::map<int, std::vector<BarKey>> keys;
  std::map<std::vector<Mask>, TreeBasis> bases;
  for (const Tree& t : enumerate_trees(labels)) {
    const TreeBasis& basis = bases.emplace(t.edges(), TreeBasis(p.species(), t)).first->second;
    const std::size_t n = t.edge_count();
    for (std::size_t k = (n == 0 ? 0 : 1); k <= n; ++k)
      for (const auto& b : ordered_partitions(t.edges(), k))
        for (std::size_t j = 0; j < basis.size(); ++j) keys[static_cast<int>(k)].push_back({t, b, basis.labeling(j)});
  }
  return assemble_complex<BarKey>(
      std::move(keys),
      [&](const BarKey& k) {
        return tree_key_name(bases.at(k.tree.edges()), k.label) + " " + blocks_string(*labels, k.blocks);
      },
      [&](int, const BarKey& k) {
        Chain<BarKey> out;
        const std::size_t n = k.blocks.size();
        for (std::size_t i = 1; i < n; ++i) out.push_back({{k.tree, merged(k.blocks, i - 1), k.label}, alt(i)});
        if (n >= 1) {
          // d_n pushes E_n into P; d_0 pulls E_1 into b_I and vanishes since E_1 is nonempty
          const Tree target = contract(k.tree, k.blocks.back());
          const Blocks rest(k.blocks.begin(), k.blocks.end() - 1);
          for (const auto& [y, c] : contract_basis(p, k.tree, k.blocks.back(), k.label))
            out.push_back({{target, rest, y}, c * alt(n)});
        }
        return out;
      });
}

OperadKoszul build_K_operad(const LabelSetPtr& labels, const Operad& p) {
  if (labels->size() < 2) throw std::invalid_argument("K(b_I, T_I, P) needs |I| >= 2");
  std::map<int, std::vector<KoszulKey>> keys;
  std::map<std::vector<Mask>, TreeBasis> bases;
  for (const Tree& t : enumerate_trees(labels)) {
    const TreeBasis& basis = bases.emplace(t.edges(), TreeBasis(p.species(), t)).first->second;
    for (std::size_t j = 0; j < basis.size(); ++j)
      keys[static_cast<int>(t.edge_count())].push_back({t, basis.labeling(j)});
  }
  return assemble_complex<KoszulKey>(
      std::move(keys), [&](const KoszulKey& k) { return tree_key_name(bases.at(k.tree.edges()), k.label); },
      [&](int, const KoszulKey& k) {
        Chain<KoszulKey> out;
        const auto& edges = k.tree.edges();
        for (std::size_t i = 0; i < edges.size(); ++i) {
          const Tree target = contract(k.tree, {edges[i]});
          // removing e_i keeps the canonical order of the remaining edges
          EdgeSet rest = edges;
          rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
          if (target.edges() != rest) throw std::logic_error("wedge orientation mismatch after contraction");
          for (const auto& [y, c] : contract_edge(p, k.tree, edges[i], k.label))
            out.push_back({{target, y}, c * alt(i + 1)});
        }
        return out;
      });
}

ChainMap kappa(const OperadKoszul& k, const OperadBar& n) {
  return assemble_map<KoszulKey, BarKey>(k, n, 0, [](int, const KoszulKey& key) {
    Chain<BarKey> out;
    const auto& w = key.tree.edges();
    for (const auto& sigma : all_permutations(w.size())) {
      Blocks b;
      for (std::size_t i = 0; i < w.size(); ++i) b.push_back({w[sigma(i)]});
      out.push_back({{key.tree, std::move(b), key.label}, sigma.sign()});
    }
    return out;
  });
}

namespace {

std::string resolution_name(const LabelSet& labels, const ResolutionKey& k) {
  if (k.augmentation) return "augmentation";
  return edge_set_string(labels, k.h) + " (x) wedge" + edge_set_string(labels, k.g) + " (x) " +
         edge_set_string(labels, k.f);
}

Resolution build_koszul_summand(const Tree& t, const Tree& s, bool with_h, bool augmented) {
  const auto e = hom_set(t, s);
  if (!e) throw std::domain_error("no morphism " + t.to_string() + " -> " + s.to_string());
  std::map<int, std::vector<ResolutionKey>> keys;
  const std::size_t n = e->size();
  // each edge goes to H, G or F; H stays empty against b_s
  std::size_t combos = 1;
  for (std::size_t i = 0; i < n; ++i) combos *= with_h ? 3 : 2;
  for (std::size_t c = 0; c < combos; ++c) {
    ResolutionKey k;
    std::size_t code = c;
    for (Mask m : *e) {
      const std::size_t where = code % (with_h ? 3 : 2);
      code /= with_h ? 3 : 2;
      (where == 0 ? k.g : where == 1 ? k.f : k.h).push_back(m);
    }
    keys[static_cast<int>(k.g.size())].push_back(std::move(k));
  }
  // b_s(t) is k iff E is empty; kT_I(t, s) is always k
  if (augmented && (with_h || n == 0)) keys[-1].push_back(ResolutionKey{{}, {}, {}, true});
  for (auto& [deg, ks] : keys) std::sort(ks.begin(), ks.end());
  const LabelSet& labels = t.labels();
  return assemble_complex<ResolutionKey>(
      std::move(keys), [&](const ResolutionKey& k) { return resolution_name(labels, k); },
      [with_h, augmented, n](int deg, const ResolutionKey& k) {
        Chain<ResolutionKey> out;
        if (k.augmentation) return out;
        if (deg == 0) {
          if (augmented && (with_h || n == 0)) out.push_back({ResolutionKey{{}, {}, {}, true}, 1});
          return out;
        }
        for (std::size_t i = 0; i < k.g.size(); ++i) {
          EdgeSet rest = k.g;
          rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
          if (with_h) out.push_back({ResolutionKey{set_union(k.h, {k.g[i]}), rest, k.f, false}, alt(i)});
          out.push_back({ResolutionKey{k.h, rest, set_union(k.f, {k.g[i]}), false}, alt(i + 1)});
        }
        return out;
      });
}

}  // namespace

Resolution build_K_resolution(const Tree& t, const Tree& s, bool augmented) {
  return build_koszul_summand(t, s, false, augmented);
}

Resolution build_K_bifunctor(const Tree& t, const Tree& s, bool augmented) {
  return build_koszul_summand(t, s, true, augmented);
}

}  // namespace treebar
