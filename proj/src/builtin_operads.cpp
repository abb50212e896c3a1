#include <algorithm>
#include <memory>

#include "treebar/operads.hpp"
#include "treebar/tree_species.hpp"

namespace treebar {

namespace {

SpeciesComponent one_dimensional(std::size_t n) {
  SpeciesComponent c;
  c.basis = {n == 1 ? "id" : "m" + std::to_string(n)};
  return c;
}

Operad commutative(std::string name, std::size_t max_arity, std::size_t cutoff) {
  if (max_arity < 1) throw std::invalid_argument("max_arity must be positive");
  std::vector<SpeciesComponent> comps;
  for (std::size_t n = 1; n <= max_arity; ++n) comps.push_back(one_dimensional(n));
  Operad::Table table;
  for (std::size_t m = 2; m <= max_arity; ++m)
    for (std::size_t n = 2; m + n - 1 <= max_arity; ++n)
      for (std::size_t i = 1; i <= m; ++i)
        table[{m, i, n}] = {m + n - 1 > cutoff ? LinComb{} : LinComb{{0, 1}}};
  return Operad(std::move(name), Species(std::move(comps)), std::move(table));
}

}  // namespace

Operad make_com(std::size_t max_arity) { return commutative("com", max_arity, max_arity); }

Operad make_nilpotent(std::size_t max_arity, std::size_t cutoff) {
  return commutative("nilpotent:" + std::to_string(cutoff), max_arity, cutoff);
}

Operad make_ass(std::size_t max_arity) {
  if (max_arity < 1) throw std::invalid_argument("max_arity must be positive");
  std::vector<SpeciesComponent> comps;
  std::vector<std::vector<Permutation>> words(max_arity + 1);
  for (std::size_t n = 1; n <= max_arity; ++n) {
    SpeciesComponent c;
    c.basis = word_names(n);
    c.action = ActionKind::regular;
    comps.push_back(std::move(c));
    words[n] = all_permutations(n);
  }
  Operad::Table table;
  for (std::size_t m = 2; m <= max_arity; ++m)
    for (std::size_t n = 2; m + n - 1 <= max_arity; ++n)
      for (std::size_t i = 1; i <= m; ++i) {
        std::vector<LinComb> entries;
        for (const auto& x : words[m])
          for (const auto& y : words[n]) {
            // substitute the word of y for the letter i-1 of x
            std::vector<std::size_t> w;
            for (std::size_t l : x.images()) {
              if (l + 1 < i) w.push_back(l);
              else if (l + 1 > i) w.push_back(l + n - 1);
              else
                for (std::size_t b : y.images()) w.push_back(i - 1 + b);
            }
            entries.push_back({{word_rank(w), 1}});
          }
        table[{m, i, n}] = std::move(entries);
      }
  return Operad("ass", Species(std::move(comps)), std::move(table));
}

Species binary_generator() {
  SpeciesComponent unit_part;  // generators live in arity >= 2 only
  SpeciesComponent binary;
  binary.basis = {"mu"};
  return Species({unit_part, binary});
}

Operad make_free(const Species& generators, std::size_t max_arity, std::string name) {
  if (max_arity < 1) throw std::invalid_argument("max_arity must be positive");
  if (generators.dim(1) != 0) throw std::invalid_argument("free operad: generators in arity 1 break connectedness");
  for (std::size_t n = 1; n <= generators.max_arity(); ++n)
    if (!generators.component(n).differential.is_zero())
      throw std::invalid_argument("free operad: generators with internal differential are not supported");

  struct Element {
    Tree tree;
    Labeling labels;
  };
  std::vector<std::vector<Element>> elements(max_arity + 1);
  std::vector<std::map<std::pair<std::vector<Mask>, Labeling>, std::size_t>> lookup(max_arity + 1);
  std::vector<SpeciesComponent> comps;
  comps.push_back(one_dimensional(1));
  for (std::size_t n = 2; n <= max_arity; ++n) {
    auto labels = std::make_shared<const LabelSet>(LabelSet::range(n));
    SpeciesComponent c;
    for (const Tree& t : enumerate_trees(labels)) {
      bool fits = true;
      for (Mask v : t.vertices()) fits = fits && t.inputs(v).size() <= generators.max_arity();
      if (!fits) continue;
      const TreeBasis basis(generators, t);
      for (std::size_t j = 0; j < basis.size(); ++j) {
        Labeling x = basis.labeling(j);
        lookup[n][{t.edges(), x}] = c.basis.size();
        c.basis.push_back(t.to_string() + ":" + basis.name(x));
        c.degrees.push_back(basis.degree(x));
        elements[n].push_back({t, std::move(x)});
      }
    }
    c.action = ActionKind::explicit_matrices;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      SparseMatrix s(c.basis.size(), c.basis.size());
      const Permutation swap = Permutation::adjacent(n, k);
      for (std::size_t j = 0; j < elements[n].size(); ++j) {
        const auto& e = elements[n][j];
        const Tree image = relabel(e.tree, swap);
        for (const auto& [y, a] : relabel_labeling(generators, e.tree, e.labels, swap))
          s.add(lookup[n].at({image.edges(), y}), j, a);
      }
      c.transpositions.push_back(std::move(s));
    }
    comps.push_back(std::move(c));
  }

  Operad::Table table;
  for (std::size_t m = 2; m <= max_arity; ++m)
    for (std::size_t n = 2; m + n - 1 <= max_arity; ++n) {
      const std::size_t r = m + n - 1;
      auto labels = std::make_shared<const LabelSet>(LabelSet::range(r));
      for (std::size_t i = 1; i <= m; ++i) {
        const Mask block = (bit(n) - 1) << (i - 1);
        auto graft = [&](Mask c) {
          Mask out = 0;
          for (; c; c &= c - 1) {
            const std::size_t a = static_cast<std::size_t>(lowest(c));
            if (a + 1 < i) out |= bit(a);
            else if (a + 1 > i) out |= bit(a + n - 1);
            else out |= block;
          }
          return out;
        };
        std::vector<LinComb> entries;
        for (const auto& x : elements[m])
          for (const auto& y : elements[n]) {
            std::vector<Mask> clusters{block};
            for (Mask c : x.tree.edges()) clusters.push_back(graft(c));
            for (Mask c : y.tree.edges()) clusters.push_back(c << (i - 1));
            const Tree u(labels, clusters);
            Labeling z(u.vertices().size());
            const auto xv = x.tree.vertices(), yv = y.tree.vertices();
            for (std::size_t k = 0; k < xv.size(); ++k) z[u.vertex_index(graft(xv[k]))] = x.labels[k];
            for (std::size_t k = 0; k < yv.size(); ++k) z[u.vertex_index(yv[k] << (i - 1))] = y.labels[k];
            entries.push_back({{lookup[r].at({u.edges(), z}), 1}});
          }
        table[{m, i, n}] = std::move(entries);
      }
    }
  return Operad(std::move(name), Species(std::move(comps)), std::move(table));
}

bool is_builtin_operad(const std::string& name) {
  return name == "com" || name == "ass" || name == "free-binary" || name.rfind("nilpotent", 0) == 0;
}

Operad builtin_operad(const std::string& name, std::size_t max_arity) {
  if (name == "com") return make_com(max_arity);
  if (name == "ass") return make_ass(max_arity);
  if (name == "free-binary") return make_free(binary_generator(), max_arity, "free-binary");
  if (name == "nilpotent") return make_nilpotent(max_arity, 3);
  if (name.rfind("nilpotent:", 0) == 0) return make_nilpotent(max_arity, std::stoul(name.substr(10)));
  throw std::invalid_argument("unknown builtin operad '" + name + "'");
}

}  // namespace treebar
