#include "treebar/homotopy.hpp"

#include <algorithm>

namespace treebar {

int shuffle_sign(const EdgeSet& f, const EdgeSet& g) {
  // each pair (a in F, b in G) with b before a is one inversion
  int s = 1;
  for (Mask a : f)
    for (Mask b : g)
      if (cluster_less(b, a)) s = -s;
  return s;
}

namespace {

// Splittings E = F u G with |F| = p, F running over p-subsets in index order.
std::vector<std::pair<EdgeSet, EdgeSet>> splittings(const EdgeSet& e, bool proper) {
  std::vector<std::pair<EdgeSet, EdgeSet>> out;
  const std::size_t n = e.size();
  if (proper && n < 2) return out;
  const std::size_t lo = proper ? 1 : 0, hi = proper ? n - 1 : n;
  for (std::size_t p = lo; p <= hi; ++p) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(p), true);
    do {
      EdgeSet f, g;
      for (std::size_t i = 0; i < n; ++i) (pick[i] ? f : g).push_back(e[i]);
      out.emplace_back(std::move(f), std::move(g));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

int parity(std::size_t k) { return k % 2 ? -1 : 1; }

}  // namespace

std::vector<SignedSplit> koszul_cocomposition(const Tree& t, const EdgeSet& e) {
  for (Mask m : e)
    if (!t.has_edge(m)) throw std::domain_error("edge " + t.labels().subset_string(m) + " not in tree");
  const EdgeSet c = canonical(e);
  std::vector<SignedSplit> out{{{}, c, 1}};
  if (!c.empty()) out.push_back({c, {}, 1});
  for (auto& [f, g] : splittings(c, true)) {
    const int s = shuffle_sign(f, g);
    out.push_back({std::move(f), std::move(g), s});
  }
  return out;
}

std::vector<SignedSplit> cobar_generator_differential(const Tree& t, const EdgeSet& e) {
  if (e.empty()) throw std::invalid_argument("cobar generators need a nonempty edge set");
  std::vector<SignedSplit> out;
  for (auto& term : koszul_cocomposition(t, e))
    if (!term.f.empty() && !term.g.empty()) {
      term.sign *= parity(term.f.size());
      out.push_back(std::move(term));
    }
  return out;
}

std::map<std::vector<EdgeSet>, int> cobar_d_squared(const EdgeSet& e, bool plain_sign) {
  auto coeff = [plain_sign](const EdgeSet& f, const EdgeSet& g) {
    return shuffle_sign(f, g) * (plain_sign ? 1 : parity(f.size()));
  };
  std::map<std::vector<EdgeSet>, int> total;
  for (const auto& [f, g] : splittings(canonical(e), true)) {
    const int c = coeff(f, g);
    // d(X_F X_G) = d(X_F) X_G + (-1)^{|X_F|} X_F d(X_G), |X_F| = |F| - 1
    for (const auto& [f1, f2] : splittings(f, true)) total[{f1, f2, g}] += c * coeff(f1, f2);
    for (const auto& [g1, g2] : splittings(g, true)) total[{f, g1, g2}] += c * parity(f.size() - 1) * coeff(g1, g2);
  }
  std::erase_if(total, [](const auto& kv) { return kv.second == 0; });
  return total;
}

std::map<std::vector<EdgeSet>, int> coassociativity_defect(const Tree& t, const EdgeSet& e) {
  std::map<std::vector<EdgeSet>, int> total;
  for (const auto& outer : koszul_cocomposition(t, e)) {
    for (const auto& inner : koszul_cocomposition(t, outer.f)) total[{inner.f, inner.g, outer.g}] += outer.sign * inner.sign;
    for (const auto& inner : koszul_cocomposition(t, outer.g)) total[{outer.f, inner.f, inner.g}] -= outer.sign * inner.sign;
  }
  std::erase_if(total, [](const auto& kv) { return kv.second == 0; });
  return total;
}

HomotopyOperadData::HomotopyOperadData(Species species, std::size_t max_labels)
    : species_{std::move(species)}, max_labels_{max_labels} {}

namespace {

std::pair<std::string, EdgeSet> op_key(const Tree& t, const EdgeSet& e) { return {t.to_string(), canonical(e)}; }

std::string op_name(const Tree& t, const EdgeSet& e) {
  return "(" + t.to_string() + ", " + edge_set_string(t.labels(), canonical(e)) + ")";
}

}  // namespace

void HomotopyOperadData::set(const Tree& t, const EdgeSet& e, SparseMatrix m) {
  if (e.empty()) throw std::invalid_argument("operations need a nonempty edge set");
  for (Mask x : e)
    if (!t.has_edge(x)) throw std::domain_error("edge " + t.labels().subset_string(x) + " not in " + t.to_string());
  const TreeBasis src(species_, t), dst(species_, contract(t, e));
  if (m.rows() != dst.size() || m.cols() != src.size())
    throw std::invalid_argument("operation " + op_name(t, e) + " has the wrong shape");
  ops_[op_key(t, e)] = std::move(m);
}

const SparseMatrix& HomotopyOperadData::op(const Tree& t, const EdgeSet& e) const {
  auto it = ops_.find(op_key(t, e));
  if (it == ops_.end()) throw MissingOperation("missing operation o_E for (t, E) = " + op_name(t, e));
  return it->second;
}

bool HomotopyOperadData::has(const Tree& t, const EdgeSet& e) const { return ops_.count(op_key(t, e)) > 0; }

void HomotopyOperadData::erase(const Tree& t, const EdgeSet& e) { ops_.erase(op_key(t, e)); }

void HomotopyOperadData::negate(const Tree& t, const EdgeSet& e) {
  auto it = ops_.find(op_key(t, e));
  if (it == ops_.end()) throw MissingOperation("missing operation o_E for (t, E) = " + op_name(t, e));
  it->second = it->second.scaled(-1);
}

nlohmann::json HomotopyOperadData::to_json() const {
  nlohmann::json ops = nlohmann::json::array();
  for (const auto& [key, m] : ops_) {
    const Tree t = Tree::parse(key.first);
    nlohmann::json edges = nlohmann::json::array();
    for (Mask e : key.second) edges.push_back(t.labels().subset_string(e));
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [pos, v] : m.entries()) entries.push_back(nlohmann::json::array({pos.first, pos.second, to_string(v)}));
    ops.push_back({{"tree", key.first}, {"edges", edges}, {"entries", entries}});
  }
  return {{"species", species_to_json(species_)}, {"max_labels", max_labels_}, {"ops", ops}};
}

HomotopyOperadData HomotopyOperadData::from_json(const nlohmann::json& j) {
  try {
    HomotopyOperadData h(species_from_json(j.at("species")), j.at("max_labels").get<std::size_t>());
    for (const auto& o : j.at("ops")) {
      const Tree t = Tree::parse(o.at("tree").get<std::string>());
      EdgeSet e;
      for (const auto& edge : o.at("edges")) {
        const Tree probe = Tree::parse(t.labels().to_string() + "|[" + edge.get<std::string>() + "]");
        e.push_back(probe.edges().at(0));
      }
      const TreeBasis src(h.species_, t), dst(h.species_, contract(t, e));
      SparseMatrix m(dst.size(), src.size());
      for (const auto& entry : o.at("entries")) {
        const auto r = entry.at(0).get<std::size_t>(), c = entry.at(1).get<std::size_t>();
        if (r >= m.rows() || c >= m.cols()) throw std::invalid_argument("entry out of range in " + op_name(t, e));
        m.add(r, c, parse_rational(entry.at(2).get<std::string>()));
      }
      h.set(t, e, std::move(m));
    }
    return h;
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument(std::string("malformed homotopy operad data: ") + ex.what());
  }
}

HomotopyOperadData strict_to_homotopy(const Operad& p, std::size_t max_labels) {
  HomotopyOperadData h(p.species(), max_labels);
  for (std::size_t m = 2; m <= max_labels; ++m) {
    auto labels = std::make_shared<const LabelSet>(LabelSet::range(m));
    for (const Tree& t : enumerate_trees(labels)) {
      const std::size_t n = t.edge_count();
      for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
        const EdgeSet e = edge_subset(t, bits);
        if (e.size() == 1) {
          h.set(t, e, contraction_matrix(p, t, e));
        } else {
          const TreeBasis src(p.species(), t), dst(p.species(), contract(t, e));
          h.set(t, e, SparseMatrix(dst.size(), src.size()));
        }
      }
    }
  }
  return h;
}

SparseMatrix tree_differential(const Species& s, const Tree& t) {
  const TreeBasis basis(s, t);
  SparseMatrix d(basis.size(), basis.size());
  const auto& ar = basis.arities();
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const Labeling x = basis.labeling(j);
    int before = 0;
    for (std::size_t v = 0; v < x.size(); ++v) {
      for (const auto& [row, c] : s.component(ar[v]).differential.column(x[v])) {
        Labeling y = x;
        y[v] = row;
        d.add(basis.index(y), j, before % 2 ? -c : c);
      }
      before += s.degree(ar[v], x[v]);
    }
  }
  return d;
}

namespace {

SparseMatrix relabel_matrix(const Species& s, const Tree& t, const Permutation& pi) {
  const TreeBasis src(s, t), dst(s, relabel(t, pi));
  SparseMatrix m(dst.size(), src.size());
  for (std::size_t j = 0; j < src.size(); ++j)
    for (const auto& [y, c] : relabel_labeling(s, t, src.labeling(j), pi)) m.add(dst.index(y), j, c);
  return m;
}

std::string first_entry(const SparseMatrix& m) {
  if (m.is_zero()) return "";
  const auto& [pos, v] = *m.entries().begin();
  return "entry (" + std::to_string(pos.first) + "," + std::to_string(pos.second) + ") off by " + to_string(v);
}

}  // namespace

HomotopyCheck check_homotopy_operad(const HomotopyOperadData& h, std::size_t max_labels) {
  HomotopyCheck out;
  const Species& s = h.species();
  for (std::size_t m = 2; m <= max_labels; ++m) {
    auto labels = std::make_shared<const LabelSet>(LabelSet::range(m));
    for (const Tree& t : enumerate_trees(labels)) {
      const std::size_t n = t.edge_count();
      const TreeBasis src(s, t);
      const SparseMatrix d_src = tree_differential(s, t);
      for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
        const EdgeSet e = edge_subset(t, bits);
        const Tree target = contract(t, e);
        const SparseMatrix& o = h.op(t, e);
        const std::string where = op_name(t, e);
        ++out.relations;

        // degree bookkeeping
        const TreeBasis dst(s, target);
        const int shift = static_cast<int>(e.size()) - 1;
        for (const auto& [pos, v] : o.entries())
          if (dst.degree(dst.labeling(pos.first)) != src.degree(src.labeling(pos.second)) + shift) {
            out.report.fail("o_E has degree |E|-1", where);
            break;
          }

        // d(o_E) = sum (-1)^{|F|} eps(F,G) o_F o_G
        SparseMatrix lhs = tree_differential(s, target) * o - (o * d_src).scaled(parity(e.size() - 1));
        SparseMatrix rhs(lhs.rows(), lhs.cols());
        for (const auto& term : cobar_generator_differential(t, e)) {
          const Tree mid = contract(t, term.g);
          rhs = rhs + (h.op(mid, term.f) * h.op(t, term.g)).scaled(term.sign);
        }
        if (!(lhs == rhs))
          out.report.fail("d(o_E) = sum (-1)^|F| eps(F,G) o_F o_G at |E| = " + std::to_string(e.size()),
                          where + ": " + first_entry(lhs - rhs));

        // equivariance on adjacent transpositions of the labels
        for (std::size_t k = 0; k + 1 < m; ++k) {
          const Permutation swap = Permutation::adjacent(m, k);
          EdgeSet moved;
          for (Mask x : e) moved.push_back(relabel(x, swap));
          const SparseMatrix a = h.op(relabel(t, swap), moved) * relabel_matrix(s, t, swap);
          const SparseMatrix b = relabel_matrix(s, target, swap) * o;
          if (!(a == b))
            out.report.fail("o_E is equivariant", where + " under " + swap.to_string() + ": " + first_entry(a - b));
        }
      }
    }
  }
  return out;
}

}  // namespace treebar
