#include "treebar/trees.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <stdexcept>

namespace treebar {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<long long> as_integer(const std::string& s) {
  long long v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || first == last) return std::nullopt;
  return v;
}

}  // namespace

bool cluster_less(Mask a, Mask b) {
  while (a && b) {
    const int la = lowest(a), lb = lowest(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return !a && b;
}

LabelSet::LabelSet(std::vector<std::string> atoms) : atoms_{std::move(atoms)} {
  if (atoms_.empty()) throw std::invalid_argument("label set must be non-empty");
  if (atoms_.size() > max_size) throw std::invalid_argument("at most 64 labels are supported");
  for (const auto& a : atoms_)
    if (a.empty()) throw std::invalid_argument("empty label");
  numeric_ = std::all_of(atoms_.begin(), atoms_.end(), [](const std::string& a) { return as_integer(a).has_value(); });
  if (numeric_)
    std::sort(atoms_.begin(), atoms_.end(), [](const std::string& a, const std::string& b) {
      return *as_integer(a) < *as_integer(b);
    });
  else
    std::sort(atoms_.begin(), atoms_.end());
  for (std::size_t i = 1; i < atoms_.size(); ++i) {
    const bool dup = numeric_ ? *as_integer(atoms_[i]) == *as_integer(atoms_[i - 1]) : atoms_[i] == atoms_[i - 1];
    if (dup) throw std::invalid_argument("duplicate label " + atoms_[i]);
  }
  if (numeric_)
    for (auto& a : atoms_) a = std::to_string(*as_integer(a));
}

LabelSet LabelSet::range(std::size_t n) {
  std::vector<std::string> atoms;
  for (std::size_t i = 1; i <= n; ++i) atoms.push_back(std::to_string(i));
  return LabelSet(std::move(atoms));
}

LabelSet LabelSet::parse(std::string_view csv) {
  std::string body = trim(csv);
  if (body.size() >= 2 && body.front() == '{' && body.back() == '}') body = body.substr(1, body.size() - 2);
  if (trim(body).empty()) throw std::invalid_argument("label set must be non-empty");
  return LabelSet(split(body, ','));
}

std::optional<std::size_t> LabelSet::index_of(std::string_view atom) const {
  std::string key = trim(atom);
  if (numeric_) {
    auto v = as_integer(key);
    if (!v) return std::nullopt;
    key = std::to_string(*v);
  }
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (atoms_[i] == key) return i;
  return std::nullopt;
}

std::string LabelSet::to_string() const {
  std::string s = subset_string(full());
  s.front() = '{';
  s.back() = '}';
  return s;
}

std::string LabelSet::subset_string(Mask m) const {
  std::string s = "[";
  bool first = true;
  for (std::size_t i = 0; i < size(); ++i)
    if (m & bit(i)) {
      s += (first ? "" : ",") + atoms_[i];
      first = false;
    }
  return s + "]";
}

Tree::Tree(LabelSetPtr labels, std::vector<Mask> clusters) : labels_{std::move(labels)}, clusters_{std::move(clusters)} {
  if (!labels_) throw std::invalid_argument("tree without label set");
  const Mask full = labels_->full();
  std::sort(clusters_.begin(), clusters_.end(), cluster_less);
  for (std::size_t i = 0; i < clusters_.size(); ++i) {
    const Mask c = clusters_[i];
    if ((c & ~full) || popcount(c) < 2 || c == full)
      throw std::invalid_argument("cluster " + labels_->subset_string(c & full) + " is not a proper subset of size >= 2");
    if (i > 0 && clusters_[i - 1] == c) throw std::invalid_argument("repeated cluster");
    for (std::size_t j = 0; j < i; ++j) {
      const Mask d = clusters_[j];
      if ((c & d) && (c & d) != c && (c & d) != d)
        throw std::invalid_argument("clusters " + labels_->subset_string(d) + " and " + labels_->subset_string(c) +
                                    " are not laminar");
    }
  }
}

Tree Tree::parse(std::string_view form) {
  const auto bar = form.find('|');
  if (bar == std::string_view::npos) throw std::invalid_argument("tree form needs '|'");
  auto labels = std::make_shared<const LabelSet>(LabelSet::parse(form.substr(0, bar)));
  std::string rest = trim(form.substr(bar + 1));
  if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']')
    throw std::invalid_argument("cluster list must be bracketed");
  rest = trim(std::string_view(rest).substr(1, rest.size() - 2));
  std::vector<Mask> clusters;
  std::size_t pos = 0;
  while (pos < rest.size()) {
    const auto open = rest.find('[', pos);
    if (open == std::string::npos) {
      if (!trim(std::string_view(rest).substr(pos)).empty()) throw std::invalid_argument("malformed cluster list");
      break;
    }
    const auto close = rest.find(']', open);
    if (close == std::string::npos) throw std::invalid_argument("unterminated cluster");
    Mask m = 0;
    for (const auto& atom : split(std::string_view(rest).substr(open + 1, close - open - 1), ',')) {
      auto idx = labels->index_of(atom);
      if (!idx) throw std::invalid_argument("unknown label '" + atom + "' in cluster");
      m |= bit(*idx);
    }
    clusters.push_back(m);
    pos = close + 1;
  }
  return Tree(std::move(labels), std::move(clusters));
}

bool Tree::has_edge(Mask e) const { return std::binary_search(clusters_.begin(), clusters_.end(), e, cluster_less); }

std::size_t Tree::edge_index(Mask e) const {
  auto it = std::lower_bound(clusters_.begin(), clusters_.end(), e, cluster_less);
  if (it == clusters_.end() || *it != e) throw std::domain_error("edge " + labels_->subset_string(e) + " not in tree");
  return static_cast<std::size_t>(it - clusters_.begin());
}

std::vector<Mask> Tree::vertices() const {
  if (labels_->size() < 2) return {};
  std::vector<Mask> v{root()};
  v.insert(v.end(), clusters_.begin(), clusters_.end());
  return v;
}

std::size_t Tree::vertex_index(Mask v) const {
  if (labels_->size() >= 2 && v == root()) return 0;
  return edge_index(v) + 1;
}

Mask Tree::parent(Mask cluster) const {
  Mask best = root();
  for (Mask c : clusters_)
    if (c != cluster && (c & cluster) == cluster && popcount(c) < popcount(best)) best = c;
  return best;
}

std::vector<Mask> Tree::inputs(Mask v) const {
  if (!is_vertex(v)) throw std::domain_error("unknown vertex " + labels_->subset_string(v));
  std::vector<Mask> in;
  Mask covered = 0;
  for (Mask c : clusters_)
    if (c != v && (c & v) == c && parent(c) == v) {
      in.push_back(c);
      covered |= c;
    }
  for (Mask rest = v & ~covered; rest; rest &= rest - 1) in.push_back(rest & -rest);
  std::sort(in.begin(), in.end(), [](Mask a, Mask b) { return lowest(a) < lowest(b); });
  return in;
}

std::string Tree::to_string() const {
  std::string s = labels_->to_string() + "|[";
  for (std::size_t i = 0; i < clusters_.size(); ++i) s += (i ? "," : "") + labels_->subset_string(clusters_[i]);
  return s + "]";
}

bool operator<(const Tree& a, const Tree& b) {
  return std::lexicographical_compare(a.clusters_.begin(), a.clusters_.end(), b.clusters_.begin(), b.clusters_.end(),
                                      cluster_less);
}

namespace {

// Set partitions of `set` into at least two blocks, first block holding the lowest element.
void partitions(Mask set, std::vector<Mask>& blocks, std::vector<std::vector<Mask>>& out, bool top) {
  if (!set) {
    if (!top || blocks.size() >= 2) out.push_back(blocks);
    return;
  }
  const Mask low = set & -set;
  const Mask rest = set & ~low;
  // enumerate subsets of rest, block = low | sub
  Mask sub = rest;
  while (true) {
    const Mask block = low | sub;
    if (!(top && blocks.empty() && block == set)) {
      blocks.push_back(block);
      partitions(set & ~block, blocks, out, top);
      blocks.pop_back();
    }
    if (!sub) break;
    sub = (sub - 1) & rest;
  }
}

// Cluster families of the trees on `set` (excluding `set` itself).
const std::vector<std::vector<Mask>>& forests(Mask set, std::map<Mask, std::vector<std::vector<Mask>>>& memo) {
  auto it = memo.find(set);
  if (it != memo.end()) return it->second;
  std::vector<std::vector<Mask>> result;
  if (popcount(set) <= 1) {
    result.push_back({});
  } else {
    std::vector<std::vector<Mask>> parts;
    std::vector<Mask> blocks;
    partitions(set, blocks, parts, true);
    for (const auto& p : parts) {
      std::vector<std::vector<Mask>> acc{{}};
      for (Mask b : p) {
        std::vector<std::vector<Mask>> next;
        const auto& inner = forests(b, memo);
        for (const auto& a : acc)
          for (const auto& f : inner) {
            auto combined = a;
            if (popcount(b) >= 2) combined.push_back(b);
            combined.insert(combined.end(), f.begin(), f.end());
            next.push_back(std::move(combined));
          }
        acc = std::move(next);
      }
      for (auto& a : acc) result.push_back(std::move(a));
    }
  }
  return memo.emplace(set, std::move(result)).first->second;
}

}  // namespace

std::vector<Tree> enumerate_trees(const LabelSetPtr& labels) {
  std::map<Mask, std::vector<std::vector<Mask>>> memo;
  std::vector<Tree> out;
  for (const auto& f : forests(labels->full(), memo)) out.emplace_back(labels, f);
  std::sort(out.begin(), out.end());
  return out;
}

Tree contract(const Tree& t, const EdgeSet& e) {
  for (Mask m : e)
    if (!t.has_edge(m)) throw std::domain_error("edge " + t.labels().subset_string(m) + " not in tree " + t.to_string());
  std::vector<Mask> kept;
  for (Mask c : t.edges())
    if (std::find(e.begin(), e.end(), c) == e.end()) kept.push_back(c);
  return Tree(t.labels_ptr(), std::move(kept));
}

std::optional<EdgeSet> hom_set(const Tree& t, const Tree& s) {
  if (!(t.labels() == s.labels())) throw std::domain_error("trees over different label sets");
  for (Mask c : s.edges())
    if (!t.has_edge(c)) return std::nullopt;
  return set_minus(t.edges(), s.edges());
}

std::vector<Mask> vertex_inputs(const Tree& t, Mask v) { return t.inputs(v); }

bool edge_leq(const Tree&, Mask e, Mask f) { return (f & e) == f; }

std::vector<LinearExtension> linear_extensions(const Tree& t) {
  const auto& edges = t.edges();
  const std::size_t n = edges.size();
  std::vector<LinearExtension> out;
  std::vector<std::size_t> pos(n, 0);
  // place edges at positions 1..n in turn; an edge is free once every edge below it is placed
  auto rec = [&](auto&& self, std::size_t next) -> void {
    if (next > n) {
      out.push_back({pos, sort_sign(pos)});
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (pos[i]) continue;
      bool free = true;
      for (std::size_t j = 0; j < n && free; ++j)
        if (j != i && edge_leq(t, edges[j], edges[i]) && !pos[j]) free = false;
      if (!free) continue;
      pos[i] = next;
      self(self, next + 1);
      pos[i] = 0;
    }
  };
  rec(rec, 1);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.position < b.position; });
  return out;
}

Mask relabel(Mask m, const Permutation& pi) {
  Mask out = 0;
  for (; m; m &= m - 1) out |= bit(pi(static_cast<std::size_t>(lowest(m))));
  return out;
}

Tree relabel(const Tree& t, const Permutation& pi) {
  if (pi.size() != t.labels().size()) throw std::invalid_argument("relabelling permutation has the wrong size");
  std::vector<Mask> clusters;
  for (Mask c : t.edges()) clusters.push_back(relabel(c, pi));
  return Tree(t.labels_ptr(), std::move(clusters));
}

EdgeSet edge_subset(const Tree& t, std::uint64_t index_bits) {
  EdgeSet out;
  for (std::size_t i = 0; i < t.edge_count(); ++i)
    if (index_bits & bit(i)) out.push_back(t.edges()[i]);
  return out;
}

EdgeSet canonical(EdgeSet e) {
  std::sort(e.begin(), e.end(), cluster_less);
  return e;
}

EdgeSet set_minus(const EdgeSet& a, const EdgeSet& b) {
  EdgeSet out;
  for (Mask m : a)
    if (std::find(b.begin(), b.end(), m) == b.end()) out.push_back(m);
  return out;
}

EdgeSet set_union(const EdgeSet& a, const EdgeSet& b) {
  EdgeSet out = a;
  for (Mask m : b)
    if (std::find(a.begin(), a.end(), m) == a.end()) out.push_back(m);
  return canonical(std::move(out));
}

std::string edge_set_string(const LabelSet& labels, const EdgeSet& e) {
  std::string s = "{";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + labels.subset_string(e[i]);
  return s + "}";
}

}  // namespace treebar
