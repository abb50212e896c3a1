#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "treebar/trees.hpp"

using namespace treebar;

namespace {

LabelSetPtr labels(std::size_t n) { return std::make_shared<const LabelSet>(LabelSet::range(n)); }

Tree t5() { return Tree::parse("{1,2,3,4,5}|[[1,2],[3,4,5],[4,5]]"); }

// Brute force: every family of proper subsets of size >= 2, kept when laminar.
std::size_t laminar_families(std::size_t n) {
  std::vector<Mask> candidates;
  const Mask full = bit(n) - 1;
  for (Mask m = 1; m < full; ++m)
    if (popcount(m) >= 2) candidates.push_back(m);
  std::size_t count = 0;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << candidates.size()); ++pick) {
    bool ok = true;
    for (std::size_t i = 0; ok && i < candidates.size(); ++i)
      for (std::size_t j = i + 1; ok && j < candidates.size(); ++j) {
        if (!((pick >> i) & 1) || !((pick >> j) & 1)) continue;
        const Mask a = candidates[i], b = candidates[j];
        ok = (a & b) == 0 || (a & b) == a || (a & b) == b;
      }
    count += ok;
  }
  return count;
}

// a(1) = 1, a(n) = sum over set partitions into >= 2 blocks of prod a(|block|).
std::size_t partition_recursion(std::size_t n) {
  if (n <= 1) return 1;
  std::size_t total = 0;
  std::vector<std::size_t> block(n, 0);
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t used) {
    if (i == n) {
      if (used < 2) return;
      std::vector<std::size_t> sizes(used, 0);
      for (auto b : block) ++sizes[b];
      std::size_t prod = 1;
      for (auto s : sizes) prod *= partition_recursion(s);
      total += prod;
      return;
    }
    for (std::size_t b = 0; b <= used; ++b) {
      block[i] = b;
      go(i + 1, std::max(used, b + 1));
    }
  };
  go(0, 0);
  return total;
}

}  // namespace

TEST_CASE("label sets parse and print") {
  const auto l = LabelSet::parse("{3,1,2}");
  CHECK(l.to_string() == "{1,2,3}");
  CHECK(l.numeric());
  CHECK(l.subset_string(0b101) == "[1,3]");
  const auto s = LabelSet::parse("b,a,c");
  CHECK_FALSE(s.numeric());
  CHECK(s.to_string() == "{a,b,c}");
  CHECK(*s.index_of("c") == 2);
  CHECK_FALSE(s.index_of("z").has_value());
  CHECK_THROWS(LabelSet::parse("1,1"));
}

TEST_CASE("tree forms round trip") {
  const Tree t = t5();
  CHECK(t.to_string() == "{1,2,3,4,5}|[[1,2],[3,4,5],[4,5]]");
  CHECK(Tree::parse(t.to_string()) == t);
  CHECK(Tree::parse("{1,2,3}|[]").edge_count() == 0);
  CHECK_THROWS(Tree::parse("{1,2,3}|[[1,2],[2,3]]"));
  CHECK_THROWS(Tree::parse("{1,2,3}|[[1,2,3]]"));
  CHECK_THROWS(Tree::parse("{1,2,3}|[[2]]"));
}

TEST_CASE("enumeration counts agree with the laminar brute force") {
  for (std::size_t n = 1; n <= 4; ++n) {
    CAPTURE(n);
    CHECK(enumerate_trees(labels(n)).size() == laminar_families(n));
  }
}

TEST_CASE("enumeration counts agree with the partition recursion") {
  const std::vector<std::size_t> want{1, 1, 4, 26, 236};
  for (std::size_t n = 1; n <= 5; ++n) {
    CAPTURE(n);
    CHECK(partition_recursion(n) == want[n - 1]);
    const auto trees = enumerate_trees(labels(n));
    CHECK(trees.size() == want[n - 1]);
    CHECK(std::is_sorted(trees.begin(), trees.end()));
    std::set<std::string> forms;
    for (const auto& t : trees) forms.insert(t.to_string());
    CHECK(forms.size() == trees.size());
  }
}

TEST_CASE("three labels give the corolla and three one-edge trees") {
  std::set<std::string> forms;
  for (const auto& t : enumerate_trees(labels(3))) forms.insert(t.to_string());
  CHECK(forms == std::set<std::string>{"{1,2,3}|[]", "{1,2,3}|[[1,2]]", "{1,2,3}|[[1,3]]", "{1,2,3}|[[2,3]]"});
}

TEST_CASE("a single label gives the bare leaf") {
  const auto trees = enumerate_trees(labels(1));
  REQUIRE(trees.size() == 1);
  CHECK(trees[0].edge_count() == 0);
  CHECK(trees[0].vertices().empty());
}

TEST_CASE("contraction") {
  const Tree t = t5();
  const Mask g = 0b00011, e = 0b11100, f = 0b11000;
  CHECK(contract(t, {}) == t);
  CHECK(contract(t, {g, e, f}).edge_count() == 0);
  CHECK(contract(t, {f}).to_string() == "{1,2,3,4,5}|[[1,2],[3,4,5]]");
  CHECK_THROWS_AS(contract(t, {0b00110}), std::domain_error);
  // order of contraction does not matter
  CHECK(contract(contract(t, {e}), {f}) == contract(contract(t, {f}), {e}));
}

TEST_CASE("hom sets") {
  const Tree t = t5();
  const Tree c = Tree::corolla(t.labels_ptr());
  CHECK(hom_set(t, t)->empty());
  CHECK(*hom_set(t, c) == EdgeSet{0b00011, 0b11100, 0b11000});
  CHECK_FALSE(hom_set(c, t).has_value());
  CHECK_THROWS_AS(hom_set(t, Tree::corolla(labels(3))), std::domain_error);
  // every pair over four labels: a morphism exists iff the edges of s are edges of t
  const auto trees = enumerate_trees(labels(4));
  for (const auto& a : trees)
    for (const auto& b : trees) {
      const bool sub = std::includes(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end(),
                                     cluster_less);
      const auto h = hom_set(a, b);
      CHECK(h.has_value() == sub);
      if (h) CHECK(contract(a, *h) == b);
    }
}

TEST_CASE("vertex inputs") {
  const Tree t = t5();
  CHECK(vertex_inputs(t, t.root()) == std::vector<Mask>{0b00011, 0b11100});
  CHECK(vertex_inputs(t, 0b11100) == std::vector<Mask>{0b00100, 0b11000});
  CHECK(vertex_inputs(Tree::corolla(labels(3)), 0b111) == std::vector<Mask>{1, 2, 4});
  CHECK_THROWS_AS(vertex_inputs(t, 0b00110), std::domain_error);
}

TEST_CASE("edge order") {
  const Tree t = t5();
  const Mask g = 0b00011, e = 0b11100, f = 0b11000;
  CHECK(edge_leq(t, e, f));
  CHECK_FALSE(edge_leq(t, f, e));
  CHECK_FALSE(edge_leq(t, g, e));
  CHECK_FALSE(edge_leq(t, e, g));
  CHECK(edge_leq(t, e, e));
}

namespace {

// Filter all bijections by the order, sign taken on the canonical edge order.
std::set<std::pair<std::vector<std::size_t>, int>> extensions_oracle(const Tree& t) {
  std::set<std::pair<std::vector<std::size_t>, int>> out;
  const auto& es = t.edges();
  std::vector<std::size_t> pos(es.size());
  for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = i + 1;
  do {
    bool ok = true;
    for (std::size_t a = 0; a < es.size(); ++a)
      for (std::size_t b = 0; b < es.size(); ++b)
        if (a != b && edge_leq(t, es[a], es[b]) && pos[a] > pos[b]) ok = false;
    if (ok) out.insert({pos, sort_sign(pos)});
  } while (std::next_permutation(pos.begin(), pos.end()));
  return out;
}

}  // namespace

TEST_CASE("linear extensions of the five-leaf tree") {
  const auto ext = linear_extensions(t5());
  REQUIRE(ext.size() == 3);
  // canonical order (g, e, f); e must precede f
  std::set<std::pair<std::vector<std::size_t>, int>> got;
  for (const auto& x : ext) got.insert({x.position, x.sign});
  const std::set<std::pair<std::vector<std::size_t>, int>> want{
      {{3, 1, 2}, 1}, {{1, 2, 3}, 1}, {{2, 1, 3}, -1}};
  CHECK(got == want);
}

TEST_CASE("linear extensions agree with the permutation filter") {
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& t : enumerate_trees(labels(n))) {
      CAPTURE(t.to_string());
      std::set<std::pair<std::vector<std::size_t>, int>> got;
      for (const auto& x : linear_extensions(t)) got.insert({x.position, x.sign});
      CHECK(got == extensions_oracle(t));
    }
}

TEST_CASE("small linear extension cases") {
  const auto c = linear_extensions(Tree::corolla(labels(3)));
  REQUIRE(c.size() == 1);
  CHECK(c[0].position.empty());
  CHECK(c[0].sign == 1);
  const auto two = linear_extensions(Tree::parse("{1,2,3,4}|[[1,2],[3,4]]"));
  REQUIRE(two.size() == 2);
  CHECK(two[0].sign + two[1].sign == 0);
}

TEST_CASE("relabelling") {
  const Tree t = Tree::parse("{1,2,3}|[[1,2]]");
  const Permutation swap = Permutation::adjacent(3, 1);
  CHECK(relabel(t, swap).to_string() == "{1,2,3}|[[1,3]]");
  CHECK(relabel(relabel(t, swap), swap) == t);
}

TEST_CASE("permutations") {
  const auto all = all_permutations(4);
  CHECK(all.size() == 24);
  for (const auto& p : all) {
    CHECK((p * p.inverse()).is_identity());
    Permutation w = Permutation::identity(4);
    for (auto k : p.adjacent_word()) w = w * Permutation::adjacent(4, k);
    CHECK(w == p);
    CHECK(p.sign() == sort_sign(p.images()));
  }
}

TEST_CASE("edge set helpers") {
  const Tree t = t5();
  CHECK(edge_subset(t, 0b101) == EdgeSet{0b00011, 0b11000});
  CHECK(canonical({0b11000, 0b00011}) == EdgeSet{0b00011, 0b11000});
  CHECK(set_minus(t.edges(), {0b11100}) == EdgeSet{0b00011, 0b11000});
  CHECK(set_union({0b11000}, {0b00011}) == EdgeSet{0b00011, 0b11000});
  CHECK(edge_set_string(t.labels(), {0b00011, 0b11000}) == "{[1,2],[4,5]}");
}
