#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "treebar/barkoszul.hpp"
#include "treebar/levelbar.hpp"

using namespace treebar;

namespace {

LabelSetPtr labels(std::size_t n) { return std::make_shared<const LabelSet>(LabelSet::range(n)); }

const Field Q = Field::rationals();

Tree t5() { return Tree::parse("{1,2,3,4,5}|[[1,2],[3,4,5],[4,5]]"); }

constexpr Mask g = 0b00011, e = 0b11100, f = 0b11000;

// Every map vertices -> {0..n-1}, kept when it is a normalized level function.
std::set<std::vector<int>> level_oracle(const Tree& t, int n) {
  std::set<std::vector<int>> out;
  const auto verts = t.vertices();
  std::vector<int> lv(verts.size(), 0);
  const std::size_t total = [&] {
    std::size_t x = 1;
    for (std::size_t i = 0; i < verts.size(); ++i) x *= static_cast<std::size_t>(n);
    return x;
  }();
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (auto& l : lv) {
      l = static_cast<int>(c % static_cast<std::size_t>(n));
      c /= static_cast<std::size_t>(n);
    }
    bool ok = lv[0] == 0;
    std::set<int> used(lv.begin(), lv.end());
    ok = ok && static_cast<int>(used.size()) == n;
    for (std::size_t v = 1; ok && v < verts.size(); ++v) ok = lv[v] > lv[t.vertex_index(t.parent(verts[v]))];
    if (ok) out.insert(lv);
  }
  return out;
}

}  // namespace

TEST_CASE("level functions agree with brute force") {
  for (std::size_t n = 2; n <= 5; ++n)
    for (const auto& t : enumerate_trees(labels(n)))
      for (int k = 1; k <= static_cast<int>(t.vertices().size()) + 1; ++k) {
        const auto got = level_functions(t, k);
        CHECK(std::set<std::vector<int>>(got.begin(), got.end()) == level_oracle(t, k));
        for (const auto& lv : got) CHECK_NOTHROW(validate_levels(t, lv));
      }
}

TEST_CASE("invalid levels are rejected") {
  const Tree t = t5();
  CHECK_THROWS_AS(validate_levels(t, {0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(validate_levels(t, {1, 2, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(validate_levels(t, {0, 1, 2, 2}), std::invalid_argument);  // f not above e
  CHECK_THROWS_AS(validate_levels(t, {0, 1, 1, 3}), std::invalid_argument);  // level 2 empty
  CHECK_NOTHROW(validate_levels(t, {0, 1, 1, 2}));
}

TEST_CASE("two labels give a single level") {
  const auto lb = build_levelbar(labels(2), make_com(2));
  CHECK(lb.complex->degrees() == std::vector<int>{1});
  CHECK(lb.complex->dim(1) == 1);
  CHECK(lb.complex->differential(1).is_zero());
}

TEST_CASE("the differential of the six-leaf level tree has two terms") {
  const Tree t = Tree::parse("{1,2,3,4,5,6}|[[1,2,3,4],[2,3,4],[5,6]]");
  const Operad com = make_com(6);
  // u root at 0, v = [1,2,3,4] at 1, w = [2,3,4] and z = [5,6] at 2
  const LevelKey k{t, {0, 0, 0, 0}, {0, 1, 2, 2}};
  CHECK(k.level_count() == 3);
  const auto m1 = merge_levels(com, k, 1);
  const auto m2 = merge_levels(com, k, 2);
  REQUIRE(m1.size() == 1);
  REQUIRE(m2.size() == 1);
  CHECK(m1[0].first.tree.to_string() == "{1,2,3,4,5,6}|[[2,3,4],[5,6]]");
  CHECK(m1[0].first.levels == std::vector<int>{0, 1, 1});
  CHECK(m2[0].first.tree.to_string() == "{1,2,3,4,5,6}|[[1,2,3,4],[5,6]]");
  CHECK(m2[0].first.levels == std::vector<int>{0, 1, 1});

  const auto lb = build_levelbar(labels(6), com, 3);
  const std::size_t col = lb.at(3, k);
  const SparseMatrix d = lb.complex->differential(3);
  REQUIRE(d.column(col).size() == 2);
  CHECK(d.at(lb.at(2, m1[0].first), col) == -1);
  CHECK(d.at(lb.at(2, m2[0].first), col) == 1);
}

TEST_CASE("merging a level whose vertex feeds the root contracts one edge") {
  const Tree t = Tree::parse("{1,2,3}|[[1,2]]");
  const auto m = merge_levels(make_com(3), LevelKey{t, {0, 0}, {0, 1}}, 1);
  REQUIRE(m.size() == 1);
  CHECK(m[0].first.tree.edge_count() == 0);
  CHECK(m[0].first.levels == std::vector<int>{0});
  CHECK(m[0].second == 1);
  CHECK_THROWS_AS(merge_levels(make_com(3), LevelKey{t, {0, 0}, {0, 1}}, 2), std::out_of_range);
}

TEST_CASE("levelization of the five-leaf tree") {
  const auto l = t5().labels_ptr();
  const Operad com = make_com(5);
  const auto k = build_K_operad(l, com);
  const auto lb = build_levelbar(l, com);
  const ChainMap map = phi(k, lb);
  const Tree t = t5();
  const SparseMatrix m = map.component(3);
  const auto col = m.column(k.at(3, {t, {0, 0, 0, 0}}));
  REQUIRE(col.size() == 3);
  // vertex order: root, g, e, f
  std::map<std::vector<int>, Rational> got;
  for (const auto& [row, c] : col) got[lb.keys.at(4)[row].levels] = c;
  const std::map<std::vector<int>, Rational> want{
      {{0, 3, 1, 2}, 1},    // e, f, g at 1, 2, 3
      {{0, 1, 2, 3}, 1},    // e, f, g at 2, 3, 1
      {{0, 2, 1, 3}, -1}};  // e, f, g at 1, 3, 2
  CHECK(got == want);
  CHECK(map.component(0).rows() == lb.complex->dim(1));
}

TEST_CASE("incomparable edges levelize with opposite signs") {
  const auto l = labels(4);
  const Operad com = make_com(4);
  const auto k = build_K_operad(l, com);
  const auto lb = build_levelbar(l, com);
  const ChainMap map = phi(k, lb);
  const Tree t = Tree::parse("{1,2,3,4}|[[1,2],[3,4]]");
  const auto col = map.component(2).column(k.at(2, {t, {0, 0, 0}}));
  REQUIRE(col.size() == 2);
  CHECK(col[0].second + col[1].second == 0);
}

TEST_CASE("level-edge sets of the first levelization") {
  const Tree t = t5();
  const auto data = level_edge_sets(t, {0, 3, 1, 2}, 4);
  REQUIRE(data.n.size() == 3);
  CHECK(data.n[0] == EdgeSet{g, e});
  CHECK(data.n[1] == EdgeSet{g, f});
  CHECK(data.n[2] == EdgeSet{g});
  CHECK(data.span.at(g) == std::pair{3, 0});
  CHECK(data.span.at(f) == std::pair{2, 1});

  const Tree c = Tree::corolla(labels(3));
  const auto none = level_edge_sets(LevelKey{c, {0}, {0}});
  CHECK(none.n.empty());
  CHECK(none.span.empty());

  const Tree one = Tree::parse("{1,2,3}|[[1,2]]");
  const auto single = level_edge_sets(LevelKey{one, {0, 0}, {0, 1}});
  REQUIRE(single.n.size() == 1);
  CHECK(single.n[0] == EdgeSet{0b011});
}

TEST_CASE("psi on the first levelization") {
  const auto data = level_edge_sets(t5(), {0, 3, 1, 2}, 4);
  const auto raw = psi_terms(data, false);
  const std::set<std::pair<Blocks, int>> want_raw{
      {{{g, e}, {f}, {}}, 1},  {{{g, f}, {e}, {}}, -1}, {{{g, f}, {}, {e}}, 1},
      {{{g}, {f}, {e}}, -1},   {{{g}, {e}, {f}}, 1},    {{{g, e}, {}, {f}}, -1}};
  CHECK(raw.size() == 6);
  CHECK(std::set<std::pair<Blocks, int>>(raw.begin(), raw.end()) == want_raw);

  const auto norm = psi_terms(data, true);
  const std::set<std::pair<Blocks, int>> want{{{{g}, {f}, {e}}, -1}, {{{g}, {e}, {f}}, 1}};
  CHECK(norm.size() == 2);
  CHECK(std::set<std::pair<Blocks, int>>(norm.begin(), norm.end()) == want);
}

TEST_CASE("a unit-only level makes psi vanish") {
  const Tree t = Tree::parse("{1,2,3}|[[1,2]]");
  const auto data = level_edge_sets(t, {0, 2}, 3);
  CHECK(data.n.size() == 2);
  CHECK(psi_terms(data, true).empty());
  CHECK(psi_terms(data, false).size() == 2);
}

TEST_CASE("level bars are complexes") {
  for (const char* name : {"com", "ass", "free-binary"})
    for (std::size_t n = 2; n <= 4; ++n) {
      CAPTURE(name);
      CAPTURE(n);
      const auto lb = build_levelbar(labels(n), builtin_operad(name, n));
      CHECK(verify_d_squared(*lb.complex).passed());
    }
}

TEST_CASE("single edges pass straight through") {
  const auto l = labels(3);
  const Operad ass = make_ass(3);
  const auto k = build_K_operad(l, ass);
  const auto lb = build_levelbar(l, ass);
  const auto n = build_N_operad(l, ass);
  const ChainMap both = compose(psi_bar(lb, n), phi(k, lb));
  const ChainMap kap = kappa(k, n);
  CHECK(both.component(1) == kap.component(1));
  const Tree t = Tree::parse("{1,2,3}|[[2,3]]");
  const auto col = both.component(1).column(k.at(1, {t, {1, 0}}));
  REQUIRE(col.size() == 1);
  CHECK(col[0].second == 1);
  CHECK(n.keys.at(1)[col[0].first] == BarKey{t, {{0b110}}, {1, 0}});
}

TEST_CASE("factorization") {
  for (const char* name : {"com", "ass", "free-binary"})
    for (std::size_t n = 2; n <= 4; ++n) {
      CAPTURE(name);
      CAPTURE(n);
      const auto r = verify_factorization(labels(n), builtin_operad(name, n), Q);
      CHECK(r.report.passed());
      CHECK(r.kappa_chain);
      CHECK(r.phi_chain);
      CHECK(r.psi_chain);
      CHECK(r.kappa_qi);
      CHECK(r.phi_qi);
      CHECK(r.psi_qi);
      CHECK(r.degree_ok.size() == n - 1);
      for (const auto& [d, ok] : r.degree_ok) CHECK(ok);
    }
}
