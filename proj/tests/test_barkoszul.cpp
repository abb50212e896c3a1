#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "treebar/barkoszul.hpp"

using namespace treebar;

namespace {

LabelSetPtr labels(std::size_t n) { return std::make_shared<const LabelSet>(LabelSet::range(n)); }

const Field Q = Field::rationals();

Tree t5() { return Tree::parse("{1,2,3,4,5}|[[1,2],[3,4,5],[4,5]]"); }

// Surjections from an n-set onto k ordered blocks, by inclusion-exclusion.
long surjections(long n, long k) {
  long total = 0;
  for (long j = 0; j <= k; ++j) {
    long binom = 1;
    for (long i = 0; i < j; ++i) binom = binom * (k - i) / (i + 1);
    long pow = 1;
    for (long i = 0; i < n; ++i) pow *= k - j;
    total += (j % 2 ? -1 : 1) * binom * pow;
  }
  return total;
}

template <class F>
void for_each_morphism(std::size_t n, F&& f) {
  for (const Tree& t : enumerate_trees(labels(n)))
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << t.edge_count()); ++bits)
      f(t, edge_subset(t, bits));
}

}  // namespace

TEST_CASE("ordered partitions count surjections") {
  const EdgeSet e{1, 2, 4, 8};
  for (long k = 0; k <= 5; ++k) {
    const auto parts = ordered_partitions(e, static_cast<std::size_t>(k));
    CHECK(static_cast<long>(parts.size()) == surjections(4, k));
    for (const auto& b : parts) {
      EdgeSet all;
      for (const auto& block : b) {
        CHECK_FALSE(block.empty());
        all = set_union(all, block);
      }
      CHECK(all == e);
    }
  }
  CHECK(ordered_partitions({}, 0).size() == 1);
}

TEST_CASE("category bar of the five-leaf tree over the corolla") {
  const Tree t = t5();
  const auto n = build_N_category(t, Tree::corolla(t.labels_ptr()));
  const auto& c = *n.complex;
  CHECK(c.min_degree() == 1);
  CHECK(c.max_degree() == 3);
  CHECK(c.dim(1) == 1);
  CHECK(c.dim(2) == 6);
  CHECK(c.dim(3) == 6);
  CHECK(verify_d_squared(c).passed());
  CHECK(nonzero(betti(c, Q)) == Betti{{3, 1}});
  CHECK(oracle::dense_betti(c) == Betti{{3, 1}});
}

TEST_CASE("identity morphisms give a point") {
  const Tree t = t5();
  const auto n = build_N_category(t, t);
  CHECK(n.complex->degrees() == std::vector<int>{0});
  CHECK(n.complex->dim(0) == 1);
  CHECK(nonzero(betti(*n.complex, Q)) == Betti{{0, 1}});
}

TEST_CASE("missing morphisms are rejected") {
  const Tree t = t5();
  CHECK_THROWS_AS(build_N_category(Tree::corolla(t.labels_ptr()), t), std::domain_error);
  CHECK_THROWS_AS(build_K_resolution(Tree::corolla(t.labels_ptr()), t), std::domain_error);
}

TEST_CASE("the category is Koszul on four labels") {
  for (std::size_t n = 1; n <= 4; ++n)
    for_each_morphism(n, [](const Tree& t, const EdgeSet& e) {
      CAPTURE(t.to_string());
      const Tree s = contract(t, e);
      const auto bar = build_N_category(t, s);
      CHECK(nonzero(betti(*bar.complex, Q)) == Betti{{static_cast<int>(e.size()), 1}});
      const auto k = build_K_category(t, s);
      const ChainMap map = kappa_category(k, bar);
      CHECK(verify_chain_map(map).passed());
      CHECK(is_quasi_iso(map, Q).quasi_iso);
    });
}

TEST_CASE("the resolution is acyclic") {
  for (std::size_t n = 1; n <= 4; ++n)
    for_each_morphism(n, [](const Tree& t, const EdgeSet& e) {
      CAPTURE(t.to_string());
      const Tree s = contract(t, e);
      const auto r = build_K_resolution(t, s);
      CHECK(verify_d_squared(*r.complex).passed());
      const auto b = build_K_bifunctor(t, s);
      CHECK(verify_d_squared(*b.complex).passed());
      CHECK(nonzero(betti(*b.complex, Q)).empty());
      if (e.empty()) {
        CHECK(nonzero(betti(*build_K_resolution(t, s, false).complex, Q)) == Betti{{0, 1}});
      } else {
        CHECK(nonzero(betti(*r.complex, Q)).empty());
        CHECK(r.complex->min_degree() == 0);
      }
    });
}

TEST_CASE("resolution dimensions") {
  const Tree t = t5();
  const auto r = build_K_resolution(t, Tree::corolla(t.labels_ptr()));
  // G of size g with F the complement
  CHECK(r.complex->dim(0) == 1);
  CHECK(r.complex->dim(1) == 3);
  CHECK(r.complex->dim(2) == 3);
  CHECK(r.complex->dim(3) == 1);
  const Tree one = Tree::parse("{1,2,3}|[[1,2]]");
  const auto small = build_K_resolution(one, Tree::corolla(one.labels_ptr()));
  CHECK(small.complex->total_dim() == 2);
  const auto bi = build_K_bifunctor(t, Tree::corolla(t.labels_ptr()));
  CHECK(bi.complex->total_dim() == 27 + 1);
}

TEST_CASE("Koszul complexes of com") {
  SUBCASE("two labels") {
    const auto k = build_K_operad(labels(2), make_com(2));
    CHECK(k.complex->degrees() == std::vector<int>{0});
    CHECK(nonzero(betti(*k.complex, Q)) == Betti{{0, 1}});
  }
  SUBCASE("three labels") {
    const auto k = build_K_operad(labels(3), make_com(3));
    CHECK(k.complex->dim(0) == 1);
    CHECK(k.complex->dim(1) == 3);
    CHECK(rank(k.complex->differential(1), Q) == 1);
    CHECK(nonzero(betti(*k.complex, Q)) == Betti{{1, 2}});
  }
  SUBCASE("four labels") {
    const auto k = build_K_operad(labels(4), make_com(4));
    const auto& c = *k.complex;
    CHECK(c.dim(0) == 1);
    CHECK(c.dim(1) == 10);
    CHECK(c.dim(2) == 15);
    CHECK(oracle::dense_rank(c.differential(1)) == 1);
    CHECK(oracle::dense_rank(c.differential(2)) == 9);
    CHECK(oracle::dense_betti(c) == Betti{{2, 6}});
    CHECK(nonzero(betti(c, Q)) == Betti{{2, 6}});
    CHECK(euler_characteristic(c) == 6);
  }
}

TEST_CASE("bar complexes of operads") {
  for (const char* name : {"com", "ass", "free-binary"})
    for (std::size_t n = 2; n <= 4; ++n) {
      CAPTURE(name);
      CAPTURE(n);
      const Operad p = builtin_operad(name, n);
      const auto bar = build_N_operad(labels(n), p);
      const auto k = build_K_operad(labels(n), p);
      CHECK(verify_d_squared(*bar.complex).passed());
      CHECK(verify_d_squared(*k.complex).passed());
      const ChainMap map = kappa(k, bar);
      CHECK(verify_chain_map(map).passed());
      const auto q = is_quasi_iso(map, Q);
      CHECK(q.quasi_iso);
      CHECK(nonzero(betti(*bar.complex, Q)) == nonzero(betti(*k.complex, Q)));
    }
}

TEST_CASE("kappa on two edges is the signed sum of both orders") {
  const auto l = labels(4);
  const Operad com = make_com(4);
  const auto bar = build_N_operad(l, com);
  const auto k = build_K_operad(l, com);
  const ChainMap map = kappa(k, bar);
  const Tree t = Tree::parse("{1,2,3,4}|[[1,2],[1,2,3]]");
  const Mask a = 0b0011, b = 0b0111;
  const std::size_t col = k.at(2, {t, {0, 0, 0}});
  const SparseMatrix m = map.component(2);
  CHECK(m.at(bar.at(2, {t, {{a}, {b}}, {0, 0, 0}}), col) == 1);
  CHECK(m.at(bar.at(2, {t, {{b}, {a}}, {0, 0, 0}}), col) == -1);
  CHECK(m.column(col).size() == 2);
  const auto corolla = kappa(k, bar).component(0);
  CHECK(corolla == SparseMatrix::identity(1));
}

TEST_CASE("kappa with a dropped sign is not a chain map") {
  const auto l = labels(4);
  const Operad ass = make_ass(4);
  const auto bar = build_N_operad(l, ass);
  const auto k = build_K_operad(l, ass);
  ChainMap map = kappa(k, bar);
  SparseMatrix m = map.component(2);
  const auto& [pos, v] = *std::find_if(m.entries().begin(), m.entries().end(),
                                       [](const auto& kv) { return kv.second == -1; });
  const auto where = pos;
  m.add(where.first, where.second, 2);
  map.set_component(2, m);
  CHECK_FALSE(verify_chain_map(map).passed());
}

TEST_CASE("bar complex dimensions count ordered partitions") {
  const auto l = labels(4);
  const auto bar = build_N_operad(l, make_com(4));
  std::map<int, std::size_t> want;
  for (const Tree& t : enumerate_trees(l)) {
    if (t.edge_count() == 0) ++want[0];
    for (std::size_t k = 1; k <= t.edge_count(); ++k) want[static_cast<int>(k)] += surjections(t.edge_count(), k);
  }
  for (const auto& [d, n] : want) CHECK(bar.complex->dim(d) == n);
}
