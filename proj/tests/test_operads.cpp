#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "treebar/operads.hpp"
#include "treebar/tree_species.hpp"

using namespace treebar;

namespace {

LabelSetPtr labels(std::size_t n) { return std::make_shared<const LabelSet>(LabelSet::range(n)); }

std::vector<int> letters(const std::string& name) {
  std::vector<int> out;
  for (std::size_t i = 0; i < name.size(); ++i)
    if (name[i] == 'x') out.push_back(std::stoi(name.substr(i + 1)));
  return out;
}

std::string word(const std::vector<int>& ls) {
  std::string s;
  for (int l : ls) s += "x" + std::to_string(l);
  return s;
}

// Substitution of permutation words, done on the printed names.
std::string substitute(const std::string& x, int i, const std::string& y) {
  const int n = static_cast<int>(letters(y).size());
  std::vector<int> out;
  for (int l : letters(x)) {
    if (l < i) out.push_back(l);
    else if (l > i) out.push_back(l + n - 1);
    else
      for (int b : letters(y)) out.push_back(i - 1 + b);
  }
  return word(out);
}

}  // namespace

TEST_CASE("dimensions of the builtin operads") {
  const Operad com = make_com(5), ass = make_ass(5), free = builtin_operad("free-binary", 5);
  for (std::size_t n = 1; n <= 5; ++n) CHECK(com.dim(n) == 1);
  CHECK(ass.dim(3) == 6);
  CHECK(ass.dim(4) == 24);
  // free on one binary generator: one labeling per binary tree
  std::size_t binary_trees = 0;
  for (const auto& t : enumerate_trees(labels(3))) binary_trees += t.edge_count() == 1;
  CHECK(free.dim(3) == binary_trees);
  CHECK(free.dim(3) == 3);
  CHECK(free.dim(4) == 15);
}

TEST_CASE("ass composition is substitution of words") {
  const Operad ass = make_ass(5);
  const Species& s = ass.species();
  for (std::size_t m = 2; m <= 4; ++m)
    for (std::size_t n = 2; m + n - 1 <= 5; ++n)
      for (std::size_t i = 1; i <= m; ++i)
        for (std::size_t a = 0; a < ass.dim(m); ++a)
          for (std::size_t b = 0; b < ass.dim(n); ++b) {
            const LinComb& z = ass.compose(m, a, i, n, b);
            REQUIRE(z.size() == 1);
            CHECK(z.begin()->second == 1);
            CHECK(s.name(m + n - 1, z.begin()->first) ==
                  substitute(s.name(m, a), static_cast<int>(i), s.name(n, b)));
          }
  CHECK(substitute("x2x1", 1, "x1x2") == "x3x1x2");
}

TEST_CASE("units compose trivially") {
  for (const char* name : {"com", "ass", "free-binary"}) {
    const Operad p = builtin_operad(name, 4);
    for (std::size_t n = 2; n <= 4; ++n)
      for (std::size_t b = 0; b < p.dim(n); ++b) {
        CHECK(p.compose(1, Operad::unit, 1, n, b) == LinComb{{b, 1}});
        for (std::size_t i = 1; i <= n; ++i) CHECK(p.compose(n, b, i, 1, Operad::unit) == LinComb{{b, 1}});
      }
  }
}

TEST_CASE("operad axioms hold for the builtins") {
  for (const char* name : {"com", "ass", "free-binary", "nilpotent", "nilpotent:2"}) {
    CAPTURE(name);
    const Operad p = builtin_operad(name, 5);
    const Report r = check_operad_axioms(p);
    CHECK(r.passed());
    CHECK(p.species().check_action().passed());
  }
}

TEST_CASE("a sign-flipped ass entry breaks the axioms") {
  Operad ass = make_ass(4);
  // x1x2 o_1 x1x2 = x1x2x3; flip it
  ass.set_composition(2, 0, 1, 2, 0, LinComb{{0, -1}});
  const Report r = check_operad_axioms(ass);
  CHECK_FALSE(r.passed());
  REQUIRE_FALSE(r.failures().empty());
  CHECK(r.failures().front().detail.find("x1x2") != std::string::npos);
}

TEST_CASE("overflowing the truncation is reported") {
  const Operad com = make_com(3);
  CHECK_THROWS_AS(com.compose(3, 0, 1, 2, 0), ArityOverflow);
  const Tree big = Tree::corolla(labels(4));
  try {
    TreeBasis b(com.species(), big);
    FAIL("expected ArityOverflow");
  } catch (const ArityOverflow& e) {
    CHECK(std::string(e.what()).find("[1,2,3,4]") != std::string::npos);
  }
}

TEST_CASE("species on a tree") {
  const Tree t5 = Tree::parse("{1,2,3,4,5}|[[1,2],[3,4,5],[4,5]]");
  CHECK(TreeBasis(make_com(5).species(), t5).size() == 1);
  const TreeBasis a(make_ass(5).species(), t5);
  CHECK(a.arities() == std::vector<std::size_t>{2, 2, 2, 2});
  CHECK(a.size() == 16);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.index(a.labeling(i)) == i);
  const Tree c = Tree::corolla(labels(4));
  CHECK(TreeBasis(make_ass(4).species(), c).size() == 24);
  CHECK(TreeBasis(make_com(2).species(), Tree::corolla(labels(1))).name({}) == "1");
}

TEST_CASE("contracting one edge substitutes the child word") {
  const Operad ass = make_ass(3);
  const Species& s = ass.species();
  const Tree t = Tree::parse("{1,2,3}|[[1,2]]");
  const TreeBasis tb(s, t);
  const TreeBasis cb(s, contract(t, {0b011}));
  // root inputs: cluster [1,2] then leaf 3
  const std::vector<std::pair<std::pair<std::string, std::string>, std::string>> cases{
      {{"x1x2", "x1x2"}, "x1x2x3"}, {{"x2x1", "x1x2"}, "x3x1x2"}, {{"x1x2", "x2x1"}, "x2x1x3"},
      {{"x2x1", "x2x1"}, "x3x2x1"}};
  for (const auto& [in, want] : cases) {
    const Labeling x{*s.find(2, in.first), *s.find(2, in.second)};
    const auto z = contract_basis(ass, t, {0b011}, x);
    REQUIRE(z.size() == 1);
    CHECK(z.begin()->second == 1);
    CHECK(cb.name(z.begin()->first) == want);
  }
  // a child cluster that is not the first input
  const Tree u = Tree::parse("{1,2,3}|[[2,3]]");
  const Labeling y{*s.find(2, "x1x2"), *s.find(2, "x2x1")};
  const auto z = contract_basis(ass, u, {0b110}, y);
  CHECK(cb.name(z.begin()->first) == "x1x3x2");
}

TEST_CASE("contraction is independent of the order of edges") {
  for (const char* name : {"com", "ass", "free-binary"}) {
    const Operad p = builtin_operad(name, 5);
    for (std::size_t n = 2; n <= 5; ++n)
      for (const auto& t : enumerate_trees(labels(n))) {
        if (std::string(name) == "ass" && n == 5 && t.edge_count() < 2) continue;
        const TreeBasis tb(p.species(), t);
        for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << t.edge_count()); ++bits) {
          const EdgeSet e = edge_subset(t, bits);
          std::vector<Mask> order = e;
          for (std::size_t i = 0; i < tb.size(); i += (n == 5 ? 7 : 1)) {
            const Labeling x = tb.labeling(i);
            const auto want = contract_basis(p, t, e, x);
            std::sort(order.begin(), order.end());
            do CHECK(contract_sequence(p, t, order, x) == want);
            while (std::next_permutation(order.begin(), order.end()));
          }
        }
      }
  }
}

TEST_CASE("contraction is functorial") {
  const Operad ass = make_ass(4);
  for (const auto& t : enumerate_trees(labels(4)))
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << t.edge_count()); ++bits) {
      const EdgeSet e = edge_subset(t, bits);
      const Tree te = contract(t, e);
      for (std::uint64_t more = 0; more < (std::uint64_t{1} << te.edge_count()); ++more) {
        const EdgeSet f = edge_subset(te, more);
        CHECK(contraction_matrix(ass, te, f) * contraction_matrix(ass, t, e) ==
              contraction_matrix(ass, t, set_union(e, f)));
      }
      if (e.empty()) CHECK(contraction_matrix(ass, t, e) == SparseMatrix::identity(TreeBasis(ass.species(), t).size()));
    }
}

TEST_CASE("contraction commutes with relabelling") {
  const Operad ass = make_ass(4);
  for (const auto& t : enumerate_trees(labels(4)))
    for (const auto& pi : all_permutations(4)) {
      const Tree rt = relabel(t, pi);
      const TreeBasis tb(ass.species(), t);
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << t.edge_count()); ++bits) {
        const EdgeSet e = edge_subset(t, bits);
        EdgeSet re;
        for (Mask m : e) re.push_back(relabel(m, pi));
        re = canonical(re);
        const Tree s = contract(t, e);
        for (std::size_t i = 0; i < tb.size(); ++i) {
          const Labeling x = tb.labeling(i);
          LabelingComb lhs, rhs;
          for (const auto& [y, c] : contract_basis(ass, t, e, x))
            for (const auto& [z, d] : relabel_labeling(ass.species(), s, y, pi)) lhs[z] += c * d;
          for (const auto& [y, c] : relabel_labeling(ass.species(), t, x, pi))
            for (const auto& [z, d] : contract_basis(ass, rt, re, y)) rhs[z] += c * d;
          std::erase_if(lhs, [](const auto& kv) { return kv.second == 0; });
          std::erase_if(rhs, [](const auto& kv) { return kv.second == 0; });
          CHECK(lhs == rhs);
        }
      }
    }
}

TEST_CASE("operads round trip through JSON") {
  for (const char* name : {"com", "ass", "free-binary"}) {
    const Operad p = builtin_operad(name, 4);
    const Operad q = operad_from_json(operad_to_json(p));
    CHECK(q.max_arity() == p.max_arity());
    for (const auto& [key, entries] : p.table()) CHECK(q.table().at(key) == entries);
    CHECK(check_operad_axioms(q).passed());
  }
  CHECK_THROWS_AS(operad_from_json(nlohmann::json::parse(R"({"name":"bad"})")), std::invalid_argument);
}

TEST_CASE("free operads reject arity-one generators") {
  SpeciesComponent unary;
  unary.basis = {"u"};
  CHECK_THROWS(make_free(Species({unary}), 3));
}
