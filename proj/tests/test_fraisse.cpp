#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oligocat/errors.hpp"
#include "oligocat/fraisse.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

using namespace oligo;

namespace {

long long delannoy(int m, int n) {
  std::vector<std::vector<long long>> d(m + 1, std::vector<long long>(n + 1, 1));
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= n; ++j)
      d[i][j] = d[i - 1][j] + d[i][j - 1] + d[i - 1][j - 1];
  return d[m][n];
}

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

long long factorial(int n) {
  long long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

bool compat(std::uint32_t a, std::uint32_t b, int n) {
  const std::uint32_t full = (1u << n) - 1;
  return (a & b) == 0 || (a & ~b & full) == 0 || (~a & b & full) == 0 ||
         ((full & ~a) & (full & ~b)) == 0;
}

}  // namespace

TEST_CASE("structure enumeration counts") {
  CHECK(enumerate_structures(ClassTag::FinSet, 3).size() == 1);
  CHECK(enumerate_structures(ClassTag::LinOrd, 4).size() == 1);
  CHECK(enumerate_structures(ClassTag::CycOrd, 5).size() == 1);
  CHECK(enumerate_structures(ClassTag::Tree, 3).size() == 1);
  CHECK(enumerate_structures(ClassTag::Tree, 4).size() == 2);
  CHECK(enumerate_structures(ClassTag::Tree, 5).size() == 3);
  CHECK_THROWS_AS(enumerate_structures(ClassTag::Tree, 99), ResourceError);
}

TEST_CASE("tree shapes agree with split-system enumeration") {
  // Independent oracle: labelled reduced trees on n leaves are exactly the
  // pairwise-compatible systems of nontrivial splits.
  for (int n : {4, 5, 6}) {
    std::vector<std::uint32_t> all;
    for (std::uint32_t m = 2; m < (1u << n); m += 2) {  // avoid leaf 0's side
      const int c = std::popcount(m);
      if (c >= 2 && n - c >= 2) all.push_back(m);
    }
    std::set<Structure> shapes;
    long long labelled = 0;
    std::vector<std::uint32_t> chosen;
    std::function<void(std::size_t)> rec = [&](std::size_t idx) {
      if (idx == all.size()) {
        ++labelled;
        ConcreteStructure c{ClassTag::Tree, n, {}, {}, chosen};
        auto sorted = chosen;
        std::sort(sorted.begin(), sorted.end());
        c.splits = sorted;
        shapes.insert(canonical_form(c).first);
        return;
      }
      rec(idx + 1);
      for (std::uint32_t s : chosen)
        if (!compat(s, all[idx], n)) return;
      chosen.push_back(all[idx]);
      rec(idx + 1);
      chosen.pop_back();
    };
    rec(0);
    if (n == 4) CHECK(labelled == 4);    // 1 star + 3 binary quartets
    if (n == 5) CHECK(labelled == 26);   // series-reduced labelled trees
    if (n == 6) CHECK(labelled == 236);
    CHECK(shapes.size() == enumerate_structures(ClassTag::Tree, n).size());
    for (const auto& s : enumerate_structures(ClassTag::Tree, n))
      CHECK(shapes.count(s) == 1);
  }
}

TEST_CASE("canonical form is idempotent on enumerated structures") {
  for (auto cls : {ClassTag::FinSet, ClassTag::LinOrd, ClassTag::CycOrd, ClassTag::Tree}) {
    const int top = cls == ClassTag::Tree ? 6 : 5;
    for (int n = 0; n <= top; ++n)
      for (const auto& s : enumerate_structures(cls, n)) {
        auto [c, relab] = canonical_form(to_concrete(s));
        CHECK(c == s);
      }
  }
}

TEST_CASE("embedding counts") {
  CHECK(enumerate_embeddings(make_structure(ClassTag::LinOrd, 2),
                             make_structure(ClassTag::LinOrd, 3))
            .size() == 3);
  CHECK(enumerate_embeddings(make_structure(ClassTag::FinSet, 2),
                             make_structure(ClassTag::FinSet, 3))
            .size() == 6);
  CHECK(enumerate_embeddings(make_structure(ClassTag::CycOrd, 3),
                             make_structure(ClassTag::CycOrd, 4))
            .size() == 12);

  const auto trees4 = enumerate_structures(ClassTag::Tree, 4);
  const Structure star3 = make_structure(ClassTag::Tree, 3);
  const Structure star4{ClassTag::Tree, 4, {}};
  CHECK(enumerate_embeddings(star3, star4).size() == 24);

  // Two-cherry tree ((0,1),(2,3)): automorphisms swap within and across cherries.
  Structure cherry;
  for (const auto& s : trees4)
    if (!s.splits.empty()) cherry = s;
  CHECK(cherry.enc() == "((0,1),(2,3))");
  CHECK(enumerate_embeddings(cherry, cherry).size() == 8);
  CHECK(structure_automorphisms(cherry).size() == 8);
  CHECK(enumerate_embeddings(star4, star4).size() == 24);

  // Every reported embedding really is one.
  for (const auto& e : enumerate_embeddings(star3, cherry))
    CHECK(is_embedding(to_concrete(star3), to_concrete(cherry), e.map));
  CHECK_THROWS_AS(enumerate_embeddings(make_structure(ClassTag::FinSet, 2),
                                       make_structure(ClassTag::LinOrd, 3)),
                  UsageError);
}

TEST_CASE("amalgamation counts over the empty base") {
  auto fs = [](int n) { return make_structure(ClassTag::FinSet, n); };
  auto lo = [](int n) { return make_structure(ClassTag::LinOrd, n); };
  CHECK(amalgamation_count(fs(1), fs(1)) == 2);
  CHECK(amalgamation_count(lo(1), lo(1)) == 3);
  CHECK(amalgamation_count(lo(2), lo(2)) == 13);
  CHECK(amalgamation_count(fs(2), fs(2)) == 7);
  CHECK(amalgamation_count(lo(1), lo(2)) == 5);

  // Linear orders glue like lattice paths with diagonal steps.
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n)
      CHECK(amalgamation_count(lo(m), lo(n)) == delannoy(m, n));

  // Plain sets glue by choosing a partial matching.
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) {
      long long want = 0;
      for (int k = 0; k <= std::min(m, n); ++k)
        want += binom(m, k) * binom(n, k) * factorial(k);
      CHECK(amalgamation_count(fs(m), fs(n)) == want);
    }
}

TEST_CASE("amalgamation is symmetric and covers are embeddings") {
  std::vector<Structure> pool;
  for (auto cls : {ClassTag::FinSet, ClassTag::LinOrd, ClassTag::CycOrd}) {
    for (int n = 1; n <= 3; ++n) pool.push_back(make_structure(cls, n));
  }
  for (const auto& s : enumerate_structures(ClassTag::Tree, 4)) pool.push_back(s);
  for (const auto& x : pool)
    for (const auto& y : pool) {
      if (x.cls != y.cls) continue;
      CHECK(amalgamation_count(x, y) == amalgamation_count(y, x));
    }

  const Structure a = make_structure(ClassTag::LinOrd, 1);
  const Structure b = make_structure(ClassTag::LinOrd, 2);
  const Embedding i{{0}};
  const Embedding j{{1}};
  const auto ams = enumerate_amalgamations(a, b, i, b, j);
  for (const auto& am : ams) {
    CHECK(is_embedding(to_concrete(b), to_concrete(am.total), am.cover_left));
    CHECK(is_embedding(to_concrete(b), to_concrete(am.total), am.cover_right));
    CHECK(am.cover_left[i.map[0]] == am.cover_right[j.map[0]]);
    CHECK(am.total.size == 4 - 1 - static_cast<int>(am.theta.size()));
  }
  // i places the base point low, j places it high: the two free points are
  // forced to opposite sides of the base and cannot be merged.
  CHECK(ams.size() == 1);
}

TEST_CASE("disjoint gluing always exists in the registered classes") {
  CHECK(strong_amalgamation_check(ClassTag::FinSet, 4));
  CHECK(strong_amalgamation_check(ClassTag::LinOrd, 4));
  CHECK(strong_amalgamation_check(ClassTag::CycOrd, 4));
  CHECK(strong_amalgamation_check(ClassTag::Tree, 4));
}

TEST_CASE("tree doubling sprouts a cherry at every leaf") {
  const Structure edge2 = make_structure(ClassTag::Tree, 2);
  auto [d2, e2] = tree_double(edge2);
  CHECK(d2.size == 4);
  CHECK(d2.enc() == "((0,1),(2,3))");
  CHECK(is_embedding(to_concrete(edge2), to_concrete(d2), e2.map));

  const Structure star4{ClassTag::Tree, 4, {}};
  auto [d4, e4] = tree_double(star4);
  CHECK(d4.size == 8);
  CHECK(is_embedding(to_concrete(star4), to_concrete(d4), e4.map));
  // Four cherries hanging off a hub: 2^4 cherry swaps x 4! cherry permutations.
  CHECK(structure_automorphisms(d4).size() == 384);

  // Doubling doubles leaf count; iterate from the single edge.
  auto [d8, e8] = tree_double(d4);
  CHECK(d8.size == 16);
  CHECK(is_embedding(to_concrete(d4), to_concrete(d8), e8.map));

  // Invariant: the double has at least 2^leaves automorphisms.
  for (int n = 2; n <= 5; ++n)
    for (const auto& s : enumerate_structures(ClassTag::Tree, n)) {
      auto [ds, emb] = tree_double(s);
      CHECK(structure_automorphisms(ds).size() >= (1u << n));
    }
}

TEST_CASE("rigidity of doubles, sets, and orders") {
  const Structure star3 = make_structure(ClassTag::Tree, 3);
  auto [d3, e3] = tree_double(star3);
  CHECK(rigidity_check(star3, d3, e3));

  const Structure fs2 = make_structure(ClassTag::FinSet, 2);
  CHECK_FALSE(rigidity_check(fs2, fs2, Embedding{{0, 1}}));

  const Structure lo3 = make_structure(ClassTag::LinOrd, 3);
  CHECK(rigidity_check(make_structure(ClassTag::LinOrd, 2), lo3, Embedding{{0, 2}}));
  CHECK(rigidity_check(lo3, lo3, Embedding{{0, 1, 2}}));

  // Every double is rigid over its core (each cherry has one pinned sprout).
  for (int n = 2; n <= 5; ++n)
    for (const auto& s : enumerate_structures(ClassTag::Tree, n)) {
      auto [ds, emb] = tree_double(s);
      CHECK(rigidity_check(s, ds, emb));
    }
}

TEST_CASE("encodings are stable") {
  CHECK(make_structure(ClassTag::FinSet, 3).enc() == "{0,1,2}");
  CHECK(make_structure(ClassTag::LinOrd, 3).enc() == "0<1<2");
  CHECK(make_structure(ClassTag::CycOrd, 4).enc() == "(0 1 2 3)");
  CHECK(make_structure(ClassTag::Tree, 3).enc() == "(0,1,2)");
  CHECK(Structure{ClassTag::Tree, 4, {}}.enc() == "(0,1,2,3)");
}
