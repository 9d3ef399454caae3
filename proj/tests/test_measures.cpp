#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oligocat/errors.hpp"
#include "oligocat/fraisse.hpp"
#include "oligocat/gset.hpp"
#include "oligocat/measures.hpp"
#include "oligocat/scalars.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

using namespace oligo;

namespace {

Structure lo(int n) { return make_structure(ClassTag::LinOrd, n); }
Structure fs(int n) { return make_structure(ClassTag::FinSet, n); }
Structure cy(int n) { return make_structure(ClassTag::CycOrd, n); }

RatFunc rf(long v) { return RatFunc(v); }

// The solved value attached to the extension type with the given conjugacy
// label over the given base.
RatFunc value_of(const MeasureSolution& sol, const Structure& base,
                 const std::string& label) {
  for (const ExtensionType& e : extension_types(base))
    if (e.label == label) {
      const RatFunc* v = sol.find(e.minimal);
      REQUIRE(v != nullptr);
      return *v;
    }
  FAIL("no extension type labelled " << label);
  return RatFunc(0);
}

long long falling(long long n, int k) {
  long long r = 1;
  for (int i = 0; i < k; ++i) r *= n - i;
  return r;
}

}  // namespace

TEST_CASE("one-point extension types carry conjugacy labels") {
  // Dense order over a two-point base: left ray, bounded gap, right ray.
  auto lin2 = extension_types(lo(2));
  CHECK(lin2.size() == 3);
  std::set<std::string> lin_labels;
  for (const auto& e : lin2) lin_labels.insert(e.label);
  CHECK(lin_labels == std::set<std::string>{"x<0<1", "0<x<1", "0<1<x"});

  // Pure set: a single type no matter the base size.
  for (int n = 1; n <= 4; ++n) {
    auto ext = extension_types(fs(n));
    CHECK(ext.size() == 1);
    CHECK(ext[0].label == fs(n).enc() + "+x");
  }

  // Cyclic order over a triangle: three arcs, all conjugate under rotation.
  auto cyc3 = extension_types(cy(3));
  CHECK(cyc3.size() == 3);
  std::set<std::string> cyc_labels;
  std::set<FiberType> cyc_minimal;
  for (const auto& e : cyc3) {
    cyc_labels.insert(e.label);
    cyc_minimal.insert(e.minimal);
  }
  CHECK(cyc_labels.size() == 1);
  CHECK(cyc_minimal.size() == 1);
  // The shared scalar lives over a two-point base (the arc forgets the
  // opposite vertex).
  CHECK(cyc3[0].minimal.base.size == 2);
}

TEST_CASE("minimal supports aggregate deeper types onto core scalars") {
  // Every extension type over a chain reduces to one of: the empty-base
  // type, the two rays, or the bounded gap.
  std::set<FiberType> mins;
  for (int sz = 0; sz <= 5; ++sz)
    for (const auto& e : extension_types(lo(sz))) mins.insert(e.minimal);
  CHECK(mins.size() == 4);

  // Cyclic orders collapse onto bases of size <= 2.
  std::set<FiberType> cyc_mins;
  for (int sz = 0; sz <= 5; ++sz)
    for (const auto& e : extension_types(cy(sz))) cyc_mins.insert(e.minimal);
  CHECK(cyc_mins.size() == 3);
  for (const auto& m : cyc_mins) CHECK(m.base.size <= 2);

  // Pure-set types never reduce: the support is the full base.
  for (int sz = 0; sz <= 5; ++sz) {
    auto ext = extension_types(fs(sz));
    REQUIRE(ext.size() == 1);
    CHECK(ext[0].minimal.base.size == sz);
  }
}

TEST_CASE("dense linear order admits exactly four measures") {
  SolveResult res = solve_measures(ClassTag::LinOrd, 3);
  CHECK(!res.underdetermined);
  REQUIRE(res.solutions.size() == 4);

  std::set<std::pair<std::string, std::string>> ray_pairs;
  for (const MeasureSolution& sol : res.solutions) {
    // The bounded gap is forced to -1 in every solution.
    CHECK(value_of(sol, lo(2), "0<x<1") == rf(-1));
    RatFunc left = value_of(sol, lo(1), "x<0");
    RatFunc right = value_of(sol, lo(1), "0<x");
    CHECK((left == rf(0) || left == rf(-1)));
    CHECK((right == rf(0) || right == rf(-1)));
    ray_pairs.insert({left.str(), right.str()});
    // mu(Omega) = 1 + left + right by additivity over a single point.
    CHECK(eval_measure(sol, lo(1)) == rf(1) + left + right);
    // The trivial transitive set has measure 1.
    CHECK(eval_measure(sol, lo(0)) == rf(1));
  }
  CHECK(ray_pairs.size() == 4);  // all four sign patterns occur
}

TEST_CASE("dense cyclic order admits exactly one measure") {
  SolveResult res = solve_measures(ClassTag::CycOrd, 3);
  CHECK(!res.underdetermined);
  REQUIRE(res.solutions.size() == 1);
  const MeasureSolution& sol = res.solutions[0];
  CHECK(eval_measure(sol, cy(0)) == rf(1));
  CHECK(eval_measure(sol, cy(1)) == rf(0));  // the circle has measure 0
  CHECK(value_of(sol, cy(1), "{0}+x") == rf(-1));
  CHECK(value_of(sol, cy(2), "(0 1 x)") == rf(-1));
}

TEST_CASE("pure set measures form a one-parameter family") {
  // Without normalization the variety is positive-dimensional.
  SolveResult free = solve_measures(ClassTag::FinSet, 4);
  CHECK(free.underdetermined);
  CHECK(free.solutions.empty());
  CHECK(free.detail.find("underdetermined at depth 4") != std::string::npos);

  // Pinning mu(Omega) = t picks out the symbolic family.
  SolveResult res =
      solve_measures(ClassTag::FinSet, 4, {{fs(1), RatFunc::t()}});
  CHECK(!res.underdetermined);
  REQUIRE(res.solutions.size() == 1);
  const MeasureSolution& sol = res.solutions[0];

  const RatFunc t = RatFunc::t();
  CHECK(eval_measure(sol, fs(1)) == t);
  CHECK(eval_measure(sol, fs(2)) == t * (t - rf(1)));
  CHECK(eval_measure(sol, fs(3)) == t * (t - rf(1)) * (t - rf(2)));
  CHECK(eval_measure(sol, fs(5)) ==
        t * (t - rf(1)) * (t - rf(2)) * (t - rf(3)) * (t - rf(4)));

  // Specialization t = N counts injections: N! / (N-n)!.
  for (long n = 0; n <= 6; ++n)
    for (int k = 0; k <= 5; ++k)
      CHECK(eval_measure(sol, fs(k)).eval(Rat(n)) ==
            (k <= n ? Rat(falling(n, k)) : Rat(0)));
}

TEST_CASE("solution counts are stable in the depth") {
  for (int depth = 3; depth <= 5; ++depth) {
    CAPTURE(depth);
    CHECK(solve_measures(ClassTag::LinOrd, depth).solutions.size() == 4);
    CHECK(solve_measures(ClassTag::CycOrd, depth).solutions.size() == 1);
    SolveResult fin =
        solve_measures(ClassTag::FinSet, depth, {{fs(1), RatFunc::t()}});
    CHECK(fin.solutions.size() == 1);
    CHECK(!fin.underdetermined);
  }
}

TEST_CASE("normalization can pin or exclude solutions") {
  // mu(Omega) = -1 picks out the regular measure of the dense order.
  SolveResult reg = solve_measures(ClassTag::LinOrd, 3, {{lo(1), rf(-1)}});
  REQUIRE(reg.solutions.size() == 1);
  CHECK(value_of(reg.solutions[0], lo(1), "x<0") == rf(-1));
  CHECK(value_of(reg.solutions[0], lo(1), "0<x") == rf(-1));

  // mu(Omega) = 5 is unattainable: empty list, not underdetermined.
  SolveResult none = solve_measures(ClassTag::LinOrd, 3, {{lo(1), rf(5)}});
  CHECK(none.solutions.empty());
  CHECK(!none.underdetermined);

  // Contradictory pins likewise yield the empty list.
  SolveResult clash = solve_measures(ClassTag::FinSet, 3,
                                     {{fs(1), RatFunc::t()}, {fs(1), rf(2)}});
  CHECK(clash.solutions.empty());
  CHECK(!clash.underdetermined);
}

TEST_CASE("measures evaluate by chains and respect the product identity") {
  SolveResult res = solve_measures(ClassTag::LinOrd, 6);
  REQUIRE(res.solutions.size() == 4);

  int regular_count = 0;
  const MeasureSolution* regular = nullptr;
  for (const MeasureSolution& sol : res.solutions) {
    RegularityReport rr = regularity_check(sol, 6);
    if (rr.regular) {
      ++regular_count;
      regular = &sol;
    } else {
      CHECK(!rr.vanishing.empty());
    }
  }
  // Exactly one of the four measures never vanishes on a transitive set.
  CHECK(regular_count == 1);
  REQUIRE(regular != nullptr);

  // The regular measure takes value (-1)^n on n-point chains.
  for (int n = 0; n <= 6; ++n)
    CHECK(eval_measure(*regular, lo(n)) == rf(n % 2 ? -1 : 1));

  // mu(Q)^2 = mu(Q) + 2 mu(Q^(2)): 1 = -1 + 2.
  GSetSum dec = product_decompose(lo(1), lo(1));
  CHECK(eval_measure(*regular, lo(1)) * eval_measure(*regular, lo(1)) ==
        eval_measure_sum(*regular, dec));
  CHECK(eval_measure_sum(*regular, dec) == rf(1));
}

TEST_CASE("verification passes for every returned solution") {
  for (const MeasureSolution& sol : solve_measures(ClassTag::LinOrd, 4).solutions) {
    VerifyReport rep = verify_measure(sol, 4);
    CHECK(rep.pass);
    CHECK(rep.failures.empty());
  }
  {
    SolveResult res = solve_measures(ClassTag::CycOrd, 4);
    REQUIRE(res.solutions.size() == 1);
    CHECK(verify_measure(res.solutions[0], 4).pass);
  }
  {
    SolveResult res =
        solve_measures(ClassTag::FinSet, 4, {{fs(1), RatFunc::t()}});
    REQUIRE(res.solutions.size() == 1);
    const MeasureSolution& sol = res.solutions[0];
    CHECK(verify_measure(sol, 3).pass);
    // t^2 = t + t(t-1) on Omega x Omega.
    const RatFunc t = RatFunc::t();
    CHECK(eval_measure_sum(sol, product_decompose(fs(1), fs(1))) == t * t);
  }
}

TEST_CASE("a broken assignment fails verification") {
  SolveResult res = solve_measures(ClassTag::LinOrd, 3);
  REQUIRE(!res.solutions.empty());
  MeasureSolution bad = res.solutions[0];
  // Corrupt one scalar; additivity and the product identity must notice.
  REQUIRE(!bad.values.empty());
  bad.values[0].second += rf(7);
  VerifyReport rep = verify_measure(bad, 3);
  CHECK(!rep.pass);
  CHECK(!rep.failures.empty());
}

TEST_CASE("regularity search reports vanishing transitive sets") {
  // The t = 2 specialization kills the three-point orbit set.
  SolveResult res = solve_measures(ClassTag::FinSet, 4, {{fs(1), rf(2)}});
  REQUIRE(res.solutions.size() == 1);
  const MeasureSolution& sol = res.solutions[0];
  CHECK(eval_measure(sol, fs(3)) == rf(0));
  RegularityReport rr = regularity_check(sol, 3);
  CHECK(!rr.regular);
  REQUIRE(!rr.vanishing.empty());
  CHECK(std::find(rr.vanishing.begin(), rr.vanishing.end(), fs(3)) !=
        rr.vanishing.end());

  // The symbolic family never vanishes: t(t-1)...(t-k+1) != 0 in the field.
  SolveResult sym =
      solve_measures(ClassTag::FinSet, 4, {{fs(1), RatFunc::t()}});
  REQUIRE(sym.solutions.size() == 1);
  CHECK(regularity_check(sym.solutions[0], 5).regular);
}

TEST_CASE("guards: depth, class gating, and eval bounds") {
  CHECK_THROWS_AS(solve_measures(ClassTag::LinOrd, 2), UsageError);
  CHECK_THROWS_AS(solve_measures(ClassTag::Tree, 3), UsageError);

  // Tree solving is reachable behind the flag; at this depth the system is
  // honestly underdetermined.
  SolveResult tree = solve_measures(ClassTag::Tree, 3, {}, true);
  CHECK(tree.underdetermined);
  CHECK(tree.detail.find("underdetermined at depth 3") != std::string::npos);

  SolveResult res = solve_measures(ClassTag::LinOrd, 3);
  REQUIRE(!res.solutions.empty());
  CHECK_THROWS_AS(eval_measure(res.solutions[0], lo(5)), UsageError);
  CHECK_THROWS_AS(eval_measure(res.solutions[0], fs(1)), UsageError);
  CHECK_THROWS_AS(verify_measure(res.solutions[0], 4), UsageError);
  CHECK_THROWS_AS(regularity_check(res.solutions[0], 5), UsageError);
}
