#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oligocat/errors.hpp"
#include "oligocat/permcat.hpp"

#include <set>
#include <string>

using namespace oligo;

namespace {

Structure lin(int n) { return make_structure(ClassTag::LinOrd, n); }
Structure fin(int n) { return make_structure(ClassTag::FinSet, n); }

// The unique solution that is nonvanishing on every shape.
MeasureSolution lin_regular(int depth) {
  auto res = solve_measures(ClassTag::LinOrd, depth);
  for (const auto& s : res.solutions)
    if (regularity_check(s, std::min(depth, 4)).regular) return s;
  throw std::logic_error("no regular solution found");
}

// The falling-factorial family normalized by mu(point orbit) = t.
MeasureSolution fin_symbolic(int depth) {
  auto res = solve_measures(ClassTag::FinSet, depth, {{fin(1), RatFunc::t()}});
  REQUIRE(res.solutions.size() == 1);
  return res.solutions.front();
}

// Deterministic small entries over the hom basis; occasional zeros keep the
// matrices honestly sparse.
PermMorphism seeded_morphism(const PermObject& x, const PermObject& y, int seed) {
  PermMorphism r{x, y, {}};
  int s = seed % 11;
  for (const auto& l : hom_basis(x, y)) {
    s = (s * 31 + 7) % 11;
    r.set(l, RatFunc(s - 5));
  }
  return r;
}

}  // namespace

TEST_CASE("hom bases match orbit counts") {
  CHECK(hom_basis(perm_object(lin(2)), perm_object(lin(2))).size() == 13);
  CHECK(hom_basis(perm_object(fin(1)), perm_object(fin(1))).size() == 2);

  // Hom into or out of the unit is the orbit list of the other side.
  CHECK(hom_basis(perm_object(lin(2)), unit_object(ClassTag::LinOrd)).size() == 1);
  CHECK(hom_basis(unit_object(ClassTag::FinSet), perm_object(fin(2))).size() == 1);
  CHECK(hom_basis(unit_object(ClassTag::LinOrd), unit_object(ClassTag::LinOrd)).size() == 1);

  GSetSum sum;
  sum.add(lin(1));
  sum.add(lin(2));
  PermObject x = perm_object(ClassTag::LinOrd, sum);
  REQUIRE(x.comps.size() == 2);
  CHECK(hom_basis(x, x).size() == 3 + 5 + 5 + 13);

  std::set<std::string> labels;
  for (const auto& l : hom_basis(perm_object(lin(2)), perm_object(lin(2))))
    labels.insert(hom_label_str(l));
  CHECK(labels.size() == 13);
}

TEST_CASE("identity laws for composition") {
  MeasureSolution mu = lin_regular(6);
  PermObject q1 = perm_object(lin(1)), q2 = perm_object(lin(2));
  PermMorphism a = seeded_morphism(q1, q2, 3);
  CHECK(compose(identity_morphism(q2), a, mu) == a);
  CHECK(compose(a, identity_morphism(q1), mu) == a);

  MeasureSolution mt = fin_symbolic(4);
  PermObject o1 = perm_object(fin(1)), o2 = perm_object(fin(2));
  PermMorphism b = seeded_morphism(o1, o2, 5);
  CHECK(compose(identity_morphism(o2), b, mt) == b);
  CHECK(compose(b, identity_morphism(o1), mt) == b);
}

TEST_CASE("all-ones squares to its integral weight") {
  // FinSet: J . J = t J on C(Omega).
  MeasureSolution mt = fin_symbolic(3);
  PermObject om = perm_object(fin(1));
  PermMorphism j = ones_morphism(om, om);
  CHECK(compose(j, j, mt) == scale(RatFunc::t(), j));

  // LinOrd with the regular measure: J . J = (-1) J on C(Q).
  MeasureSolution mu = lin_regular(3);
  PermObject q = perm_object(lin(1));
  PermMorphism jq = ones_morphism(q, q);
  CHECK(compose(jq, jq, mu) == scale(RatFunc(-1), jq));
}

TEST_CASE("counit after unit integrates the total measure") {
  MeasureSolution mt = fin_symbolic(3);
  PermObject om = perm_object(fin(1));
  PermMorphism pairing = compose(counit_integration(om), unit_constants(om), mt);
  CHECK(pairing == scale(RatFunc::t(), identity_morphism(unit_object(ClassTag::FinSet))));

  MeasureSolution mu = lin_regular(3);
  PermObject q = perm_object(lin(1));
  CHECK(compose(counit_integration(q), unit_constants(q), mu) ==
        scale(RatFunc(-1), identity_morphism(unit_object(ClassTag::LinOrd))));
}

TEST_CASE("composition is associative") {
  MeasureSolution mu = lin_regular(6);
  PermObject q1 = perm_object(lin(1)), q2 = perm_object(lin(2));
  PermMorphism a = seeded_morphism(q1, q1, 2);
  PermMorphism b = seeded_morphism(q1, q2, 3);
  PermMorphism c = seeded_morphism(q2, q2, 4);
  CHECK(compose(compose(c, b, mu), a, mu) == compose(c, compose(b, a, mu), mu));

  MeasureSolution mt = fin_symbolic(4);
  PermObject o1 = perm_object(fin(1)), o2 = perm_object(fin(2));
  PermMorphism af = seeded_morphism(o1, o1, 6);
  PermMorphism bf = seeded_morphism(o1, o2, 7);
  PermMorphism cf = seeded_morphism(o2, o2, 8);
  CHECK(compose(compose(cf, bf, mt), af, mt) == compose(cf, compose(bf, af, mt), mt));
}

TEST_CASE("tensor products") {
  PermObject q1 = perm_object(lin(1)), q2 = perm_object(lin(2));

  TensorDecomp t2 = tensor_object(q1, q1);
  REQUIRE(t2.obj.comps.size() == 3);  // merged point + the two ordered splits
  CHECK(t2.obj.comps[0].size + t2.obj.comps[1].size + t2.obj.comps[2].size == 5);

  // id (x) id = id on the product object.
  TensorDecomp t12 = tensor_object(q1, q2);
  CHECK(tensor(identity_morphism(q1), identity_morphism(q2)) == identity_morphism(t12.obj));

  // Transpose is monoidal: (A (x) B)^t = A^t (x) B^t.
  PermMorphism a = seeded_morphism(q1, q1, 7);
  PermMorphism b = seeded_morphism(q2, q1, 9);
  CHECK(dual(tensor(a, b)) == tensor(dual(a), dual(b)));

  // J (x) J is the all-ones matrix on Omega x Omega.
  PermObject om = perm_object(fin(1));
  PermMorphism j = ones_morphism(om, om);
  TensorDecomp tf = tensor_object(om, om);
  CHECK(tensor(j, j) == ones_morphism(tf.obj, tf.obj));
}

TEST_CASE("duality is an involutive antihomomorphism") {
  MeasureSolution mu = lin_regular(6);
  PermObject q1 = perm_object(lin(1)), q2 = perm_object(lin(2));
  PermMorphism a = seeded_morphism(q1, q2, 11);
  PermMorphism b = seeded_morphism(q2, q2, 13);

  CHECK(dual(dual(a)) == a);
  CHECK(dual(compose(b, a, mu)) == compose(dual(a), dual(b), mu));

  // The transpose of integration is the constants map.
  CHECK(dual(counit_integration(q2)) == unit_constants(q2));
  CHECK(dual(counit_integration(perm_object(fin(2)))) ==
        unit_constants(perm_object(fin(2))));
  CHECK(dual(unit_constants(q2)) == counit_integration(q2));
}

TEST_CASE("categorical dimension and trace") {
  MeasureSolution mt = fin_symbolic(4);
  const RatFunc t = RatFunc::t();
  CHECK(trace_dim(perm_object(fin(2)), mt) == t * (t - RatFunc(1)));
  CHECK(trace_dim(unit_object(ClassTag::FinSet), mt) == RatFunc(1));

  MeasureSolution mu = lin_regular(6);
  CHECK(trace_dim(unit_object(ClassTag::LinOrd), mu) == RatFunc(1));
  CHECK(trace_dim(perm_object(lin(1)), mu) == RatFunc(-1));
  CHECK(trace_dim(perm_object(lin(2)), mu) == RatFunc(1));
  CHECK(trace_dim(perm_object(lin(3)), mu) == RatFunc(-1));

  // trace(id) = dim, pinned for C(Q^(2)).
  CHECK(trace(identity_morphism(perm_object(lin(2))), mu) == RatFunc(1));

  // Dimension is multiplicative on tensor products.
  for (int na = 1; na <= 2; ++na)
    for (int nb = 1; nb <= 2; ++nb) {
      PermObject xa = perm_object(lin(na)), xb = perm_object(lin(nb));
      CHECK(trace_dim(tensor_object(xa, xb).obj, mu) ==
            trace_dim(xa, mu) * trace_dim(xb, mu));
      PermObject fa = perm_object(fin(na)), fb = perm_object(fin(nb));
      CHECK(trace_dim(tensor_object(fa, fb).obj, mt) ==
            trace_dim(fa, mt) * trace_dim(fb, mt));
    }

  // Cyclicity of the trace.
  PermObject q1 = perm_object(lin(1)), q2 = perm_object(lin(2));
  PermMorphism a = seeded_morphism(q1, q2, 17);
  PermMorphism b = seeded_morphism(q2, q1, 19);
  CHECK(trace(compose(b, a, mu), mu) == trace(compose(a, b, mu), mu));

  PermObject o1 = perm_object(fin(1)), o2 = perm_object(fin(2));
  PermMorphism af = seeded_morphism(o1, o2, 21);
  PermMorphism bf = seeded_morphism(o2, o1, 23);
  CHECK(trace(compose(bf, af, mt), mt) == trace(compose(af, bf, mt), mt));
}

TEST_CASE("trace agrees with the unit/counit composite") {
  MeasureSolution mu = lin_regular(6);
  PermObject x = perm_object(lin(1));
  TensorDecomp t2 = tensor_object(x, x);
  PermMorphism ev = compose(counit_integration(x), diagonal_restriction(x, t2), mu);
  PermMorphism coev = dual(ev);
  PermMorphism a = seeded_morphism(x, x, 29);
  PermMorphism loop =
      compose(ev, compose(tensor(a, identity_morphism(x)), coev, mu), mu);
  CHECK(loop == scale(trace(a, mu), identity_morphism(unit_object(ClassTag::LinOrd))));
}

TEST_CASE("frobenius laws hold for the diagonal algebra") {
  MeasureSolution mt = fin_symbolic(4);
  FrobeniusReport rf = frobenius_check(perm_object(fin(1)), mt);
  CHECK(rf.pass);
  CHECK(rf.failures.empty());

  MeasureSolution mu6 = lin_regular(6);
  FrobeniusReport rq1 = frobenius_check(perm_object(lin(1)), mu6);
  CHECK(rq1.pass);

  MeasureSolution mu7 = lin_regular(7);
  FrobeniusReport rq2 = frobenius_check(perm_object(lin(2)), mu7);
  CHECK(rq2.pass);
  CHECK(rq2.failures.empty());
}

TEST_CASE("sum objects compose componentwise") {
  MeasureSolution mu = lin_regular(6);
  GSetSum sum;
  sum.add(lin(1));
  sum.add(lin(2));
  PermObject x = perm_object(ClassTag::LinOrd, sum);

  PermMorphism e = seeded_morphism(x, x, 31);
  CHECK(compose(identity_morphism(x), e, mu) == e);
  CHECK(compose(e, identity_morphism(x), mu) == e);

  // dim is additive over components: mu(Q) + mu(Q^(2)) = -1 + 1 = 0.
  CHECK(trace_dim(x, mu) == RatFunc(0));
  CHECK(trace(identity_morphism(x), mu) == RatFunc(0));
}

TEST_CASE("composition failure modes") {
  MeasureSolution mu = lin_regular(3);
  PermObject q1 = perm_object(lin(1)), q2 = perm_object(lin(2));

  // Middle objects must match exactly.
  PermMorphism a = seeded_morphism(q1, q2, 3);
  PermMorphism b = seeded_morphism(q1, q1, 5);
  CHECK_THROWS_AS(compose(b, a, mu), UsageError);

  // A measure vanishing on a receiving orbit is rejected by name.
  auto res = solve_measures(ClassTag::LinOrd, 3);
  const MeasureSolution* degenerate = nullptr;
  for (const auto& s : res.solutions)
    if (eval_measure(s, lin(1)).is_zero()) degenerate = &s;
  REQUIRE(degenerate != nullptr);
  PermMorphism j = ones_morphism(q1, q1);
  try {
    compose(j, j, *degenerate);
    FAIL("expected a regularity error");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find("not regular") != std::string::npos);
  }

  // Shapes beyond the solved depth are refused.
  PermObject q3 = perm_object(lin(3));
  PermMorphism big = ones_morphism(q3, q3);
  CHECK_THROWS_AS(compose(big, big, mu), UsageError);

  // Trace needs an endomorphism.
  CHECK_THROWS_AS(trace(a, mu), UsageError);

  // Tensor does not mix classes.
  CHECK_THROWS_AS(tensor_object(q1, perm_object(fin(1))), UsageError);
}
