#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "oligocat/errors.hpp"
#include "oligocat/glfq.hpp"

using namespace oligo;

namespace {

Mat scalar_mat(int n, int c) {
  Mat m = identity_mat(n);
  for (int i = 0; i < n; ++i) m[i][i] = c;
  return m;
}

Mat transvection(int n, int i, int j) {
  Mat m = identity_mat(n);
  m[i][j] = 1;
  return m;
}

Mat diag(const std::vector<int>& d) {
  Mat m(d.size(), std::vector<int>(d.size(), 0));
  for (size_t i = 0; i < d.size(); ++i) m[i][i] = d[i];
  return m;
}

std::vector<Mat> all_invertible(int q, int n) {
  const Fq F(q);
  std::vector<Mat> out;
  long long total = 1;
  for (int i = 0; i < n * n; ++i) total *= q;
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    Mat m(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        m[i][j] = static_cast<int>(c % q);
        c /= q;
      }
    if (matrix_rank(F, m) == n) out.push_back(std::move(m));
  }
  return out;
}

std::vector<int> apply(const Fq& F, const Mat& m, const std::vector<int>& v) {
  std::vector<int> r(m.size(), 0);
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j)
      r[i] = F.add(r[i], F.mul(m[i][j], v[j]));
  return r;
}

bool outside_span(const Fq& F, Mat span, const std::vector<int>& v) {
  const int before = matrix_rank(F, span);
  span.push_back(v);
  return matrix_rank(F, span) == before + 1;
}

// Extended matrix used by the growth construction: window plus tail slots.
Mat extended(const GLWindowElem& g, int m) {
  const int n = static_cast<int>(g.window.size());
  Mat gm(m, std::vector<int>(m, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gm[i][j] = g.window[i][j];
  for (int i = n; i < m; ++i) gm[i][i] = g.tail;
  return gm;
}

int recomputed_span(const GLWindowElem& g, const GrowthResult& res) {
  const Fq F(g.q);
  const Mat gm = extended(g, res.extended_dim);
  Mat rows = res.witness;
  for (const auto& u : res.witness) rows.push_back(apply(F, gm, u));
  return matrix_rank(F, rows);
}

}  // namespace

TEST_CASE("field arithmetic over prime and prime-power orders") {
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    const Fq F(q);
    CHECK(F.q() == q);
    for (int a = 1; a < q; ++a) CHECK(F.mul(a, F.inv(a)) == 1);
    for (int a = 0; a < q; ++a) {
      CHECK(F.add(a, F.neg(a)) == 0);
      CHECK(F.mul(a, 1) == a);
      CHECK(F.mul(a, 0) == 0);
      for (int b = 0; b < q; ++b) {
        CHECK(F.mul(a, b) == F.mul(b, a));
        CHECK(F.add(a, b) == F.add(b, a));
      }
    }
  }
  const Fq F4(4);
  CHECK(F4.p() == 2);
  CHECK(F4.deg() == 2);
  for (int a = 0; a < 4; ++a) CHECK(F4.add(a, a) == 0);  // characteristic 2
  for (int a = 1; a < 4; ++a)
    CHECK(F4.mul(a, F4.mul(a, a)) == 1);  // multiplicative order divides 3
  CHECK_THROWS_AS(Fq(1), UsageError);
  CHECK_THROWS_AS(Fq(6), UsageError);
  CHECK_THROWS_AS(Fq(12), UsageError);
  CHECK_THROWS_AS(Fq(65), UsageError);
}

TEST_CASE("matrix rank, product, and inverse") {
  const Fq F(3);
  CHECK(matrix_rank(F, identity_mat(4)) == 4);
  CHECK(matrix_rank(F, Mat{{1, 2}, {2, 2}}) == 2);
  CHECK(matrix_rank(F, Mat{{1, 2}, {2, 1}}) == 1);  // det = 1 - 4 = 0 mod 3
  const Mat a{{1, 1}, {0, 1}};
  const Mat ai = mat_inverse(F, a);
  CHECK(mat_mul(F, a, ai) == identity_mat(2));
  CHECK(mat_mul(F, ai, a) == identity_mat(2));
  CHECK_THROWS_AS(mat_inverse(F, Mat{{1, 2}, {2, 1}}), VerifyError);
  CHECK(mat_sub_scalar(F, scalar_mat(3, 2), 1) == identity_mat(3));
}

TEST_CASE("window element validation") {
  CHECK_THROWS_AS(make_window_elem(2, Mat{{1, 0}}, 1), UsageError);
  CHECK_THROWS_AS(make_window_elem(2, Mat{{1, 0}, {0, 0}}, 1), UsageError);
  CHECK_THROWS_AS(make_window_elem(2, Mat{{1, 0}, {0, 2}}, 1), UsageError);
  CHECK_THROWS_AS(make_window_elem(2, identity_mat(2), 0), UsageError);
  CHECK_THROWS_AS(make_window_elem(3, identity_mat(2), 3), UsageError);
  CHECK_THROWS_AS(make_window_elem(2, Mat{}, 1), UsageError);
  const GLWindowElem g = make_window_elem(3, diag({1, 2}), 2);
  CHECK(g.q == 3);
  CHECK(g.tail == 2);
}

TEST_CASE("classification returns the tail scalar and its rank distance") {
  // Scalar matrices sit at distance zero from their own scalar.
  const GLWindowElem s2 = make_window_elem(3, scalar_mat(3, 2), 2);
  CHECK(csmooth_classify(s2) == ClassifyResult{2, 0});
  const GLWindowElem id5 = make_window_elem(2, identity_mat(5), 1);
  CHECK(csmooth_classify(id5) == ClassifyResult{1, 0});

  // A transvection differs from the identity in rank one.
  const GLWindowElem tv = make_window_elem(2, transvection(3, 0, 1), 1);
  CHECK(csmooth_classify(tv) == ClassifyResult{1, 1});

  // The tail decides the scalar even when the window is scalar for a
  // different value: diag(2,2,2) with tail 1 classifies at rank 3.
  const GLWindowElem far = make_window_elem(3, scalar_mat(3, 2), 1);
  CHECK(csmooth_classify(far) == ClassifyResult{1, 3});

  // Prime-power field: scalar window over F_4.
  const GLWindowElem f4 = make_window_elem(4, scalar_mat(2, 3), 3);
  CHECK(csmooth_classify(f4) == ClassifyResult{3, 0});
  const GLWindowElem f4t = make_window_elem(4, transvection(2, 1, 0), 1);
  CHECK(csmooth_classify(f4t) == ClassifyResult{1, 1});

  // Cross-check against an independent rank computation over GL_2(F_3).
  const Fq F(3);
  const auto gl23 = all_invertible(3, 2);
  CHECK(gl23.size() == 48);
  for (const auto& w : gl23)
    for (int tail = 1; tail < 3; ++tail) {
      const ClassifyResult r = csmooth_classify(GLWindowElem{3, w, tail});
      CHECK(r.alpha == tail);
      CHECK(r.rank == matrix_rank(F, mat_sub_scalar(F, w, tail)));
    }
}

TEST_CASE("compression into the top-left block") {
  const Fq F2(2);
  // A transvection spread at rows 3,4 of a 6-window compresses to 2x2.
  const GLWindowElem spread = make_window_elem(2, transvection(6, 2, 3), 1);
  const BlockResult br = conjugate_into_block(spread);
  CHECK(br.block == 2);
  const Mat pinv = mat_inverse(F2, br.conjugator);
  CHECK(mat_mul(F2, br.conjugator, mat_mul(F2, spread.window, pinv)) ==
        br.h.window);
  const Mat diff = mat_sub_scalar(F2, br.h.window, 1);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (i >= 2 || j >= 2) CHECK(diff[i][j] == 0);
  CHECK(csmooth_classify(br.h) == csmooth_classify(spread));

  // Already-compressed input returns the identity conjugator.
  const GLWindowElem packed = make_window_elem(2, transvection(4, 0, 1), 1);
  CHECK(conjugate_into_block(packed).conjugator == identity_mat(4));
  const GLWindowElem scal = make_window_elem(3, scalar_mat(4, 2), 2);
  const BlockResult sb = conjugate_into_block(scal);
  CHECK(sb.conjugator == identity_mat(4));
  CHECK(sb.block == 0);

  // Window too small to hold 2r: a fixed-point-free 2x2 over F_2.
  const GLWindowElem tight = make_window_elem(2, Mat{{0, 1}, {1, 1}}, 1);
  CHECK(csmooth_classify(tight).rank == 2);
  CHECK_THROWS_AS(conjugate_into_block(tight), UsageError);
}

TEST_CASE("compression verified across full small general linear groups") {
  const auto gl32 = all_invertible(2, 3);
  CHECK(gl32.size() == 168);
  const Fq F2(2);
  int compressed = 0;
  for (const auto& w : gl32) {
    const GLWindowElem g{2, w, 1};
    const int r = csmooth_classify(g).rank;
    if (2 * r > 3) {
      CHECK_THROWS_AS(conjugate_into_block(g), UsageError);
      continue;
    }
    const BlockResult br = conjugate_into_block(g);
    ++compressed;
    CHECK(br.block == 2 * r);
    const Mat pinv = mat_inverse(F2, br.conjugator);
    CHECK(mat_mul(F2, br.conjugator, mat_mul(F2, w, pinv)) == br.h.window);
    const Mat diff = mat_sub_scalar(F2, br.h.window, 1);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i >= br.block || j >= br.block) CHECK(diff[i][j] == 0);
  }
  CHECK(compressed > 0);

  const Fq F3(3);
  for (const auto& w : all_invertible(3, 2))
    for (int tail = 1; tail < 3; ++tail) {
      const GLWindowElem g{3, w, tail};
      const int r = csmooth_classify(g).rank;
      if (2 * r > 2) continue;
      const BlockResult br = conjugate_into_block(g);
      const Mat pinv = mat_inverse(F3, br.conjugator);
      CHECK(mat_mul(F3, br.conjugator, mat_mul(F3, w, pinv)) == br.h.window);
    }
}

TEST_CASE("avoidance search with adversarial subspace families") {
  const Fq F2(2);
  // One proper hyperplane and two small lines inside F_2^4.
  const Mat hyper{{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  const Mat line1{{1, 0, 0, 0}};
  const Mat line2{{1, 1, 0, 0}};
  const auto v = avoid_subspaces(F2, 4, {hyper}, {line1, line2});
  CHECK(outside_span(F2, hyper, v));
  CHECK(outside_span(F2, line1, v));
  CHECK(outside_span(F2, line2, v));

  // Two proper hyperplanes (q - 1 = 2 over F_3) plus small lines in F_3^3.
  const Fq F3(3);
  const Mat h1{{0, 1, 0}, {0, 0, 1}};
  const Mat h2{{1, 0, 0}, {0, 0, 1}};
  const Mat l1{{1, 1, 0}};
  const Mat l2{{1, 2, 0}};
  const auto w = avoid_subspaces(F3, 3, {h1, h2}, {l1, l2});
  for (const Mat& sub : {h1, h2, l1, l2}) CHECK(outside_span(F3, sub, w));

  // Honesty: three lines cover F_2^2, so when the counting bound cannot be
  // met inside the ambient space the search reports failure.
  CHECK_THROWS_AS(
      avoid_subspaces(F2, 2, {Mat{{1, 0}}}, {Mat{{0, 1}}, Mat{{1, 1}}}),
      VerifyError);

  // More than q-1 proper subspaces is rejected.
  CHECK_THROWS_AS(avoid_subspaces(F2, 3, {Mat{{1, 0, 0}}, Mat{{0, 1, 0}}}, {}),
                  UsageError);
  // A full space listed as proper is rejected.
  CHECK_THROWS_AS(avoid_subspaces(F2, 2, {Mat{{1, 0}, {0, 1}}}, {}),
                  UsageError);
}

TEST_CASE("growth dichotomy: certificates") {
  // Transvection at slack 1: rank 1 <= 2.
  const GLWindowElem tv = make_window_elem(2, transvection(6, 0, 1), 1);
  const GrowthResult r1 = subspace_growth(tv, 1);
  CHECK(r1.certificate);
  CHECK(r1.alpha == 1);
  CHECK(r1.rank == 1);
  CHECK(r1.witness.empty());

  // Identity at slack 0: rank 0.
  const GrowthResult r2 = subspace_growth(make_window_elem(2, identity_mat(2), 1), 0);
  CHECK(r2.certificate);
  CHECK(r2.alpha == 1);
  CHECK(r2.rank == 0);
}

TEST_CASE("growth dichotomy: witnesses") {
  // Mixed-multiplicity diagonal over F_3 at slack 1: rank 3 > 2 forces a
  // witness with dim(U + gU) = 4.
  const GLWindowElem mixed = make_window_elem(3, diag({1, 1, 1, 2, 2, 2}), 1);
  const GrowthResult wr = subspace_growth(mixed, 1);
  CHECK_FALSE(wr.certificate);
  CHECK(wr.witness.size() == 2);
  CHECK(wr.extended_dim == 10);
  CHECK(wr.span_dim == 4);
  CHECK(recomputed_span(mixed, wr) == 4);

  // Slack 0 on a non-scalar element.
  const GLWindowElem tv2 = make_window_elem(2, transvection(2, 0, 1), 1);
  const GrowthResult w0 = subspace_growth(tv2, 0);
  CHECK_FALSE(w0.certificate);
  CHECK(w0.witness.size() == 1);
  CHECK(w0.span_dim == 2);
  CHECK(recomputed_span(tv2, w0) == 2);

  // The same element flips arms as the slack crosses ceil(r/2): rank 3
  // inside a 10-window gives a witness at s = 1 and a certificate at s = 2.
  const GLWindowElem wide =
      make_window_elem(3, diag({1, 1, 1, 1, 1, 1, 1, 2, 2, 2}), 1);
  CHECK(csmooth_classify(wide).rank == 3);
  const GrowthResult ws1 = subspace_growth(wide, 1);
  CHECK_FALSE(ws1.certificate);
  CHECK(recomputed_span(wide, ws1) == 4);
  const GrowthResult ws2 = subspace_growth(wide, 2);
  CHECK(ws2.certificate);
  CHECK(ws2.rank == 3);

  CHECK_THROWS_AS(subspace_growth(make_window_elem(2, identity_mat(4), 1), 1),
                  UsageError);
  CHECK_THROWS_AS(subspace_growth(tv2, -1), UsageError);
}

TEST_CASE("growth dichotomy holds across full small general linear groups") {
  // Every invertible 2x2 and 3x3 window over F_2, and 2x2 over F_3, at
  // slack 0: certificate exactly for scalar windows matching the tail.
  for (const auto& w : all_invertible(2, 2)) {
    const GLWindowElem g{2, w, 1};
    const GrowthResult res = subspace_growth(g, 0);
    CHECK(res.certificate == (w == identity_mat(2)));
    if (!res.certificate) CHECK(recomputed_span(g, res) == 2);
  }
  for (const auto& w : all_invertible(2, 3)) {
    const GLWindowElem g{2, w, 1};
    const GrowthResult res = subspace_growth(g, 0);
    CHECK(res.certificate == (w == identity_mat(3)));
    if (!res.certificate) CHECK(recomputed_span(g, res) == 2);
  }
  for (const auto& w : all_invertible(3, 2))
    for (int tail = 1; tail < 3; ++tail) {
      const GLWindowElem g{3, w, tail};
      const GrowthResult res = subspace_growth(g, 0);
      CHECK(res.certificate == (w == scalar_mat(2, tail)));
      if (!res.certificate) CHECK(recomputed_span(g, res) == 2);
    }
}

TEST_CASE("growth at slack 1 over a structured six-window family") {
  const Fq F3(3);
  // All diagonal sign patterns over F_3: rank(w - 1) counts the twos.
  for (int code = 0; code < (1 << 6); ++code) {
    std::vector<int> d(6);
    int twos = 0;
    for (int i = 0; i < 6; ++i) {
      d[i] = (code >> i) & 1 ? 2 : 1;
      twos += (code >> i) & 1;
    }
    const GLWindowElem g = make_window_elem(3, diag(d), 1);
    const GrowthResult res = subspace_growth(g, 1);
    CHECK(res.certificate == (twos <= 2));
    if (res.certificate) {
      CHECK(res.rank == twos);
    } else {
      CHECK(recomputed_span(g, res) == 4);
    }
  }
  // Permutation windows over F_2: rank(w - 1) = 6 - #cycles.
  const std::vector<std::vector<int>> perms{
      {0, 1, 2, 3, 4, 5}, {1, 0, 2, 3, 4, 5}, {1, 0, 3, 2, 4, 5},
      {1, 0, 3, 2, 5, 4}, {1, 2, 0, 4, 5, 3}, {1, 2, 3, 4, 5, 0}};
  const std::vector<int> expected_rank{0, 1, 2, 3, 4, 5};
  for (size_t t = 0; t < perms.size(); ++t) {
    Mat w(6, std::vector<int>(6, 0));
    for (int i = 0; i < 6; ++i) w[perms[t][i]][i] = 1;
    const GLWindowElem g = make_window_elem(2, w, 1);
    CHECK(csmooth_classify(g).rank == expected_rank[t]);
    const GrowthResult res = subspace_growth(g, 1);
    CHECK(res.certificate == (expected_rank[t] <= 2));
    if (!res.certificate) CHECK(recomputed_span(g, res) == 4);
  }
  // A companion matrix with no eigenvalues: full rank distance.
  const Mat comp{{0, 0, 0, 0, 0, 1}, {1, 0, 0, 0, 0, 1}, {0, 1, 0, 0, 0, 0},
                 {0, 0, 1, 0, 0, 1}, {0, 0, 0, 1, 0, 1}, {0, 0, 0, 0, 1, 0}};
  const GLWindowElem g = make_window_elem(2, comp, 1);
  const GrowthResult res = subspace_growth(g, 1);
  CHECK_FALSE(res.certificate);
  CHECK(recomputed_span(g, res) == 4);
}

TEST_CASE("homogeneous level of paired tuples") {
  // Two grade-0 basis vectors span a plane.
  const HomTuple t1{2, {{{1, 0}, {}}, {{0, 1}, {}}}};
  CHECK(homogeneous_level(t1) == 2);
  // A mixed vector splits into both graded components.
  const HomTuple t2{2, {{{1}, {1}}}};
  CHECK(homogeneous_level(t2) == 2);
  // Dependent grade-0 parts and one grade-1 part.
  const HomTuple t3{2, {{{1, 0}, {}}, {{1, 1}, {}}, {{}, {1}}}};
  CHECK(homogeneous_level(t3) == 3);
  // Duplicates add nothing; the empty tuple sits at level zero.
  CHECK(homogeneous_level(HomTuple{2, {{{1}, {}}, {{1}, {}}}}) == 1);
  CHECK(homogeneous_level(HomTuple{3, {}}) == 0);
  CHECK_THROWS_AS(homogeneous_level(HomTuple{2, {{{2}, {}}}}), UsageError);

  // Levels add under concatenation with fresh coordinates.
  const HomTuple left{3, {{{1, 2}, {1}}, {{0, 1}, {}}}};
  const HomTuple right{3, {{{2}, {1, 1}}}};
  HomTuple joined{3, {}};
  for (const auto& v : left.vectors) joined.vectors.push_back(v);
  for (const auto& v : right.vectors) {
    HomVector shifted{{0, 0}, {0}};
    for (int c : v.e_part) shifted.e_part.push_back(c);
    for (int c : v.f_part) shifted.f_part.push_back(c);
    joined.vectors.push_back(shifted);
  }
  CHECK(homogeneous_level(joined) ==
        homogeneous_level(left) + homogeneous_level(right));
}

TEST_CASE("pairing between graded components") {
  const HomTuple t{2, {{{1}, {}}, {{}, {1}}, {{1}, {1}}}};
  CHECK(pair_form(t, 0, 1) == 1);  // <e_1, f_1>
  CHECK(pair_form(t, 1, 0) == 0);  // no e-part against no f-part
  CHECK(pair_form(t, 0, 0) == 0);
  CHECK(pair_form(t, 2, 2) == 1);
  const HomTuple u{3, {{{1, 2}, {}}, {{}, {2, 2}}}};
  CHECK(pair_form(u, 0, 1) == 0);  // 1*2 + 2*2 = 6 = 0 mod 3
  CHECK_THROWS_AS(pair_form(t, 0, 3), UsageError);
}
