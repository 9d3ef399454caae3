#include "oligocat/glfq.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "oligocat/errors.hpp"
#include "oligocat/scalars.hpp"

namespace oligo {

// Tables are built once from the FqElem scalar type so that all finite-field
// arithmetic in the project shares one representation.
Fq::Fq(int q) : q_(q) {
  if (q < 2 || q > 64 || !FqElem::supported(static_cast<unsigned>(q)))
    throw UsageError("field order must be a prime power between 2 and 64");
  int p = 2;
  while (q % p != 0) ++p;
  p_ = p;
  k_ = 0;
  for (int m = q; m > 1; m /= p) ++k_;
  const unsigned uq = static_cast<unsigned>(q);
  mul_.assign(static_cast<size_t>(q) * q, 0);
  add_.assign(static_cast<size_t>(q) * q, 0);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      const FqElem fa(static_cast<unsigned>(a), uq), fb(static_cast<unsigned>(b), uq);
      mul_[static_cast<size_t>(a) * q + b] = static_cast<int>((fa * fb).value());
      add_[static_cast<size_t>(a) * q + b] = static_cast<int>((fa + fb).value());
    }
  inv_.assign(q, 0);
  neg_.assign(q, 0);
  for (int a = 0; a < q; ++a)
    neg_[a] = static_cast<int>((-FqElem(static_cast<unsigned>(a), uq)).value());
  for (int a = 1; a < q; ++a)
    inv_[a] = static_cast<int>(FqElem(static_cast<unsigned>(a), uq).inv().value());
}

int Fq::add(int a, int b) const { return add_[static_cast<size_t>(a) * q_ + b]; }

int Fq::neg(int a) const { return neg_[a]; }

int Fq::sub(int a, int b) const { return add(a, neg_[b]); }

int Fq::inv(int a) const {
  if (a == 0) throw UsageError("division by zero in finite field");
  return inv_[a];
}

Mat identity_mat(int n) {
  Mat m(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Mat mat_mul(const Fq& F, const Mat& a, const Mat& b) {
  const int n = static_cast<int>(a.size());
  const int k = static_cast<int>(b.size());
  const int m = k > 0 ? static_cast<int>(b[0].size()) : 0;
  Mat r(n, std::vector<int>(m, 0));
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (int j = 0; j < m; ++j)
        r[i][j] = F.add(r[i][j], F.mul(a[i][t], b[t][j]));
    }
  return r;
}

Mat mat_add_scalar(const Fq& F, Mat a, int scalar) {
  for (size_t i = 0; i < a.size(); ++i) a[i][i] = F.add(a[i][i], scalar);
  return a;
}

Mat mat_sub_scalar(const Fq& F, Mat a, int scalar) {
  return mat_add_scalar(F, std::move(a), F.neg(scalar));
}

namespace {

// Row-reduce in place; returns the rank.
int rref(const Fq& F, Mat& m) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows > 0 ? static_cast<int>(m[0].size()) : 0;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pivot = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[r], m[pivot]);
    const int s = F.inv(m[r][c]);
    for (int j = 0; j < cols; ++j) m[r][j] = F.mul(m[r][j], s);
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const int f = m[i][c];
      for (int j = 0; j < cols; ++j)
        m[i][j] = F.sub(m[i][j], F.mul(f, m[r][j]));
    }
    ++r;
  }
  return r;
}

// Basis of {x : m x = 0}.
std::vector<std::vector<int>> nullspace(const Fq& F, Mat m) {
  const int cols = m.empty() ? 0 : static_cast<int>(m[0].size());
  const int rank = rref(F, m);
  std::vector<int> pivot_col;
  std::vector<bool> is_pivot(cols, false);
  for (int r = 0; r < rank; ++r) {
    int c = 0;
    while (m[r][c] == 0) ++c;
    pivot_col.push_back(c);
    is_pivot[c] = true;
  }
  std::vector<std::vector<int>> basis;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<int> v(cols, 0);
    v[c] = 1;
    for (int r = 0; r < rank; ++r) v[pivot_col[r]] = F.neg(m[r][c]);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Reduced row-echelon basis of the span of the given vectors.
Mat reduce_span(const Fq& F, Mat vectors) {
  const int rank = rref(F, vectors);
  vectors.resize(rank);
  return vectors;
}

bool in_span(const Fq& F, const Mat& rref_basis, std::vector<int> v) {
  for (const auto& row : rref_basis) {
    int c = 0;
    while (c < static_cast<int>(row.size()) && row[c] == 0) ++c;
    if (c == static_cast<int>(row.size())) continue;
    const int f = v[c];
    if (f == 0) continue;
    for (size_t j = 0; j < v.size(); ++j)
      v[j] = F.sub(v[j], F.mul(f, row[j]));
  }
  return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

std::vector<int> mat_vec(const Fq& F, const Mat& m, const std::vector<int>& v) {
  std::vector<int> r(m.size(), 0);
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j)
      r[i] = F.add(r[i], F.mul(m[i][j], v[j]));
  return r;
}

void validate_entries(int q, const Mat& m) {
  for (const auto& row : m)
    for (int x : row)
      if (x < 0 || x >= q) throw UsageError("matrix entry out of field range");
}

}  // namespace

int matrix_rank(const Fq& F, Mat m) { return rref(F, m); }

Mat mat_inverse(const Fq& F, const Mat& a) {
  const int n = static_cast<int>(a.size());
  Mat aug(n, std::vector<int>(2 * n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  rref(F, aug);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (aug[i][j] != (i == j ? 1 : 0))
        throw VerifyError("matrix is singular");
  Mat inv(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

GLWindowElem make_window_elem(int q, Mat window, int tail) {
  const Fq F(q);
  const int n = static_cast<int>(window.size());
  if (n == 0) throw UsageError("window must be nonempty");
  for (const auto& row : window)
    if (static_cast<int>(row.size()) != n)
      throw UsageError("window must be square");
  validate_entries(q, window);
  if (tail <= 0 || tail >= q) throw UsageError("tail must be a nonzero scalar");
  if (matrix_rank(F, window) < n) throw UsageError("window must be invertible");
  return GLWindowElem{q, std::move(window), tail};
}

ClassifyResult csmooth_classify(const GLWindowElem& g) {
  const Fq F(g.q);
  // Off the window g acts as tail * id, so any other scalar sits at infinite
  // rank distance: the tail is the unique candidate.
  const int alpha = g.tail;
  const int r = matrix_rank(F, mat_sub_scalar(F, g.window, alpha));
  return ClassifyResult{alpha, r};
}

BlockResult conjugate_into_block(const GLWindowElem& g) {
  const Fq F(g.q);
  const int n = static_cast<int>(g.window.size());
  const int alpha = g.tail;
  const Mat M = mat_sub_scalar(F, g.window, alpha);
  const int r = matrix_rank(F, M);
  const int block = 2 * r;
  if (block > n) throw UsageError("window too small to hold the 2r block");

  bool already = true;
  for (int i = 0; i < n && already; ++i)
    for (int j = 0; j < n && already; ++j)
      if ((i >= block || j >= block) && M[i][j] != 0) already = false;
  if (already) return BlockResult{identity_mat(n), g, block};

  // Basis: the column space of M first, then a completion, then a
  // complement of the column space inside ker M.  In that basis the
  // nonscalar part lands in rows <= r and columns <= 2r.
  Mat cols(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cols[j][i] = M[i][j];
  const Mat img = reduce_span(F, cols);          // dim r
  const auto ker = nullspace(F, M);              // dim n - r

  std::vector<std::vector<int>> tail_vecs;
  Mat acc = img;
  for (const auto& kv : ker) {
    if (static_cast<int>(tail_vecs.size()) == n - block) break;
    if (in_span(F, acc, kv)) continue;
    tail_vecs.push_back(kv);
    acc.push_back(kv);
    acc = reduce_span(F, acc);
  }
  if (static_cast<int>(tail_vecs.size()) != n - block)
    throw VerifyError("kernel complement construction failed");

  std::vector<std::vector<int>> middle;
  for (int c = 0; c < n && static_cast<int>(middle.size()) < block - r; ++c) {
    std::vector<int> e(n, 0);
    e[c] = 1;
    if (in_span(F, acc, e)) continue;
    middle.push_back(e);
    acc.push_back(e);
    acc = reduce_span(F, acc);
  }
  if (static_cast<int>(middle.size()) != block - r)
    throw VerifyError("basis completion failed");

  Mat B(n, std::vector<int>(n, 0));  // columns are the new basis vectors
  int col = 0;
  for (const auto& v : img) {
    for (int i = 0; i < n; ++i) B[i][col] = v[i];
    ++col;
  }
  for (const auto& v : middle) {
    for (int i = 0; i < n; ++i) B[i][col] = v[i];
    ++col;
  }
  for (const auto& v : tail_vecs) {
    for (int i = 0; i < n; ++i) B[i][col] = v[i];
    ++col;
  }
  const Mat P = mat_inverse(F, B);
  const Mat hw = mat_mul(F, P, mat_mul(F, g.window, B));
  const Mat check = mat_sub_scalar(F, hw, alpha);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((i >= block || j >= block) && check[i][j] != 0)
        throw VerifyError("block compression left support outside the block");
  return BlockResult{P, GLWindowElem{g.q, hw, g.tail}, block};
}

std::vector<int> avoid_subspaces(const Fq& F, int dim,
                                 const std::vector<Mat>& proper,
                                 const std::vector<Mat>& small) {
  const int q = F.q();
  if (static_cast<int>(proper.size()) > q - 1)
    throw UsageError("at most q-1 proper subspaces are allowed");
  std::vector<Mat> proper_b, small_b;
  int small_dim = 0;
  for (const auto& sp : small) {
    Mat b = reduce_span(F, sp);
    small_dim = std::max(small_dim, static_cast<int>(b.size()));
    small_b.push_back(std::move(b));
  }
  Mat seed;  // one vector outside each proper subspace
  for (const auto& sp : proper) {
    Mat b = reduce_span(F, sp);
    if (static_cast<int>(b.size()) >= dim)
      throw UsageError("subspace listed as proper is the whole space");
    std::vector<int> w;
    for (int c = 0; c < dim; ++c) {
      std::vector<int> e(dim, 0);
      e[c] = 1;
      if (!in_span(F, b, e)) {
        w = std::move(e);
        break;
      }
    }
    seed.push_back(std::move(w));
    proper_b.push_back(std::move(b));
  }

  // Search window dimension d with q^(d-1) > (#small) * q^(small_dim),
  // computed from the cardinality count, then a spanning window containing
  // every seed vector.
  const std::uint64_t kHuge = UINT64_C(1) << 62;
  std::uint64_t bound = static_cast<std::uint64_t>(small_b.size());
  for (int i = 0; i < small_dim && bound < kHuge; ++i) bound *= q;
  int d = 1;
  for (std::uint64_t pw = 1; pw <= bound && d < dim; ++d) {
    if (pw >= kHuge) break;
    pw *= q;
  }
  Mat window = reduce_span(F, seed);
  for (int c = 0; c < dim && static_cast<int>(window.size()) < d; ++c) {
    std::vector<int> e(dim, 0);
    e[c] = 1;
    if (in_span(F, window, e)) continue;
    window.push_back(std::move(e));
    window = reduce_span(F, window);
  }

  const int wd = static_cast<int>(window.size());
  std::uint64_t combos = 1;
  for (int i = 0; i < wd; ++i) {
    combos *= q;
    if (combos > UINT64_C(5'000'000))
      throw ResourceError("avoidance search window too large");
  }
  std::vector<int> coeff(wd, 0);
  for (std::uint64_t it = 1; it < combos; ++it) {
    int pos = 0;
    while (true) {
      coeff[pos] = (coeff[pos] + 1) % q;
      if (coeff[pos] != 0) break;
      ++pos;
    }
    std::vector<int> v(dim, 0);
    for (int i = 0; i < wd; ++i) {
      if (coeff[i] == 0) continue;
      for (int j = 0; j < dim; ++j)
        v[j] = F.add(v[j], F.mul(coeff[i], window[i][j]));
    }
    bool ok = true;
    for (const auto& b : proper_b)
      if (in_span(F, b, v)) {
        ok = false;
        break;
      }
    if (ok)
      for (const auto& b : small_b)
        if (in_span(F, b, v)) {
          ok = false;
          break;
        }
    if (ok) return v;
  }
  throw VerifyError("avoidance search exhausted despite the counting bound");
}

GrowthResult subspace_growth(const GLWindowElem& g, int s) {
  if (s < 0) throw UsageError("slack must be nonnegative");
  const Fq F(g.q);
  const int n = static_cast<int>(g.window.size());
  if (n < 2 * (s + 1) + 2 * s)
    throw UsageError("window too small for the inductive construction");
  const ClassifyResult cls = csmooth_classify(g);
  if (cls.rank <= 2 * s) {
    GrowthResult res;
    res.certificate = true;
    res.alpha = cls.alpha;
    res.rank = cls.rank;
    return res;
  }

  // Work in the window extended by fresh tail coordinates so that every
  // scalar-shifted preimage stays a proper subspace.
  const int ext = 2 * s + 2;
  const int m = n + ext;
  Mat gm(m, std::vector<int>(m, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gm[i][j] = g.window[i][j];
  for (int i = n; i < m; ++i) gm[i][i] = g.tail;
  const Mat gm_inv = mat_inverse(F, gm);

  std::vector<std::vector<int>> U;
  for (int step = 0; step <= s; ++step) {
    Mat both = U;
    for (const auto& u : U) both.push_back(mat_vec(F, gm, u));
    const Mat b_span = reduce_span(F, both);

    // Annihilator equations of span(U + gU).
    Mat K;
    if (b_span.empty()) {
      K = identity_mat(m);
    } else {
      for (auto& row : nullspace(F, b_span)) K.push_back(std::move(row));
    }

    std::vector<Mat> propers;
    for (int alpha = 1; alpha < F.q(); ++alpha) {
      const Mat shifted = mat_sub_scalar(F, gm, alpha);
      const Mat constraint = mat_mul(F, K, shifted);
      Mat w_alpha;
      for (auto& row : nullspace(F, constraint)) w_alpha.push_back(std::move(row));
      propers.push_back(std::move(w_alpha));
    }
    Mat w_inf = U;
    for (const auto& u : U) w_inf.push_back(mat_vec(F, gm_inv, u));
    const std::vector<Mat> smalls{b_span, reduce_span(F, w_inf)};

    U.push_back(avoid_subspaces(F, m, propers, smalls));
  }

  Mat final_span = U;
  for (const auto& u : U) final_span.push_back(mat_vec(F, gm, u));
  const int span_dim = matrix_rank(F, final_span);
  if (span_dim != 2 * (s + 1))
    throw VerifyError("growth witness failed the independence check");
  GrowthResult res;
  res.certificate = false;
  res.witness = std::move(U);
  res.extended_dim = m;
  res.span_dim = span_dim;
  return res;
}

int homogeneous_level(const HomTuple& x) {
  const Fq F(x.q);
  size_t ne = 0, nf = 0;
  for (const auto& v : x.vectors) {
    ne = std::max(ne, v.e_part.size());
    nf = std::max(nf, v.f_part.size());
  }
  Mat e_rows, f_rows;
  for (const auto& v : x.vectors) {
    std::vector<int> e(v.e_part), f(v.f_part);
    e.resize(ne, 0);
    f.resize(nf, 0);
    validate_entries(x.q, Mat{e});
    validate_entries(x.q, Mat{f});
    e_rows.push_back(std::move(e));
    f_rows.push_back(std::move(f));
  }
  return matrix_rank(F, e_rows) + matrix_rank(F, f_rows);
}

int pair_form(const HomTuple& x, int i, int j) {
  if (i < 0 || j < 0 || i >= static_cast<int>(x.vectors.size()) ||
      j >= static_cast<int>(x.vectors.size()))
    throw UsageError("pairing index out of range");
  const Fq F(x.q);
  const auto& e = x.vectors[i].e_part;
  const auto& f = x.vectors[j].f_part;
  int acc = 0;
  for (size_t k = 0; k < std::min(e.size(), f.size()); ++k)
    acc = F.add(acc, F.mul(e[k], f[k]));
  return acc;
}

}  // namespace oligo
