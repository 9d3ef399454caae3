#pragma once

#include <string>
#include <vector>

// Finite-field linear smallness: classification of window-plus-scalar-tail
// matrices, compression of the nonscalar part into a minimal block, the
// constructive subspace-growth dichotomy, and level via homogeneous span.

namespace oligo {

// Arithmetic in the field with q elements, q = p^k <= 64.  Elements are
// encoded as integers 0..q-1 via base-p digits of polynomial coefficients.
class Fq {
 public:
  explicit Fq(int q);
  int q() const { return q_; }
  int p() const { return p_; }
  int deg() const { return k_; }
  int add(int a, int b) const;
  int sub(int a, int b) const;
  int neg(int a) const;
  int mul(int a, int b) const { return mul_[a * q_ + b]; }
  int inv(int a) const;

 private:
  int q_, p_, k_;
  std::vector<int> mul_, add_, inv_, neg_;
};

using Mat = std::vector<std::vector<int>>;  // row-major, entries 0..q-1

Mat identity_mat(int n);
Mat mat_mul(const Fq& F, const Mat& a, const Mat& b);
Mat mat_add_scalar(const Fq& F, Mat a, int scalar);  // a + scalar*id
Mat mat_sub_scalar(const Fq& F, Mat a, int scalar);  // a - scalar*id
int matrix_rank(const Fq& F, Mat m);
Mat mat_inverse(const Fq& F, const Mat& a);  // throws VerifyError if singular

// An element acting as the window matrix on the first N coordinates and as
// tail * identity beyond them.  Every such element has a unique scalar at
// finite distance, so classification is decidable.
struct GLWindowElem {
  int q = 2;
  Mat window;   // N x N, invertible
  int tail = 1; // nonzero scalar
  bool operator==(const GLWindowElem&) const = default;
};
GLWindowElem make_window_elem(int q, Mat window, int tail);

// The unique scalar alpha at finite rank distance from g (the tail forces
// alpha), together with r = rank(window - alpha*id).
struct ClassifyResult {
  int alpha = 0;
  int rank = 0;
  bool operator==(const ClassifyResult&) const = default;
};
ClassifyResult csmooth_classify(const GLWindowElem& g);

// A conjugator P inside the window with the nonscalar part of P g P^{-1}
// supported in the top-left 2r x 2r block.  Requires N >= 2r.
struct BlockResult {
  Mat conjugator;
  GLWindowElem h;
  int block = 0;  // 2r
};
BlockResult conjugate_into_block(const GLWindowElem& g);

// A vector avoiding each listed subspace of F_q^dim: at most q-1 proper
// ones and any number of small ones, searched over a computed subwindow
// whose cardinality bound guarantees success.  Subspaces are given by
// spanning vectors.
std::vector<int> avoid_subspaces(const Fq& F, int dim,
                                 const std::vector<Mat>& proper,
                                 const std::vector<Mat>& small);

// The growth dichotomy at slack s: either a certificate that
// rank(g - alpha) <= 2s, or a subspace U (built by iterated avoidance in
// an extended window) with U and gU independent, so dim(U+gU) = 2(s+1).
// Requires window size >= 2(s+1) + 2s.
struct GrowthResult {
  bool certificate = false;
  int alpha = 0;                    // certificate arm
  int rank = 0;                     //
  std::vector<std::vector<int>> witness;  // witness arm: basis of U
  int extended_dim = 0;             // coordinates of the witness vectors
  int span_dim = 0;                 // dim(U + gU), equal to 2(s+1)
};
GrowthResult subspace_growth(const GLWindowElem& g, int s);

// A tuple of vectors in the paired window space spanned by e_1..e_N and
// f_1..f_N, each split into its grade-0 (e) and grade-1 (f) components.
struct HomVector {
  std::vector<int> e_part, f_part;
};
struct HomTuple {
  int q = 2;
  std::vector<HomVector> vectors;
};

// The dimension of the homogeneous subspace generated by the tuple: the
// rank of the grade-0 components plus the rank of the grade-1 components.
int homogeneous_level(const HomTuple& x);

// The bilinear form <e-part of vector i, f-part of vector j>.
int pair_form(const HomTuple& x, int i, int j);

}  // namespace oligo
