#pragma once

// Exact scalar arithmetic: arbitrary-precision rationals, univariate rational
// functions in t, and small finite fields F_q (q a prime power <= 64).

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace oligo {

// ---------------------------------------------------------------------------
// Rat: exact rational, always canonical (gcd-reduced, positive denominator).
// ---------------------------------------------------------------------------
class Rat {
public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}
  Rat(long n, long d);
  explicit Rat(const mpz_class& n) : v_(n) {}
  explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }
  // Parses "p", "p/q", or "-p/q".
  static Rat parse(const std::string& s);

  Rat operator+(const Rat& o) const { return Rat(mpq_class(v_ + o.v_)); }
  Rat operator-(const Rat& o) const { return Rat(mpq_class(v_ - o.v_)); }
  Rat operator*(const Rat& o) const { return Rat(mpq_class(v_ * o.v_)); }
  Rat operator/(const Rat& o) const;
  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }

  bool operator==(const Rat& o) const { return v_ == o.v_; }
  bool operator!=(const Rat& o) const { return v_ != o.v_; }
  bool operator<(const Rat& o) const { return v_ < o.v_; }

  bool is_zero() const { return v_ == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }
  // "p" when the denominator is 1, else "p/q".
  std::string str() const;

private:
  mpq_class v_;
};

// ---------------------------------------------------------------------------
// Poly: dense univariate polynomial over Rat; no trailing zero coefficients.
// ---------------------------------------------------------------------------
class Poly {
public:
  Poly() {}
  Poly(const Rat& c) { if (!c.is_zero()) coef_ = {c}; }
  Poly(long c) : Poly(Rat(c)) {}
  explicit Poly(std::vector<Rat> coef) : coef_(std::move(coef)) { trim(); }
  static Poly t();  // the indeterminate

  int degree() const { return static_cast<int>(coef_.size()) - 1; }  // -1 = zero
  bool is_zero() const { return coef_.empty(); }
  const Rat& operator[](size_t i) const { return coef_[i]; }
  Rat lead() const { return coef_.back(); }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  bool operator==(const Poly& o) const { return coef_ == o.coef_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Division with remainder (denominator must be nonzero).
  static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
  static Poly gcd(const Poly& a, const Poly& b);  // monic gcd (or zero)
  Poly monic() const;

  Rat eval(const Rat& v) const;
  std::string str() const;  // descending powers, e.g. "t^2 - 3t + 1"

private:
  void trim();
  std::vector<Rat> coef_;  // coef_[i] multiplies t^i
};

// ---------------------------------------------------------------------------
// RatFunc: rational function num/den with den monic and gcd(num, den) = 1.
// ---------------------------------------------------------------------------
class RatFunc {
public:
  RatFunc() : num_(), den_(1) {}
  RatFunc(long c) : num_(c), den_(1) {}
  RatFunc(const Rat& c) : num_(c), den_(1) {}
  RatFunc(const Poly& p) : num_(p), den_(1) {}
  RatFunc(const Poly& n, const Poly& d);
  static RatFunc t() { return RatFunc(Poly::t()); }

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  bool is_zero() const { return num_.is_zero(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  // Exact evaluation at t = v; throws on a pole.
  Rat eval(const Rat& v) const;
  std::string str() const;  // "num" or "(num)/(den)"

private:
  Poly num_, den_;
};

// ---------------------------------------------------------------------------
// FqElem: element of F_q.  Prime q: integers mod q.  Prime powers up to 64:
// polynomial representation over F_p via a fixed irreducible polynomial,
// encoded in base p.
// ---------------------------------------------------------------------------
class FqElem {
public:
  FqElem() : val_(0), q_(2) {}
  FqElem(unsigned v, unsigned q);
  static bool supported(unsigned q);

  unsigned value() const { return val_; }
  unsigned q() const { return q_; }
  bool is_zero() const { return val_ == 0; }

  FqElem operator+(const FqElem& o) const;
  FqElem operator-(const FqElem& o) const;
  FqElem operator*(const FqElem& o) const;
  FqElem operator/(const FqElem& o) const;
  FqElem operator-() const;
  FqElem inv() const;
  bool operator==(const FqElem& o) const { return val_ == o.val_ && q_ == o.q_; }
  bool operator!=(const FqElem& o) const { return !(*this == o); }

  std::string str() const;  // "v mod q"

private:
  void check_same(const FqElem& o) const;
  unsigned val_, q_;
};

}  // namespace oligo
