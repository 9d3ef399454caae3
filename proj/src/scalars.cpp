#include "oligocat/scalars.hpp"

#include <algorithm>
#include <array>

namespace oligo {

// ----------------------------------------------------------------- Rat

Rat::Rat(long n, long d) {
  if (d == 0) throw std::domain_error("Rat: zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rat Rat::parse(const std::string& s) {
  mpq_class q(s);
  q.canonicalize();
  return Rat(q);
}

Rat Rat::operator/(const Rat& o) const {
  if (o.is_zero()) throw std::domain_error("Rat: division by zero");
  return Rat(mpq_class(v_ / o.v_));
}

std::string Rat::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_str();
}

// ----------------------------------------------------------------- Poly

void Poly::trim() {
  while (!coef_.empty() && coef_.back().is_zero()) coef_.pop_back();
}

Poly Poly::t() {
  return Poly(std::vector<Rat>{Rat(0), Rat(1)});
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Rat> c(std::max(coef_.size(), o.coef_.size()));
  for (size_t i = 0; i < c.size(); ++i) {
    if (i < coef_.size()) c[i] += coef_[i];
    if (i < o.coef_.size()) c[i] += o.coef_[i];
  }
  return Poly(std::move(c));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  std::vector<Rat> c(coef_.size());
  for (size_t i = 0; i < coef_.size(); ++i) c[i] = -coef_[i];
  return Poly(std::move(c));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  std::vector<Rat> c(coef_.size() + o.coef_.size() - 1);
  for (size_t i = 0; i < coef_.size(); ++i)
    for (size_t j = 0; j < o.coef_.size(); ++j)
      c[i + j] += coef_[i] * o.coef_[j];
  return Poly(std::move(c));
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.is_zero()) throw std::domain_error("Poly: division by zero");
  std::vector<Rat> rem = a.coef_;
  std::vector<Rat> quo;
  int db = b.degree();
  if (static_cast<int>(rem.size()) - 1 >= db)
    quo.assign(rem.size() - db, Rat(0));
  while (static_cast<int>(rem.size()) - 1 >= db) {
    Rat f = rem.back() / b.coef_.back();
    int shift = static_cast<int>(rem.size()) - 1 - db;
    quo[shift] = f;
    for (int i = 0; i <= db; ++i) rem[shift + i] -= f * b.coef_[i];
    while (!rem.empty() && rem.back().is_zero()) rem.pop_back();
  }
  q = Poly(std::move(quo));
  r = Poly(std::move(rem));
}

Poly Poly::gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly q, r;
    divmod(x, y, q, r);
    x = y;
    y = r;
  }
  return x.is_zero() ? x : x.monic();
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Rat inv = Rat(1) / coef_.back();
  std::vector<Rat> c(coef_.size());
  for (size_t i = 0; i < coef_.size(); ++i) c[i] = coef_[i] * inv;
  return Poly(std::move(c));
}

Rat Poly::eval(const Rat& v) const {
  Rat acc(0);
  for (size_t i = coef_.size(); i-- > 0;) acc = acc * v + coef_[i];
  return acc;
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::string out;
  for (size_t i = coef_.size(); i-- > 0;) {
    const Rat& c = coef_[i];
    if (c.is_zero()) continue;
    bool neg = c < Rat(0);
    Rat abs = neg ? -c : c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    bool unit = abs == Rat(1);
    if (i == 0 || !unit) out += abs.str();
    if (i >= 1) {
      out += "t";
      if (i >= 2) out += "^" + std::to_string(i);
    }
  }
  return out;
}

// ----------------------------------------------------------------- RatFunc

RatFunc::RatFunc(const Poly& n, const Poly& d) : num_(n), den_(d) {
  if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  Poly g = Poly::gcd(num_, den_);
  if (g.degree() > 0) {
    Poly q, r;
    Poly::divmod(num_, g, q, r);
    num_ = q;
    Poly::divmod(den_, g, q, r);
    den_ = q;
  }
  Rat lead = den_.lead();
  if (lead != Rat(1)) {
    Rat inv = Rat(1) / lead;
    num_ = num_ * Poly(inv);
    den_ = den_ * Poly(inv);
  }
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator-() const {
  RatFunc r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
  return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (o.is_zero()) throw std::domain_error("RatFunc: division by zero");
  return RatFunc(num_ * o.den_, den_ * o.num_);
}

Rat RatFunc::eval(const Rat& v) const {
  Rat d = den_.eval(v);
  if (d.is_zero()) throw std::domain_error("RatFunc: pole at t = " + v.str());
  return num_.eval(v) / d;
}

std::string RatFunc::str() const {
  if (den_ == Poly(1)) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

// ----------------------------------------------------------------- FqElem

namespace {

struct FqCtx {
  unsigned q, p, k;
  unsigned irred;  // irreducible polynomial encoded in base p (monic, degree k)
};

// Fixed irreducible polynomials for the supported prime powers.
constexpr std::array<FqCtx, 9> kFqTable = {{
    {4, 2, 2, 0b111},         // x^2 + x + 1
    {8, 2, 3, 0b1011},        // x^3 + x + 1
    {16, 2, 4, 0b10011},      // x^4 + x + 1
    {32, 2, 5, 0b100101},     // x^5 + x^2 + 1
    {64, 2, 6, 0b1000011},    // x^6 + x + 1
    {9, 3, 2, 1 * 9 + 0 * 3 + 1},            // x^2 + 1
    {27, 3, 3, 27 + 2 * 3 + 1},              // x^3 + 2x + 1
    {25, 5, 2, 25 + 2},                      // x^2 + 2
    {49, 7, 2, 49 + 1},                      // x^2 + 1
}};

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

const FqCtx* find_ctx(unsigned q) {
  for (const auto& c : kFqTable)
    if (c.q == q) return &c;
  return nullptr;
}

// Digits of x in base p, as a polynomial coefficient vector.
std::vector<unsigned> digits(unsigned x, unsigned p) {
  std::vector<unsigned> d;
  while (x) {
    d.push_back(x % p);
    x /= p;
  }
  return d;
}

unsigned undigits(const std::vector<unsigned>& d, unsigned p) {
  unsigned x = 0;
  for (size_t i = d.size(); i-- > 0;) x = x * p + d[i];
  return x;
}

unsigned poly_mulmod(unsigned a, unsigned b, const FqCtx& c) {
  auto da = digits(a, c.p), db = digits(b, c.p), dm = digits(c.irred, c.p);
  std::vector<unsigned> prod(da.size() + db.size(), 0);
  for (size_t i = 0; i < da.size(); ++i)
    for (size_t j = 0; j < db.size(); ++j)
      prod[i + j] = (prod[i + j] + da[i] * db[j]) % c.p;
  // Reduce modulo the irreducible polynomial (monic of degree k).
  for (size_t i = prod.size(); i-- > c.k;) {
    unsigned f = prod[i];
    if (!f) continue;
    prod[i] = 0;
    for (size_t j = 0; j < dm.size(); ++j) {
      size_t pos = i - c.k + j;
      prod[pos] = (prod[pos] + c.p * c.p - f * dm[j] % c.p) % c.p;
    }
  }
  prod.resize(c.k);
  return undigits(prod, c.p);
}

}  // namespace

bool FqElem::supported(unsigned q) {
  return is_prime(q) ? q <= 64 : find_ctx(q) != nullptr;
}

FqElem::FqElem(unsigned v, unsigned q) : val_(v % q), q_(q) {
  if (!supported(q)) throw std::domain_error("FqElem: unsupported field size " + std::to_string(q));
}

void FqElem::check_same(const FqElem& o) const {
  if (q_ != o.q_) throw std::domain_error("FqElem: field mismatch");
}

FqElem FqElem::operator+(const FqElem& o) const {
  check_same(o);
  if (is_prime(q_)) return FqElem((val_ + o.val_) % q_, q_);
  const FqCtx& c = *find_ctx(q_);
  auto a = digits(val_, c.p), b = digits(o.val_, c.p);
  a.resize(c.k);
  b.resize(c.k);
  for (unsigned i = 0; i < c.k; ++i) a[i] = (a[i] + b[i]) % c.p;
  return FqElem(undigits(a, c.p), q_);
}

FqElem FqElem::operator-() const {
  if (is_prime(q_)) return FqElem((q_ - val_) % q_, q_);
  const FqCtx& c = *find_ctx(q_);
  auto a = digits(val_, c.p);
  a.resize(c.k);
  for (unsigned i = 0; i < c.k; ++i) a[i] = (c.p - a[i]) % c.p;
  return FqElem(undigits(a, c.p), q_);
}

FqElem FqElem::operator-(const FqElem& o) const { return *this + (-o); }

FqElem FqElem::operator*(const FqElem& o) const {
  check_same(o);
  if (is_prime(q_)) return FqElem(val_ * o.val_ % q_, q_);
  return FqElem(poly_mulmod(val_, o.val_, *find_ctx(q_)), q_);
}

FqElem FqElem::inv() const {
  if (is_zero()) throw std::domain_error("FqElem: inverse of zero");
  // a^(q-2) = a^(-1) in F_q.
  FqElem acc(is_prime(q_) ? 1u : 1u, q_);
  FqElem base = *this;
  unsigned e = q_ - 2;
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

FqElem FqElem::operator/(const FqElem& o) const {
  check_same(o);
  return *this * o.inv();
}

std::string FqElem::str() const {
  return std::to_string(val_) + " mod " + std::to_string(q_);
}

}  // namespace oligo
