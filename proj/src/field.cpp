#include "liep/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace liep {

// Polynomial helpers over F_p, used for modulus arithmetic.  Coefficients are
// residues in [0, p), low degree first, with no trailing zeros.
namespace fp {

using P = std::vector<i64>;

static i64 mod(i64 a, i64 p) {
  i64 r = a % p;
  return r < 0 ? r + p : r;
}

static void trim(P& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

static P add(const P& a, const P& b, i64 p) {
  P r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    i64 v = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
    r[i] = mod(v, p);
  }
  trim(r);
  return r;
}

static P scale(const P& a, i64 c, i64 p) {
  P r = a;
  for (auto& v : r) v = mod(v * c, p);
  trim(r);
  return r;
}

static P sub(const P& a, const P& b, i64 p) { return add(a, scale(b, p - 1, p), p); }

static P mul(const P& a, const P& b, i64 p) {
  if (a.empty() || b.empty()) return {};
  P r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = mod(r[i + j] + a[i] * b[j], p);
  trim(r);
  return r;
}

static i64 inv_mod(i64 a, i64 p) {
  // Fermat; p is prime and a != 0 mod p
  i64 r = 1, b = mod(a, p), e = p - 2;
  while (e) {
    if (e & 1) r = mod(r * b, p);
    b = mod(b * b, p);
    e >>= 1;
  }
  return r;
}

// divmod: returns quotient, leaves remainder in a
static P divmod(P& a, const P& d, i64 p) {
  P q;
  if (d.empty()) throw CheckError("fp::divmod by zero polynomial");
  i64 lead_inv = inv_mod(d.back(), p);
  if (a.size() >= d.size()) q.assign(a.size() - d.size() + 1, 0);
  while (a.size() >= d.size() && !a.empty()) {
    i64 c = mod(a.back() * lead_inv, p);
    size_t shift = a.size() - d.size();
    q[shift] = c;
    for (size_t i = 0; i < d.size(); ++i)
      a[shift + i] = mod(a[shift + i] - c * d[i], p);
    trim(a);
  }
  trim(q);
  return q;
}

static P rem(P a, const P& d, i64 p) {
  divmod(a, d, p);
  return a;
}

static P gcd(P a, P b, i64 p) {
  while (!b.empty()) {
    P r = rem(a, b, p);
    a = b;
    b = r;
  }
  if (!a.empty()) a = scale(a, inv_mod(a.back(), p), p);  // monic
  return a;
}

// Rabin test.  f monic of degree k over F_p.
static bool is_irreducible(const P& f, i64 p) {
  int k = int(f.size()) - 1;
  if (k < 1) return false;
  if (k == 1) return true;
  P t{0, 1};
  // t^(p^k) == t mod f
  P x = t;
  for (int i = 0; i < k; ++i) {
    // x <- x^p mod f
    P acc{1};
    P base = x;
    i64 e = p;
    while (e) {
      if (e & 1) acc = rem(mul(acc, base, p), f, p);
      base = rem(mul(base, base, p), f, p);
      e >>= 1;
    }
    x = acc;
  }
  if (sub(x, t, p) != P{}) return false;
  // no factor of degree k/q for prime divisors q of k
  for (int q = 2; q <= k; ++q) {
    if (k % q != 0) continue;
    bool q_prime = true;
    for (int d = 2; d * d <= q; ++d)
      if (q % d == 0) q_prime = false;
    if (!q_prime) continue;
    int m = k / q;
    P xm = t;
    for (int i = 0; i < m; ++i) {
      P acc{1};
      P base = xm;
      i64 e = p;
      while (e) {
        if (e & 1) acc = rem(mul(acc, base, p), f, p);
        base = rem(mul(base, base, p), f, p);
        e >>= 1;
      }
      xm = acc;
    }
    if (gcd(sub(xm, t, p), f, p).size() > 1) return false;
  }
  return true;
}

// extended gcd: returns g and u with u*a == g mod m (g monic)
static std::pair<P, P> ext_gcd_mod(P a, P m, i64 p) {
  P r0 = std::move(m), r1 = std::move(a);
  P u0{}, u1{1};
  while (!r1.empty()) {
    P r = r0;
    P q = divmod(r, r1, p);
    P u = sub(u0, mul(q, u1, p), p);
    r0 = r1;
    r1 = r;
    u0 = u1;
    u1 = u;
  }
  if (!r0.empty()) {
    i64 c = inv_mod(r0.back(), p);
    r0 = scale(r0, c, p);
    u0 = scale(u0, c, p);
  }
  return {r0, u0};
}

}  // namespace fp

static bool is_prime(i64 p) {
  if (p < 2) return false;
  for (i64 d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

FiniteField::FiniteField(i64 p, int k, std::vector<i64> modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)) {
  size_ = 1;
  for (int i = 0; i < k; ++i) size_ *= p;
}

Field FiniteField::make(i64 p, int k) {
  if (!is_prime(p)) throw HypothesisError("field characteristic must be prime");
  if (k < 1) throw HypothesisError("field extension degree must be >= 1");
  if (k == 1)
    return Field(new FiniteField(p, 1, {0, 1}));
  // first irreducible monic polynomial in lexicographic coefficient order
  // (c_0 most significant, low index compared first)
  std::vector<i64> c(k, 0);
  for (;;) {
    std::vector<i64> f = c;
    f.push_back(1);
    if (fp::is_irreducible(f, p)) return Field(new FiniteField(p, k, std::move(f)));
    int pos = k - 1;
    while (pos >= 0 && c[pos] == p - 1) c[pos--] = 0;
    if (pos < 0) throw CheckError("no irreducible modulus found");
    ++c[pos];
  }
}

Field FiniteField::make(i64 p, int k, const std::vector<i64>& modulus) {
  if (!is_prime(p)) throw HypothesisError("field characteristic must be prime");
  if (k < 1) throw HypothesisError("field extension degree must be >= 1");
  if (k == 1) return Field(new FiniteField(p, 1, {0, 1}));
  if (int(modulus.size()) != k + 1 || modulus.back() != 1)
    throw HypothesisError("modulus must be monic of degree k");
  std::vector<i64> m = modulus;
  for (auto& v : m) v = fp::mod(v, p);
  if (!fp::is_irreducible(m, p)) throw HypothesisError("modulus is reducible");
  return Field(new FiniteField(p, k, std::move(m)));
}

Scalar FiniteField::zero() const { return element({}); }
Scalar FiniteField::one() const { return element({1}); }

Scalar FiniteField::from_int(i64 v) const {
  return element({fp::mod(v, p_)});
}

Scalar FiniteField::element(std::vector<i64> coeffs) const {
  if (int(coeffs.size()) > k_) throw HypothesisError("coefficient vector longer than field degree");
  coeffs.resize(k_, 0);
  for (auto& c : coeffs) c = fp::mod(c, p_);
  return Scalar(shared_from_this(), std::move(coeffs));
}

Scalar FiniteField::element_at(i64 index) const {
  if (index < 0 || index >= size_) throw HypothesisError("element index out of range");
  std::vector<i64> c(k_);
  for (int i = 0; i < k_; ++i) {
    c[i] = index % p_;
    index /= p_;
  }
  return Scalar(shared_from_this(), std::move(c));
}

bool FiniteField::same_as(const FiniteField& o) const {
  return p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_;
}

std::string FiniteField::str() const {
  std::ostringstream os;
  os << "GF(" << size_ << ")";
  return os.str();
}

bool same_field(const Field& a, const Field& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_as(*b);
}

static void require_same_field(const Scalar& a, const Scalar& b) {
  if (!same_field(a.field(), b.field()))
    throw HypothesisError("scalar operands from different fields");
}

bool Scalar::is_zero() const {
  for (i64 c : coeffs_)
    if (c) return false;
  return true;
}

bool Scalar::is_one() const {
  if (coeffs_.empty() || coeffs_[0] != 1) return false;
  for (size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i]) return false;
  return true;
}

bool Scalar::in_prime_field() const {
  for (size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i]) return false;
  return true;
}

i64 Scalar::index() const {
  i64 idx = 0, w = 1, p = field_->p();
  for (i64 c : coeffs_) {
    idx += c * w;
    w *= p;
  }
  return idx;
}

Scalar Scalar::operator+(const Scalar& o) const {
  require_same_field(*this, o);
  std::vector<i64> r(coeffs_);
  for (size_t i = 0; i < r.size(); ++i) r[i] = fp::mod(r[i] + o.coeffs_[i], field_->p());
  return Scalar(field_, std::move(r));
}

Scalar Scalar::operator-(const Scalar& o) const {
  require_same_field(*this, o);
  std::vector<i64> r(coeffs_);
  for (size_t i = 0; i < r.size(); ++i) r[i] = fp::mod(r[i] - o.coeffs_[i], field_->p());
  return Scalar(field_, std::move(r));
}

Scalar Scalar::operator-() const {
  std::vector<i64> r(coeffs_);
  for (auto& c : r) c = fp::mod(-c, field_->p());
  return Scalar(field_, std::move(r));
}

Scalar Scalar::operator*(const Scalar& o) const {
  require_same_field(*this, o);
  i64 p = field_->p();
  if (field_->k() == 1)
    return Scalar(field_, {fp::mod(coeffs_[0] * o.coeffs_[0], p)});
  fp::P prod = fp::mul(coeffs_, o.coeffs_, p);
  prod = fp::rem(std::move(prod), field_->modulus(), p);
  prod.resize(field_->k(), 0);
  return Scalar(field_, std::move(prod));
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool Scalar::operator==(const Scalar& o) const {
  require_same_field(*this, o);
  return coeffs_ == o.coeffs_;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw HypothesisError("inverse of zero");
  i64 p = field_->p();
  if (field_->k() == 1) return Scalar(field_, {fp::inv_mod(coeffs_[0], p)});
  fp::P a = coeffs_;
  fp::trim(a);
  auto [g, u] = fp::ext_gcd_mod(a, field_->modulus(), p);
  if (g != fp::P{1}) throw CheckError("modulus not irreducible: gcd with element nontrivial");
  u.resize(field_->k(), 0);
  return Scalar(field_, std::move(u));
}

Scalar Scalar::pow(i64 e) const {
  if (e < 0) throw HypothesisError("negative exponent");
  Scalar r = field_->one();
  Scalar b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Scalar Scalar::frobenius() const { return pow(field_->p()); }

Scalar Scalar::pth_root() const {
  // Frobenius is an automorphism of order k, so its inverse is p^(k-1)
  i64 e = 1;
  for (int i = 0; i < field_->k() - 1; ++i) e *= field_->p();
  return pow(e);
}

std::string Scalar::str() const {
  std::ostringstream os;
  bool first = true;
  for (int i = int(coeffs_.size()) - 1; i >= 0; --i) {
    if (!coeffs_[i]) continue;
    if (!first) os << "+";
    if (i == 0 || coeffs_[i] != 1) os << coeffs_[i];
    if (i >= 1) os << "t";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

namespace {
// image of the source generator (class of t) per (source modulus, target) pair
using EmbedKey = std::tuple<i64, std::vector<i64>, std::vector<i64>>;
std::map<EmbedKey, std::vector<i64>> embed_cache;
std::mutex embed_mutex;
}  // namespace

Scalar embed_scalar(const Scalar& s, const Field& target) {
  const Field& src = s.field();
  if (same_field(src, target)) return target->element(s.coeffs());
  if (src->p() != target->p())
    throw HypothesisError("embedding requires equal characteristic");
  if (target->k() % src->k() != 0)
    throw HypothesisError("embedding requires source degree dividing target degree");
  if (src->k() == 1) return target->element({s.coeffs()[0]});

  std::vector<i64> root_coeffs;
  {
    EmbedKey key{src->p(), src->modulus(), target->modulus()};
    std::lock_guard<std::mutex> lock(embed_mutex);
    auto it = embed_cache.find(key);
    if (it != embed_cache.end()) root_coeffs = it->second;
  }
  if (root_coeffs.empty()) {
    // first root of the source modulus in the target, canonical order
    bool found = false;
    for (i64 idx = 0; idx < target->size() && !found; ++idx) {
      Scalar cand = target->element_at(idx);
      Scalar acc = target->zero();
      for (int i = int(src->modulus().size()) - 1; i >= 0; --i)
        acc = acc * cand + target->from_int(src->modulus()[i]);
      if (acc.is_zero()) {
        root_coeffs = cand.coeffs();
        found = true;
      }
    }
    if (!found) throw CheckError("source modulus has no root in target field");
    EmbedKey key{src->p(), src->modulus(), target->modulus()};
    std::lock_guard<std::mutex> lock(embed_mutex);
    embed_cache.emplace(std::move(key), root_coeffs);
  }
  Scalar root = target->element(root_coeffs);
  Scalar acc = target->zero();
  for (int i = int(s.coeffs().size()) - 1; i >= 0; --i)
    acc = acc * root + target->from_int(s.coeffs()[i]);
  return acc;
}

Scalar element_outside_prime_field(const Field& f) {
  if (f->k() < 2)
    throw HypothesisError("prime field has no element outside the prime field");
  std::vector<i64> c(f->k(), 0);
  c[1] = 1;
  return f->element(std::move(c));
}

}  // namespace liep
