#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "liep/linalg.hpp"

namespace liep {

Poly::Poly(Field f, std::vector<Scalar> coeffs)
    : field_(std::move(f)), coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Poly Poly::zero(const Field& f) { return Poly(f, {}); }
Poly Poly::one(const Field& f) { return Poly(f, {f->one()}); }
Poly Poly::t(const Field& f) { return Poly(f, {f->zero(), f->one()}); }

Poly Poly::from_ints(const Field& f, const std::vector<i64>& coeffs) {
  std::vector<Scalar> c;
  c.reserve(coeffs.size());
  for (i64 v : coeffs) c.push_back(f->from_int(v));
  return Poly(f, std::move(c));
}

Poly Poly::linear(const Scalar& root) {
  return Poly(root.field(), {-root, root.field()->one()});
}

bool Poly::is_one() const { return coeffs_.size() == 1 && coeffs_[0].is_one(); }

Scalar Poly::coeff(int i) const {
  if (i < 0 || i >= int(coeffs_.size())) return field_->zero();
  return coeffs_[i];
}

Scalar Poly::lead() const {
  if (is_zero()) throw HypothesisError("leading coefficient of zero polynomial");
  return coeffs_.back();
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Scalar> c;
  int n = std::max(int(coeffs_.size()), int(o.coeffs_.size()));
  c.reserve(n);
  for (int i = 0; i < n; ++i) c.push_back(coeff(i) + o.coeff(i));
  return Poly(field_, std::move(c));
}

Poly Poly::operator-(const Poly& o) const {
  std::vector<Scalar> c;
  int n = std::max(int(coeffs_.size()), int(o.coeffs_.size()));
  c.reserve(n);
  for (int i = 0; i < n; ++i) c.push_back(coeff(i) - o.coeff(i));
  return Poly(field_, std::move(c));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly::zero(field_);
  std::vector<Scalar> c(coeffs_.size() + o.coeffs_.size() - 1, field_->zero());
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < o.coeffs_.size(); ++j)
      c[i + j] = c[i + j] + coeffs_[i] * o.coeffs_[j];
  return Poly(field_, std::move(c));
}

bool Poly::operator==(const Poly& o) const {
  if (coeffs_.size() != o.coeffs_.size()) return false;
  for (size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != o.coeffs_[i]) return false;
  return true;
}

Poly Poly::scaled(const Scalar& c) const {
  std::vector<Scalar> r = coeffs_;
  for (auto& v : r) v = v * c;
  return Poly(field_, std::move(r));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(lead().inverse());
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw HypothesisError("polynomial division by zero");
  std::vector<Scalar> r = coeffs_;
  int dd = d.degree();
  Scalar lead_inv = d.lead().inverse();
  std::vector<Scalar> q;
  if (int(r.size()) >= dd + 1) q.assign(r.size() - dd, field_->zero());
  for (int i = int(r.size()) - 1; i >= dd; --i) {
    if (r[i].is_zero()) continue;
    Scalar c = r[i] * lead_inv;
    q[i - dd] = c;
    for (int j = 0; j <= dd; ++j) r[i - dd + j] = r[i - dd + j] - c * d.coeff(j);
  }
  return {Poly(field_, std::move(q)), Poly(field_, std::move(r))};
}

Poly Poly::operator/(const Poly& d) const { return divmod(d).first; }
Poly Poly::operator%(const Poly& d) const { return divmod(d).second; }

Poly Poly::pow(i64 e) const {
  if (e < 0) throw HypothesisError("negative polynomial power");
  Poly r = Poly::one(field_);
  Poly b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Poly Poly::derivative() const {
  std::vector<Scalar> c;
  for (int i = 1; i < int(coeffs_.size()); ++i)
    c.push_back(coeffs_[i] * field_->from_int(i));
  return Poly(field_, std::move(c));
}

Scalar Poly::eval(const Scalar& x) const {
  Scalar acc = field_->zero();
  for (int i = int(coeffs_.size()) - 1; i >= 0; --i) acc = acc * x + coeffs_[i];
  return acc;
}

Mat Poly::eval(const Mat& m) const {
  if (m.rows() != m.cols()) throw HypothesisError("polynomial of a non-square matrix");
  Mat acc(m.field(), m.rows(), m.cols());
  for (int i = int(coeffs_.size()) - 1; i >= 0; --i) {
    acc = acc * m;
    for (int d = 0; d < m.rows(); ++d) acc.at(d, d) = acc.at(d, d) + coeffs_[i];
  }
  return acc;
}

Vec Poly::eval_apply(const Mat& m, const Vec& v) const {
  Vec acc = zero_vec(field_, int(v.size()));
  for (int i = int(coeffs_.size()) - 1; i >= 0; --i) {
    acc = m.apply(acc);
    acc = vec_add(acc, vec_scale(coeffs_[i], v));
  }
  return acc;
}

bool Poly::in_tp_subring() const {
  i64 p = field_->p();
  for (int i = 0; i < int(coeffs_.size()); ++i)
    if (i % p != 0 && !coeffs_[i].is_zero()) return false;
  return true;
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (coeffs_[i].is_zero()) continue;
    if (!first) os << " + ";
    bool unit = coeffs_[i].is_one();
    bool composite = !coeffs_[i].in_prime_field();
    if (i == 0 || !unit) {
      if (composite && i > 0) os << "(" << coeffs_[i].str() << ")";
      else os << coeffs_[i].str();
    }
    if (i >= 1) os << (i > 0 && !unit ? "*t" : "t");
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

Poly poly_gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = y;
    y = r;
  }
  return x.monic();
}

Poly poly_lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly::zero(a.field());
  return ((a * b) / poly_gcd(a, b)).monic();
}

Poly embed_poly(const Poly& f, const Field& target) {
  std::vector<Scalar> c;
  c.reserve(f.coeffs().size());
  for (const auto& v : f.coeffs()) c.push_back(embed_scalar(v, target));
  return Poly(target, std::move(c));
}

int poly_cmp(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (int i = 0; i <= a.degree(); ++i) {
    i64 ia = a.coeff(i).index(), ib = b.coeff(i).index();
    if (ia != ib) return ia < ib ? -1 : 1;
  }
  return 0;
}

// ----- factorization -----

namespace {

// coefficient-wise p-th root: g(t^p) = h(t)^p
Poly poly_pth_root(const Poly& g) {
  const Field& f = g.field();
  i64 p = f->p();
  std::vector<Scalar> c;
  for (int i = 0; i <= g.degree(); i += int(p)) c.push_back(g.coeff(i).pth_root());
  return Poly(f, std::move(c));
}

// monic squarefree factors with multiplicities, characteristic-p aware
void squarefree_decompose(const Poly& f, int mult, std::vector<std::pair<Poly, int>>& out) {
  const Field& fd = f.field();
  i64 p = fd->p();
  if (f.degree() < 1) return;
  Poly fp = f.derivative();
  if (fp.is_zero()) {
    // f = g(t^p) = h^p with h the coefficient-wise p-th root of g
    squarefree_decompose(poly_pth_root(f), mult * int(p), out);
    return;
  }
  Poly c = poly_gcd(f, fp);
  Poly w = (f / c).monic();
  int i = 1;
  while (!w.is_one()) {
    Poly y = poly_gcd(w, c);
    Poly z = (w / y).monic();
    if (!z.is_one()) out.emplace_back(z, mult * i);
    w = y;
    c = (c / y).monic();
    ++i;
  }
  if (!c.is_one()) squarefree_decompose(c, mult, out);
}

Poly powmod(const Poly& base, i64 e, const Poly& f) {
  Poly r = Poly::one(f.field());
  Poly b = base % f;
  while (e) {
    if (e & 1) r = (r * b) % f;
    b = (b * b) % f;
    e >>= 1;
  }
  return r;
}

// t^(q^d) mod f given t^(q^(d-1)) mod f requires repeated exponentiation; we
// just iterate x -> x^q mod f, which is cheap at the degrees used here.
Poly qth_power_iterate(const Poly& start, int times, i64 q, const Poly& f) {
  Poly x = start;
  for (int i = 0; i < times; ++i) x = powmod(x, q, f);
  return x;
}

// distinct degree: f squarefree monic; returns (product of its irreducible
// factors of degree d, d)
std::vector<std::pair<Poly, int>> distinct_degree(const Poly& f_in) {
  std::vector<std::pair<Poly, int>> out;
  Poly f = f_in;
  const Field& fd = f.field();
  i64 q = fd->size();
  Poly h = Poly::t(fd);  // t^(q^0)
  int d = 0;
  while (f.degree() > 0) {
    ++d;
    if (2 * d > f.degree()) {
      out.emplace_back(f, f.degree());
      break;
    }
    h = qth_power_iterate(h, 1, q, f);
    Poly g = poly_gcd(h - Poly::t(fd), f);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      f = (f / g).monic();
      h = h % f;
    }
  }
  return out;
}

Poly random_poly_below(std::mt19937_64& rng, const Field& fd, int deg_bound) {
  std::vector<Scalar> c;
  std::uniform_int_distribution<i64> dist(0, fd->size() - 1);
  for (int i = 0; i < deg_bound; ++i) c.push_back(fd->element_at(dist(rng)));
  return Poly(fd, std::move(c));
}

// Cantor-Zassenhaus equal-degree splitting: f = product of irreducibles of
// degree d, at least two of them
void equal_degree_split(const Poly& f, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
  const Field& fd = f.field();
  if (f.degree() == d) {
    out.push_back(f.monic());
    return;
  }
  i64 q = fd->size();
  for (;;) {
    Poly a = random_poly_below(rng, fd, f.degree());
    if (a.degree() < 1) continue;
    Poly g = poly_gcd(a, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split((f / g).monic(), d, rng, out);
      return;
    }
    Poly b;
    if (fd->p() == 2) {
      // trace map over GF(2^m): sum of a^(2^i), i < m*d
      int m = fd->k();
      Poly acc = a % f;
      Poly x = a % f;
      for (int i = 1; i < m * d; ++i) {
        x = (x * x) % f;
        acc = acc + x;
      }
      b = acc;
    } else {
      i64 e = 1;
      for (int i = 0; i < d; ++i) e *= q;
      b = powmod(a, (e - 1) / 2, f) - Poly::one(fd);
    }
    Poly g2 = poly_gcd(b, f);
    if (g2.degree() > 0 && g2.degree() < f.degree()) {
      equal_degree_split(g2, d, rng, out);
      equal_degree_split((f / g2).monic(), d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::pair<Poly, int>> factor(const Poly& f, std::uint64_t seed) {
  if (f.is_zero()) throw HypothesisError("factor of zero polynomial");
  std::vector<std::pair<Poly, int>> result;
  if (f.degree() < 1) return result;
  std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL);
  std::vector<std::pair<Poly, int>> sqf;
  squarefree_decompose(f.monic(), 1, sqf);
  for (const auto& [part, mult] : sqf) {
    for (const auto& [prod, d] : distinct_degree(part)) {
      std::vector<Poly> irr;
      equal_degree_split(prod, d, rng, irr);
      for (auto& g : irr) result.emplace_back(std::move(g), mult);
    }
  }
  std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) {
    int c = poly_cmp(a.first, b.first);
    return c != 0 ? c < 0 : a.second < b.second;
  });
  return result;
}

std::vector<Scalar> poly_roots(const Poly& f, std::uint64_t seed) {
  std::vector<Scalar> roots;
  for (const auto& [q, mult] : factor(f, seed)) {
    (void)mult;
    if (q.degree() == 1) roots.push_back(-q.coeff(0) / q.coeff(1));
  }
  return roots;
}

int splitting_degree(const Poly& f, std::uint64_t seed) {
  i64 l = 1;
  for (const auto& [q, mult] : factor(f, seed)) {
    (void)mult;
    i64 d = q.degree();
    l = std::lcm(l, d);
  }
  return int(l);
}

}  // namespace liep
