#include <algorithm>
#include <numeric>
#include <sstream>

#include "liep/linalg.hpp"

namespace liep {

Vec zero_vec(const Field& f, int n) { return Vec(n, f->zero()); }

Vec unit_vec(const Field& f, int n, int i) {
  Vec v(n, f->zero());
  v[i] = f->one();
  return v;
}

Vec vec_add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw HypothesisError("vector size mismatch");
  Vec r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] + b[i];
  return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw HypothesisError("vector size mismatch");
  Vec r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] - b[i];
  return r;
}

Vec vec_scale(const Scalar& c, const Vec& a) {
  Vec r(a);
  for (auto& v : r) v = v * c;
  return r;
}

bool vec_is_zero(const Vec& a) {
  for (const auto& v : a)
    if (!v.is_zero()) return false;
  return true;
}

bool vec_eq(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

Vec embed_vec(const Vec& v, const Field& target) {
  Vec r;
  r.reserve(v.size());
  for (const auto& c : v) r.push_back(embed_scalar(c, target));
  return r;
}

// ----- Mat -----

Mat::Mat(Field f, int rows, int cols)
    : field_(std::move(f)), rows_(rows), cols_(cols),
      e_(size_t(rows) * cols, field_->zero()) {}

Mat Mat::identity(const Field& f, int n) {
  Mat m(f, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = f->one();
  return m;
}

Mat Mat::from_rows(const Field& f, const std::vector<Vec>& rows, int cols) {
  Mat m(f, int(rows.size()), cols);
  for (int r = 0; r < int(rows.size()); ++r) {
    if (int(rows[r].size()) != cols) throw HypothesisError("row length mismatch");
    for (int c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

Mat Mat::companion(const Poly& monic) {
  int n = monic.degree();
  if (n < 1 || !monic.lead().is_one())
    throw HypothesisError("companion matrix needs a monic polynomial of degree >= 1");
  Mat m(monic.field(), n, n);
  for (int i = 0; i + 1 < n; ++i) m.at(i + 1, i) = monic.field()->one();
  for (int i = 0; i < n; ++i) m.at(i, n - 1) = -monic.coeff(i);
  return m;
}

Mat Mat::outer(const Vec& col, const Vec& row) {
  if (col.empty() || row.empty()) throw HypothesisError("outer product of empty vector");
  Mat m(col[0].field(), int(col.size()), int(row.size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m.at(i, j) = col[i] * row[j];
  return m;
}

Mat Mat::operator+(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw HypothesisError("matrix shape mismatch");
  Mat m = *this;
  for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = m.e_[i] + o.e_[i];
  return m;
}

Mat Mat::operator-(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw HypothesisError("matrix shape mismatch");
  Mat m = *this;
  for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = m.e_[i] - o.e_[i];
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols_ != o.rows_) throw HypothesisError("matrix shape mismatch in product");
  Mat m(field_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int l = 0; l < cols_; ++l) {
      const Scalar& a = at(i, l);
      if (a.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j)
        m.at(i, j) = m.at(i, j) + a * o.at(l, j);
    }
  return m;
}

Mat Mat::scaled(const Scalar& c) const {
  Mat m = *this;
  for (auto& v : m.e_) v = v * c;
  return m;
}

Vec Mat::apply(const Vec& v) const {
  if (int(v.size()) != cols_) throw HypothesisError("matrix/vector size mismatch");
  Vec r = zero_vec(field_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero()) r[i] = r[i] + at(i, j) * v[j];
  return r;
}

Mat Mat::pow(i64 e) const {
  if (rows_ != cols_) throw HypothesisError("power of non-square matrix");
  if (e < 0) throw HypothesisError("negative matrix power");
  Mat r = identity(field_, rows_);
  Mat b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Mat Mat::transpose() const {
  Mat m(field_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

bool Mat::operator==(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t i = 0; i < e_.size(); ++i)
    if (e_[i] != o.e_[i]) return false;
  return true;
}

bool Mat::is_zero() const {
  for (const auto& v : e_)
    if (!v.is_zero()) return false;
  return true;
}

bool Mat::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
  return true;
}

Vec Mat::row(int r) const {
  Vec v;
  v.reserve(cols_);
  for (int c = 0; c < cols_; ++c) v.push_back(at(r, c));
  return v;
}

Vec Mat::col(int c) const {
  Vec v;
  v.reserve(rows_);
  for (int r = 0; r < rows_; ++r) v.push_back(at(r, c));
  return v;
}

std::string Mat::str() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    os << "[";
    for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).str();
    os << "]";
    if (i + 1 < rows_) os << "\n";
  }
  return os.str();
}

Mat embed_mat(const Mat& m, const Field& target) {
  Mat r(target, m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r.at(i, j) = embed_scalar(m.at(i, j), target);
  return r;
}

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

bool is_nilpotent_mat(const Mat& m) {
  if (m.rows() != m.cols()) throw HypothesisError("nilpotency of non-square matrix");
  return m.pow(m.rows()).is_zero();
}

// ----- elimination -----

Mat rref(const Mat& m, std::vector<int>* pivots) {
  Mat a = m;
  if (pivots) pivots->clear();
  int r = 0;
  for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
    int sel = -1;
    for (int i = r; i < a.rows(); ++i)
      if (!a.at(i, c).is_zero()) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    for (int j = 0; j < a.cols(); ++j) std::swap(a.at(sel, j), a.at(r, j));
    Scalar inv = a.at(r, c).inverse();
    for (int j = c; j < a.cols(); ++j) a.at(r, j) = a.at(r, j) * inv;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == r || a.at(i, c).is_zero()) continue;
      Scalar f = a.at(i, c);
      for (int j = c; j < a.cols(); ++j) a.at(i, j) = a.at(i, j) - f * a.at(r, j);
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return a;
}

int rank(const Mat& m) {
  std::vector<int> piv;
  rref(m, &piv);
  return int(piv.size());
}

Subspace kernel(const Mat& m) {
  std::vector<int> piv;
  Mat r = rref(m, &piv);
  const Field& f = m.field();
  int n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (int c : piv) is_pivot[c] = true;
  std::vector<Vec> gens;
  for (int c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    Vec v = zero_vec(f, n);
    v[c] = f->one();
    for (int i = 0; i < int(piv.size()); ++i) v[piv[i]] = -r.at(i, c);
    gens.push_back(std::move(v));
  }
  return Subspace::span(f, n, gens);
}

Subspace image(const Mat& m) {
  std::vector<Vec> cols;
  for (int c = 0; c < m.cols(); ++c) cols.push_back(m.col(c));
  return Subspace::span(m.field(), m.rows(), cols);
}

std::optional<Vec> solve(const Mat& a, const Vec& b) {
  if (int(b.size()) != a.rows()) throw HypothesisError("solve size mismatch");
  Mat aug(a.field(), a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  std::vector<int> piv;
  Mat r = rref(aug, &piv);
  for (int c : piv)
    if (c == a.cols()) return std::nullopt;  // inconsistent
  Vec x = zero_vec(a.field(), a.cols());
  for (int i = 0; i < int(piv.size()); ++i) x[piv[i]] = r.at(i, a.cols());
  return x;
}

Mat Mat::inverse() const {
  if (rows_ != cols_) throw HypothesisError("inverse of non-square matrix");
  Mat aug(field_, rows_, 2 * cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_ + i) = field_->one();
  }
  std::vector<int> piv;
  Mat r = rref(aug, &piv);
  if (int(piv.size()) != rows_ || (rows_ > 0 && piv.back() >= cols_))
    throw HypothesisError("matrix is singular");
  for (int i = 0; i < int(piv.size()); ++i)
    if (piv[i] != i) throw HypothesisError("matrix is singular");
  Mat inv(field_, rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) inv.at(i, j) = r.at(i, cols_ + j);
  return inv;
}

// ----- Subspace -----

Subspace Subspace::zero(const Field& f, int ambient) {
  Subspace s;
  s.field_ = f;
  s.ambient_ = ambient;
  return s;
}

Subspace Subspace::full(const Field& f, int ambient) {
  std::vector<Vec> rows;
  for (int i = 0; i < ambient; ++i) rows.push_back(unit_vec(f, ambient, i));
  return span(f, ambient, rows);
}

Subspace Subspace::span(const Field& f, int ambient, const std::vector<Vec>& gens) {
  for (const auto& g : gens)
    if (int(g.size()) != ambient) throw HypothesisError("generator has wrong length");
  Subspace s;
  s.field_ = f;
  s.ambient_ = ambient;
  if (gens.empty()) return s;
  std::vector<int> piv;
  Mat r = rref(Mat::from_rows(f, gens, ambient), &piv);
  for (int i = 0; i < int(piv.size()); ++i) s.basis_.push_back(r.row(i));
  s.pivots_ = piv;
  return s;
}

std::vector<int> Subspace::free_cols() const {
  std::vector<bool> is_pivot(ambient_, false);
  for (int c : pivots_) is_pivot[c] = true;
  std::vector<int> free;
  for (int c = 0; c < ambient_; ++c)
    if (!is_pivot[c]) free.push_back(c);
  return free;
}

Vec Subspace::reduce(const Vec& v) const {
  if (int(v.size()) != ambient_) throw HypothesisError("vector/subspace size mismatch");
  Vec r = v;
  for (int i = 0; i < dim(); ++i) {
    Scalar c = r[pivots_[i]];
    if (c.is_zero()) continue;
    r = vec_sub(r, vec_scale(c, basis_[i]));
  }
  return r;
}

bool Subspace::contains(const Vec& v) const { return vec_is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& s) const {
  for (const auto& b : s.basis_)
    if (!contains(b)) return false;
  return true;
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
  if (!contains(v)) return std::nullopt;
  Vec c;
  c.reserve(dim());
  for (int i = 0; i < dim(); ++i) c.push_back(v[pivots_[i]]);
  return c;
}

Subspace Subspace::sum(const Subspace& o) const {
  if (ambient_ != o.ambient_) throw HypothesisError("subspace ambient mismatch");
  std::vector<Vec> gens = basis_;
  gens.insert(gens.end(), o.basis_.begin(), o.basis_.end());
  return span(field_, ambient_, gens);
}

bool Subspace::operator==(const Subspace& o) const {
  if (ambient_ != o.ambient_ || dim() != o.dim()) return false;
  for (int i = 0; i < dim(); ++i)
    if (!vec_eq(basis_[i], o.basis_[i])) return false;
  return true;
}

Subspace embed_subspace(const Subspace& s, const Field& target) {
  std::vector<Vec> rows;
  for (const auto& b : s.basis()) rows.push_back(embed_vec(b, target));
  return Subspace::span(target, s.ambient(), rows);
}

// ----- Krylov minimal polynomials -----

Poly relative_minpoly(const Mat& x, const Vec& v) {
  if (x.rows() != x.cols()) throw HypothesisError("relative minpoly of non-square matrix");
  if (int(v.size()) != x.cols()) throw HypothesisError("vector size mismatch");
  const Field& f = x.field();
  int n = x.rows();
  std::vector<Vec> krylov;              // x^j v, all independent
  std::vector<Vec> ech;                 // echelonized spans of krylov
  std::vector<int> piv;                 // pivot of each ech row
  std::vector<std::vector<Scalar>> comb;  // ech row as combination of krylov
  Vec w = v;
  for (int m = 0; m <= n; ++m) {
    Vec wr = w;
    std::vector<Scalar> c(krylov.size(), f->zero());
    for (size_t r = 0; r < ech.size(); ++r) {
      Scalar coef = wr[piv[r]];
      if (coef.is_zero()) continue;
      wr = vec_sub(wr, vec_scale(coef, ech[r]));
      for (size_t j = 0; j < comb[r].size(); ++j) c[j] = c[j] + coef * comb[r][j];
    }
    if (vec_is_zero(wr)) {
      // x^m v = sum c_j x^j v
      std::vector<Scalar> mp(m + 1, f->zero());
      for (int j = 0; j < m; ++j) mp[j] = -c[j];
      mp[m] = f->one();
      return Poly(f, std::move(mp));
    }
    if (m == n) throw CheckError("krylov sequence of length n+1 with no dependency");
    int pc = 0;
    while (wr[pc].is_zero()) ++pc;
    Scalar inv = wr[pc].inverse();
    krylov.push_back(w);
    ech.push_back(vec_scale(inv, wr));
    piv.push_back(pc);
    std::vector<Scalar> row(krylov.size(), f->zero());
    for (size_t j = 0; j < c.size(); ++j) row[j] = -(inv * c[j]);
    row[krylov.size() - 1] = inv;
    comb.push_back(std::move(row));
    w = x.apply(w);
  }
  throw CheckError("unreachable");
}

Poly minpoly(const Mat& x) {
  if (x.rows() != x.cols()) throw HypothesisError("minpoly of non-square matrix");
  const Field& f = x.field();
  int n = x.rows();
  Poly m = Poly::one(f);
  for (int i = 0; i < n; ++i) {
    Vec e = unit_vec(f, n, i);
    if (m.degree() >= 1 && vec_is_zero(m.eval_apply(x, e))) continue;
    m = poly_lcm(m, relative_minpoly(x, e));
    if (m.degree() == n) break;
  }
  return m;
}

// ----- spectral structure -----

std::vector<std::pair<Scalar, Subspace>> eigen_decomposition(const Mat& x) {
  if (x.rows() != x.cols()) throw HypothesisError("eigen decomposition of non-square matrix");
  std::vector<Scalar> roots = poly_roots(minpoly(x));
  std::sort(roots.begin(), roots.end(),
            [](const Scalar& a, const Scalar& b) { return a.index() < b.index(); });
  std::vector<std::pair<Scalar, Subspace>> out;
  for (const auto& lam : roots) {
    Mat shifted = x;
    for (int i = 0; i < x.rows(); ++i) shifted.at(i, i) = shifted.at(i, i) - lam;
    out.emplace_back(lam, kernel(shifted));
  }
  return out;
}

MultOrder mult_order(const Mat& x) {
  if (x.rows() != x.cols()) throw HypothesisError("order of non-square matrix");
  const Field& f = x.field();
  Poly m = minpoly(x);
  if (m.coeff(0).is_zero()) throw HypothesisError("order of singular matrix");
  i64 p = f->p();
  auto factors = factor(m);
  int max_mult = 1;
  for (const auto& [q, k] : factors) {
    (void)q;
    max_mult = std::max(max_mult, k);
  }
  int t = 0;
  i64 pt = 1;
  while (pt < max_mult) {
    pt *= p;
    ++t;
  }
  // multiplicative order of t modulo each irreducible factor, combined by lcm
  i64 n = 1;
  for (const auto& [q, k] : factors) {
    (void)k;
    i64 cap = 1;
    for (int i = 0; i < q.degree(); ++i) cap *= f->size();
    cap -= 1;
    Poly h = Poly::t(f) % q;
    i64 ord = 1;
    while (!h.is_one()) {
      h = (h * Poly::t(f)) % q;
      ++ord;
      if (ord > cap) throw CheckError("order search exceeded field bound");
    }
    n = std::lcm(n, ord);
  }
  i64 order = n;
  for (int i = 0; i < t; ++i) order *= p;
  return {order, n, t};
}

Subspace primary_subspace(const Mat& x, const Poly& q) {
  if (x.rows() != x.cols()) throw HypothesisError("primary subspace of non-square matrix");
  if (q.degree() < 1) throw HypothesisError("primary subspace needs a non-constant polynomial");
  Mat qx = q.eval(x);
  return kernel(qx.pow(x.rows()));
}

Mat restrict_to(const Mat& x, const Subspace& s) {
  if (x.cols() != s.ambient()) throw HypothesisError("restriction ambient mismatch");
  Mat r(x.field(), s.dim(), s.dim());
  for (int i = 0; i < s.dim(); ++i) {
    Vec im = x.apply(s.basis()[i]);
    auto c = s.coordinates(im);
    if (!c) throw HypothesisError("subspace is not invariant");
    for (int j = 0; j < s.dim(); ++j) r.at(j, i) = (*c)[j];
  }
  return r;
}

Subspace apply_to_subspace(const Mat& x, const Subspace& s) {
  std::vector<Vec> im;
  for (const auto& b : s.basis()) im.push_back(x.apply(b));
  return Subspace::span(x.field(), x.rows(), im);
}

// ----- quotients -----

QuotientSpace::QuotientSpace(Subspace sub) : sub_(std::move(sub)) {
  const Field& f = sub_.field();
  int n = sub_.ambient();
  std::vector<int> free = sub_.free_cols();
  int m = int(free.size());
  proj_ = Mat(f, m, n);
  for (int j = 0; j < n; ++j) {
    Vec r = sub_.reduce(unit_vec(f, n, j));
    for (int i = 0; i < m; ++i) proj_.at(i, j) = r[free[i]];
  }
  sect_ = Mat(f, n, m);
  for (int i = 0; i < m; ++i) sect_.at(free[i], i) = f->one();
}

Mat QuotientSpace::induced(const Mat& x) const {
  for (const auto& b : sub_.basis())
    if (!sub_.contains(x.apply(b)))
      throw HypothesisError("subspace is not invariant; no induced quotient map");
  return proj_ * x * sect_;
}

// ----- cyclic decomposition -----

namespace {

std::vector<Vec> krylov_basis(const Mat& x, const Vec& v, int len) {
  std::vector<Vec> rows;
  Vec w = v;
  for (int i = 0; i < len; ++i) {
    rows.push_back(w);
    w = x.apply(w);
  }
  return rows;
}

// x has minimal polynomial q^K on the whole space; returns generators with
// q-power relative minimal polynomials whose cyclic spans sum directly
void primary_cyclic(const Mat& x, const Poly& q, std::vector<CyclicPart>& out) {
  const Field& f = x.field();
  int n = x.rows();
  if (n == 0) return;
  // a standard basis vector attains the maximal q-power
  Poly best = Poly::one(f);
  Vec gen;
  for (int i = 0; i < n; ++i) {
    Poly rel = relative_minpoly(x, unit_vec(f, n, i));
    if (rel.degree() > best.degree()) {
      best = rel;
      gen = unit_vec(f, n, i);
    }
  }
  if (best.degree() < 1) throw CheckError("primary space with trivial minimal polynomial");
  Subspace w = Subspace::span(f, n, krylov_basis(x, gen, best.degree()));
  out.push_back({gen, best});
  if (w.dim() == n) return;
  QuotientSpace quo(w);
  Mat xq = quo.induced(x);
  std::vector<CyclicPart> inner;
  primary_cyclic(xq, q, inner);
  for (const auto& part : inner) {
    Vec lifted = quo.section().apply(part.generator);
    // part.minpoly(x) lifted lies in w; divide out to make the relative
    // minimal polynomial exact
    Vec u = part.minpoly.eval_apply(x, lifted);
    Mat kry = Mat::from_rows(f, krylov_basis(x, gen, best.degree()), n).transpose();
    auto g = solve(kry, u);
    if (!g) throw CheckError("cyclic defect does not lie in the head summand");
    auto [h, rem] = Poly(f, *g).divmod(part.minpoly);
    if (!rem.is_zero()) throw CheckError("cyclic defect polynomial not divisible");
    Vec fixed = vec_sub(lifted, h.eval_apply(x, gen));
    if (relative_minpoly(x, fixed) != part.minpoly)
      throw CheckError("lifted generator has wrong relative minimal polynomial");
    out.push_back({fixed, part.minpoly});
  }
}

}  // namespace

std::vector<CyclicPart> cyclic_decomposition(const Mat& x) {
  if (x.rows() != x.cols()) throw HypothesisError("cyclic decomposition of non-square matrix");
  const Field& f = x.field();
  int n = x.rows();
  std::vector<CyclicPart> out;
  if (n == 0) return out;
  Poly m = minpoly(x);
  for (const auto& [q, mult] : factor(m)) {
    (void)mult;
    Subspace comp = primary_subspace(x, q);
    Mat xc = restrict_to(x, comp);
    std::vector<CyclicPart> parts;
    primary_cyclic(xc, q, parts);
    for (auto& part : parts) {
      // back to ambient coordinates
      Vec amb = zero_vec(f, n);
      for (int i = 0; i < comp.dim(); ++i)
        amb = vec_add(amb, vec_scale(part.generator[i], comp.basis()[i]));
      out.push_back({amb, part.minpoly});
    }
  }
  // direct sum certificate
  std::vector<Vec> all;
  int total = 0;
  for (const auto& part : out) {
    auto rows = krylov_basis(x, part.generator, part.minpoly.degree());
    all.insert(all.end(), rows.begin(), rows.end());
    total += part.minpoly.degree();
  }
  if (total != n || Subspace::span(f, n, all).dim() != n)
    throw CheckError("cyclic summands do not sum directly to the space");
  return out;
}

}  // namespace liep
