#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "liep/field.hpp"

namespace liep {

// Column vectors; a Mat acts on a Vec by left multiplication.
using Vec = std::vector<Scalar>;

Vec zero_vec(const Field& f, int n);
Vec unit_vec(const Field& f, int n, int i);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Scalar& c, const Vec& a);
bool vec_is_zero(const Vec& a);
bool vec_eq(const Vec& a, const Vec& b);
Vec embed_vec(const Vec& v, const Field& target);

class Poly;

class Mat {
 public:
  Mat() = default;
  Mat(Field f, int rows, int cols);  // zero matrix
  static Mat identity(const Field& f, int n);
  static Mat from_rows(const Field& f, const std::vector<Vec>& rows, int cols);
  // companion matrix: maps e_i -> e_{i+1}, e_{n-1} -> -(low coefficients)
  static Mat companion(const Poly& monic);
  // col * row^T, the rank-one map v -> col * (row . v)
  static Mat outer(const Vec& col, const Vec& row);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Field& field() const { return field_; }
  const Scalar& at(int r, int c) const { return e_[size_t(r) * cols_ + c]; }
  Scalar& at(int r, int c) { return e_[size_t(r) * cols_ + c]; }

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator*(const Mat& o) const;
  Mat scaled(const Scalar& c) const;
  Vec apply(const Vec& v) const;
  Mat pow(i64 e) const;  // square matrices, e >= 0
  Mat transpose() const;
  Mat inverse() const;  // throws HypothesisError if singular
  bool operator==(const Mat& o) const;
  bool is_zero() const;
  bool is_identity() const;
  Vec row(int r) const;
  Vec col(int c) const;
  std::string str() const;

 private:
  Field field_;
  int rows_ = 0, cols_ = 0;
  std::vector<Scalar> e_;
};

Mat embed_mat(const Mat& m, const Field& target);
Mat commutator(const Mat& a, const Mat& b);  // ab - ba
bool is_nilpotent_mat(const Mat& m);

// Subspace of F^n held as the reduced row echelon basis (canonical: rows
// sorted by pivot column, pivots 1, pivot columns cleared elsewhere).
class Subspace {
 public:
  Subspace() = default;
  static Subspace zero(const Field& f, int ambient);
  static Subspace full(const Field& f, int ambient);
  static Subspace span(const Field& f, int ambient, const std::vector<Vec>& gens);

  int ambient() const { return ambient_; }
  int dim() const { return int(basis_.size()); }
  const Field& field() const { return field_; }
  const std::vector<Vec>& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }
  std::vector<int> free_cols() const;  // non-pivot coordinates, ascending

  bool contains(const Vec& v) const;
  bool contains(const Subspace& s) const;
  // v with all pivot coordinates eliminated; zero iff contained
  Vec reduce(const Vec& v) const;
  // coefficients of v against basis(); nullopt if not contained
  std::optional<Vec> coordinates(const Vec& v) const;
  Subspace sum(const Subspace& o) const;
  bool operator==(const Subspace& o) const;

 private:
  Field field_;
  int ambient_ = 0;
  std::vector<Vec> basis_;
  std::vector<int> pivots_;
};

Subspace embed_subspace(const Subspace& s, const Field& target);

// Dense exact polynomial over a finite field, coefficients low degree first.
class Poly {
 public:
  Poly() = default;
  Poly(Field f, std::vector<Scalar> coeffs);  // trailing zeros trimmed
  static Poly zero(const Field& f);
  static Poly one(const Field& f);
  static Poly t(const Field& f);  // the variable
  static Poly from_ints(const Field& f, const std::vector<i64>& coeffs);
  static Poly linear(const Scalar& root);  // t - root

  const Field& field() const { return field_; }
  int degree() const { return int(coeffs_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const;
  const std::vector<Scalar>& coeffs() const { return coeffs_; }
  Scalar coeff(int i) const;  // zero beyond degree
  Scalar lead() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }
  Poly scaled(const Scalar& c) const;
  Poly monic() const;
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  Poly operator/(const Poly& d) const;  // exact or truncated division
  Poly operator%(const Poly& d) const;
  Poly pow(i64 e) const;
  Poly derivative() const;
  Scalar eval(const Scalar& x) const;
  Mat eval(const Mat& m) const;
  Vec eval_apply(const Mat& m, const Vec& v) const;  // f(m) v without forming f(m)
  // true iff only monomials t^(ip) appear
  bool in_tp_subring() const;
  std::string str() const;

 private:
  Field field_;
  std::vector<Scalar> coeffs_;
};

Poly poly_gcd(const Poly& a, const Poly& b);
Poly poly_lcm(const Poly& a, const Poly& b);
Poly embed_poly(const Poly& f, const Field& target);
// total order used to report factor lists deterministically
int poly_cmp(const Poly& a, const Poly& b);

// ----- solving -----

// reduced row echelon form; returns pivot columns
Mat rref(const Mat& m, std::vector<int>* pivots = nullptr);
Subspace kernel(const Mat& m);
Subspace image(const Mat& m);
std::optional<Vec> solve(const Mat& a, const Vec& b);  // one solution of a x = b
int rank(const Mat& m);

// ----- single-endomorphism structure -----

Poly minpoly(const Mat& x);
// minimal q with q(x) v = 0; the zero vector gives 1
Poly relative_minpoly(const Mat& x, const Vec& v);

// monic irreducible factors with multiplicities, deterministically ordered.
// The seed drives the randomized equal-degree splitting only.
std::vector<std::pair<Poly, int>> factor(const Poly& f, std::uint64_t seed = 0);
std::vector<Scalar> poly_roots(const Poly& f, std::uint64_t seed = 0);
// lcm of the degrees of the irreducible factors: the extension degree over
// the coefficient field where f splits into linear factors
int splitting_degree(const Poly& f, std::uint64_t seed = 0);

std::vector<std::pair<Scalar, Subspace>> eigen_decomposition(const Mat& x);

// order of an invertible matrix, split as n * p^t with p not dividing n
struct MultOrder {
  i64 order;
  i64 n;
  int t;
};
MultOrder mult_order(const Mat& x);

// x-cyclic subspaces summing directly to the full space; dims are the
// degrees of the relative minimal polynomials (elementary divisors)
struct CyclicPart {
  Vec generator;
  Poly minpoly;
};
std::vector<CyclicPart> cyclic_decomposition(const Mat& x);

// kernel of q(x)^dim, the generalized eigenspace for the irreducible q
Subspace primary_subspace(const Mat& x, const Poly& q);

// matrix of x on an invariant subspace, in the coordinates of its basis rows
Mat restrict_to(const Mat& x, const Subspace& s);
Subspace apply_to_subspace(const Mat& x, const Subspace& s);

// coordinates of the quotient F^n / sub on the non-pivot coordinates,
// with explicit projection and section matrices
class QuotientSpace {
 public:
  explicit QuotientSpace(Subspace sub);
  const Subspace& sub() const { return sub_; }
  int dim() const { return proj_.rows(); }
  const Mat& projection() const { return proj_; }  // m x n
  const Mat& section() const { return sect_; }     // n x m, projection*section = id
  Mat induced(const Mat& x) const;  // requires sub invariant under x
 private:
  Subspace sub_;
  Mat proj_, sect_;
};

}  // namespace liep
