#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "liep/pcyclic.hpp"

using namespace liep;

namespace {

std::mt19937_64 rng(23);

Scalar rnd_scalar(const Field& f) {
  std::uniform_int_distribution<i64> d(0, f->size() - 1);
  return f->element_at(d(rng));
}

Mat rnd_invertible(const Field& f, int n) {
  for (;;) {
    Mat m(f, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = rnd_scalar(f);
    if (rank(m) == n) return m;
  }
}

// cyclic permutation matrix of size n scaled by lam
Mat scaled_shift(const Field& f, int n, const Scalar& lam) {
  Mat m(f, n, n);
  for (int i = 0; i < n; ++i) m.at((i + 1) % n, i) = lam;
  return m;
}

Mat diag(const Field& f, const std::vector<Scalar>& d) {
  Mat m(f, int(d.size()), int(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m.at(int(i), int(i)) = d[i];
  return m;
}

// the span of the x-orbit of a generator
Subspace orbit_span(const Mat& x, const Vec& v, int dim) {
  std::vector<Vec> vs;
  Vec w = v;
  for (int i = 0; i < dim; ++i) {
    vs.push_back(w);
    w = x.apply(w);
  }
  return Subspace::span(x.field(), int(v.size()), vs);
}

std::multiset<int> dim_multiset(const std::vector<PCyclicSummand>& sums) {
  std::multiset<int> out;
  for (const auto& s : sums) out.insert(s.minpoly.degree());
  return out;
}

}  // namespace

TEST_CASE("cyclic predicate") {
  Field f = FiniteField::make(3, 1);
  CHECK(is_xp_cyclic(Mat::companion(Poly::from_ints(f, {-1, 0, 0, 1}))).ok);
  auto one_dim = is_xp_cyclic(Mat::identity(f, 1));
  CHECK(!one_dim.ok);  // minpoly t - 1 misses the ladder
  CHECK(is_xp_cyclic(Mat::companion(Poly::from_ints(f, {2, 0, 0, 2, 0, 0, 1}))).ok);
  CHECK(!is_xp_cyclic(Mat::identity(f, 2)).ok);  // not cyclic
  // constant term zero
  CHECK(!is_xp_cyclic(Mat::companion(Poly::from_ints(f, {0, 0, 0, 1}))).ok);
}

TEST_CASE("eigenvector orbit builds one summand") {
  Field f = FiniteField::make(3, 1);
  int p = 3;
  Mat x = scaled_shift(f, p, f->one());
  std::vector<Scalar> ds;
  for (int i = 0; i < p; ++i) ds.push_back(f->from_int(2 + i));
  Mat delta = diag(f, ds);
  REQUIRE(commutator(delta, x) == x);

  auto s = cyclic_from_eigenvector(x, delta, unit_vec(f, p, 0));
  CHECK(s.r == 1);
  CHECK(s.minpoly == Poly::from_ints(f, {-1, 0, 0, 1}));
  CHECK(s.eigenvalue == f->from_int(2));
  CHECK(is_xp_cyclic(restrict_to(x, orbit_span(x, s.generator, p))).ok);
}

TEST_CASE("orbit of a built generator recovers a two-block polynomial") {
  Field f = FiniteField::make(3, 2);
  Poly q = Poly::from_ints(f, {-1, 0, 0, 1}).pow(2);  // (t^3 - 1)^2
  auto built = build_derivation({q}, f);
  Subspace ideal = derived_subalgebra(built.algebra);
  Mat psi = restrict_to(built.algebra.ad(built.x), ideal);
  Mat beta = restrict_to(built.delta.matrix.scaled(built.b.inverse()), ideal);
  REQUIRE(commutator(beta, psi) == psi);

  auto s = cyclic_from_eigenvector(psi, beta, unit_vec(f, 6, 0));
  CHECK(s.r == 2);
  CHECK(s.minpoly == q);
}

TEST_CASE("eigenvector orbit rejects bad input") {
  Field f = FiniteField::make(3, 1);
  Mat x = scaled_shift(f, 3, f->one());
  std::vector<Scalar> ds = {f->zero(), f->one(), f->from_int(2)};
  Mat delta = diag(f, ds);
  CHECK_THROWS_AS(cyclic_from_eigenvector(x, delta, zero_vec(f, 3)), HypothesisError);
  Vec not_eigen = {f->one(), f->one(), f->zero()};
  CHECK_THROWS_AS(cyclic_from_eigenvector(x, delta, not_eigen), HypothesisError);
  Mat singular(f, 3, 3);
  CHECK_THROWS_AS(cyclic_from_eigenvector(singular, delta, unit_vec(f, 3, 0)),
                  HypothesisError);
  // relation [delta, x] = x broken
  CHECK_THROWS_AS(cyclic_from_eigenvector(x, Mat::identity(f, 3), unit_vec(f, 3, 0)),
                  HypothesisError);
}

TEST_CASE("coset blocks group the spectrum") {
  Field f = FiniteField::make(3, 2);
  Scalar t = element_outside_prime_field(f);
  Mat delta = diag(f, {t, t + f->one(), t + f->from_int(2), t * f->from_int(2)});
  Mat x(f, 4, 4);
  x.at(1, 0) = f->one();
  x.at(2, 1) = f->one();
  x.at(0, 2) = f->from_int(2);
  REQUIRE(commutator(delta, x) == x);

  auto blocks = eigen_coset_blocks(x, delta);
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0].base == t);
  CHECK(blocks[0].total.dim() == 3);
  CHECK(blocks[0].eigenspaces[0].dim() == 1);
  CHECK(blocks[0].eigenspaces[1].dim() == 1);
  CHECK(blocks[0].eigenspaces[2].dim() == 1);
  CHECK(blocks[1].base == t * f->from_int(2));
  CHECK(blocks[1].total.dim() == 1);
  CHECK(blocks[1].eigenspaces[1].dim() == 0);

  CHECK_THROWS_AS(eigen_coset_blocks(x, Mat::identity(f, 4)), HypothesisError);
  // non-diagonalizable delta with x = 0 still satisfies the relation
  Mat nil(f, 2, 2);
  nil.at(0, 1) = f->one();
  CHECK_THROWS_AS(eigen_coset_blocks(Mat(f, 2, 2), nil), HypothesisError);
}

TEST_CASE("two equal shifts split into two summands") {
  Field f = FiniteField::make(3, 2);
  Scalar t = element_outside_prime_field(f);
  Scalar lam = t * f->from_int(2);
  Mat x(f, 6, 6);
  Mat s3 = scaled_shift(f, 3, lam);
  for (int b = 0; b < 2; ++b)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) x.at(3 * b + i, 3 * b + j) = s3.at(i, j);
  std::vector<Scalar> dd;
  for (int b = 0; b < 2; ++b)
    for (int i = 0; i < 3; ++i) dd.push_back(t + f->from_int(i));
  Mat delta = diag(f, dd);
  REQUIRE(commutator(delta, x) == x);

  auto blocks = eigen_coset_blocks(x, delta);
  REQUIRE(blocks.size() == 1);
  auto sums = xp_decompose_primary(x, delta, blocks[0]);
  REQUIRE(sums.size() == 2);
  for (const auto& s : sums) {
    CHECK(s.r == 1);
    CHECK(s.minpoly.degree() == 3);
    CHECK(s.minpoly == Poly::linear(lam).pow(3));
    CHECK(s.eigenvalue == t);
    CHECK(is_xp_cyclic(restrict_to(x, orbit_span(x, s.generator, 3))).ok);
  }
}

TEST_CASE("nested blocks force the non-trivial lift") {
  Field f = FiniteField::make(3, 2);
  Scalar t = element_outside_prime_field(f);
  Scalar lam = t;
  Poly q1 = Poly::linear(lam).pow(3);  // t^3 - lam^3
  Poly q2 = q1.pow(2);
  Mat x0(f, 9, 9), d0(f, 9, 9);
  Mat c2 = Mat::companion(q2);
  Mat c1 = Mat::companion(q1);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) x0.at(i, j) = c2.at(i, j);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) x0.at(6 + i, 6 + j) = c1.at(i, j);
  Scalar a = t + f->one();
  for (int i = 0; i < 6; ++i) d0.at(i, i) = a + f->from_int(i);
  for (int i = 0; i < 3; ++i) d0.at(6 + i, 6 + i) = a + f->from_int(i);
  REQUIRE(commutator(d0, x0) == x0);

  // conjugating by a random basis change entangles the two blocks, so the
  // recursion has to run the polynomial correction when lifting
  for (int trial = 0; trial < 10; ++trial) {
    Mat g = rnd_invertible(f, 9);
    Mat x = g * x0 * g.inverse();
    Mat delta = g * d0 * g.inverse();
    auto blocks = eigen_coset_blocks(x, delta);
    REQUIRE(blocks.size() == 1);
    auto sums = xp_decompose_primary(x, delta, blocks[0]);
    REQUIRE(sums.size() == 2);
    std::multiset<int> dims = dim_multiset(sums);
    CHECK(dims == std::multiset<int>({3, 6}));
    for (const auto& s : sums) {
      CHECK(vec_eq(delta.apply(s.generator), vec_scale(s.eigenvalue, s.generator)));
      CHECK(relative_minpoly(x, s.generator) == s.minpoly);
      int d = s.minpoly.degree();
      CHECK(is_xp_cyclic(restrict_to(x, orbit_span(x, s.generator, d))).ok);
    }
  }
}

TEST_CASE("shift semidirect sum decomposes into one summand") {
  // one-generator algebra acting on its abelian ideal by a cyclic shift
  Field f = FiniteField::make(3, 2);
  Scalar t = element_outside_prime_field(f);
  int p = 3;
  Mat shift = scaled_shift(f, p, f->one());
  LieAlg k(f, 1, {}, {"x"});
  Representation rep{k, p, {shift}};
  LieAlg l = semidirect_sum(k, rep, LieAlg::abelian(f, p));
  Mat dm(f, p + 1, p + 1);
  dm.at(0, 0) = t;
  for (int i = 0; i < p; ++i)
    dm.at(1 + i, 1 + i) = f->one() + f->from_int(i + 1) * t;
  Derivation d = Derivation::make(l, dm);
  REQUIRE(d.nonsingular());

  auto res = xp_decompose(l, unit_vec(f, p + 1, 0), d);
  CHECK(res.algebra.field()->k() == 2);
  CHECK(res.power_steps == 0);
  REQUIRE(res.summands.size() == 1);
  CHECK(res.summands[0].r == 1);
  CHECK(res.summands[0].minpoly == Poly::from_ints(res.algebra.field(), {-1, 0, 0, 1}));
  CHECK(res.ideal.contains(res.summands[0].generator));
  // normalized derivation fixes x and diagonalizes on the ideal
  CHECK(vec_eq(res.delta.matrix.apply(res.x), res.x));
  Mat adx = res.algebra.ad(res.x);
  CHECK(is_xp_cyclic(restrict_to(adx, res.ideal)).ok);
}

TEST_CASE("round trips over one and two primary components") {
  Field f = FiniteField::make(3, 2);
  Scalar t = element_outside_prime_field(f);
  Poly base1 = Poly::from_ints(f, {-1, 0, 0, 1});       // t^3 - 1
  Poly base2 = Poly::from_ints(f, {-2, 0, 0, 1});       // t^3 - 2
  Poly baset = Poly::t(f).pow(3) - Poly(f, {t});        // t^3 - t

  struct Case {
    std::vector<Poly> qs;
    std::multiset<int> dims;
    size_t comps;
  };
  std::vector<Case> cases = {
      {{base1}, {3}, 1},
      {{base2, base2.pow(2)}, {3, 6}, 2},   // same eigenvalue, two cosets
      {{base1, baset}, {3, 3}, 2},          // two eigenvalues
      {{base1.pow(3)}, {9}, 1},
  };
  for (const auto& c : cases) {
    auto built = build_derivation(c.qs, f);
    auto res = xp_decompose(built.algebra, built.x, built.delta);
    CHECK(res.algebra.field()->k() == 2);  // nothing to extend
    CHECK(dim_multiset(res.summands) == c.dims);
    int total = 0;
    for (const auto& s : res.summands) total += s.minpoly.degree();
    CHECK(total == res.ideal.dim());
    (void)c.comps;
  }
}

TEST_CASE("three summands over the bigger field") {
  Field f = FiniteField::make(3, 3);
  Poly b1 = Poly::from_ints(f, {-1, 0, 0, 1});
  Poly b2 = Poly::from_ints(f, {-2, 0, 0, 1});
  auto built = build_derivation({b1, b2, b1.pow(2)}, f);
  CHECK(built.algebra.dim() == 13);
  auto res = xp_decompose(built.algebra, built.x, built.delta);
  CHECK(dim_multiset(res.summands) == std::multiset<int>({3, 3, 6}));
}

TEST_CASE("splitting the action of x refines the summands") {
  // minpoly Q(t^2) with Q irreducible over GF(4): the pipeline must extend
  // to GF(16) and the single input block splits into two
  Field f = FiniteField::make(2, 2);
  Scalar c = element_outside_prime_field(f);
  Poly q(f, {c, f->zero(), f->one(), f->zero(), f->one()});  // t^4 + t^2 + c
  REQUIRE(q.in_tp_subring());
  // in characteristic 2 this is the square of an irreducible quadratic
  auto fq = factor(q);
  REQUIRE(fq.size() == 1);
  REQUIRE(fq[0].first.degree() == 2);
  REQUIRE(fq[0].second == 2);

  auto built = build_derivation({q}, f);
  auto res = xp_decompose(built.algebra, built.x, built.delta);
  CHECK(res.algebra.field()->k() == 4);
  CHECK(dim_multiset(res.summands) == std::multiset<int>({2, 2}));
}

TEST_CASE("hypothesis violations are reported") {
  Field f5 = FiniteField::make(5, 1);
  LieAlg heis = LieAlg::heisenberg(f5);
  Mat dm = Mat::identity(f5, 3);
  dm.at(2, 2) = f5->from_int(2);  // diag(1,1,2) is a derivation of heisenberg
  Derivation d = Derivation::make(heis, dm);
  CHECK_THROWS_AS(xp_decompose(heis, unit_vec(f5, 3, 0), d), HypothesisError);

  // affine algebra [x, y] = y: every derivation kills x up to the ideal,
  // so no non-singular derivation passes
  Field f = FiniteField::make(3, 2);
  LieAlg aff(f, 2, {{0, 1, {f->zero(), f->one()}}}, {"x", "y"});
  Mat am(f, 2, 2);
  am.at(1, 1) = f->one();
  REQUIRE(is_derivation(aff, am));
  CHECK_THROWS_AS(xp_decompose(aff, unit_vec(f, 2, 0), Derivation::make(aff, am)),
                  HypothesisError);

  // abelian: nothing to decompose
  LieAlg ab = LieAlg::abelian(f, 2);
  CHECK_THROWS_AS(xp_decompose(ab, unit_vec(f, 2, 0),
                               Derivation::make(ab, Mat::identity(f, 2))),
                  HypothesisError);
}

TEST_CASE("degree selection") {
  Field f9 = FiniteField::make(3, 2);
  Scalar t9 = element_outside_prime_field(f9);
  auto dc = choose_degrees(1, f9);
  CHECK(dc.b == t9);
  CHECK(dc.as.size() == 1);
  CHECK(dc.as[0] == f9->one());
  auto dc2 = choose_degrees(2, f9);
  CHECK(dc2.as.size() == 2);
  CHECK_THROWS_AS(choose_degrees(3, f9), HypothesisError);  // 9 elements run out
  CHECK_THROWS_AS(choose_degrees(1, FiniteField::make(5, 1)), HypothesisError);

  Field f25 = FiniteField::make(5, 2);
  auto dc25 = choose_degrees(2, f25);
  std::set<i64> vals;
  for (const auto& a : dc25.as)
    for (i64 i = 0; i < 5; ++i)
      vals.insert((a + f25->from_int(i) * dc25.b).index());
  CHECK(vals.size() == 10);

  Field f27 = FiniteField::make(3, 3);
  CHECK(choose_degrees(3, f27).as.size() == 3);
}

TEST_CASE("builder output shape") {
  for (i64 p : {2, 3, 5}) {
    // GF(4) has a single coset available, so p = 2 needs the cubic extension
    // for two summands
    Field f = FiniteField::make(p, p == 2 ? 3 : 2);
    Poly q = Poly::t(f).pow(p) - Poly::one(f);  // t^p - 1
    auto built = build_derivation({q}, f);
    CHECK(built.algebra.dim() == int(p) + 1);
    CHECK(built.delta.nonsingular());
    std::set<i64> distinct;
    for (int i = 0; i < built.algebra.dim(); ++i)
      distinct.insert(built.delta.matrix.at(i, i).index());
    CHECK(i64(distinct.size()) == p + 1);
    CHECK(built.algebra.labels()[0] == "x");
    CHECK(built.algebra.labels()[1] == "v1_0");

    auto two = build_derivation({q, q.pow(2)}, f);
    std::set<i64> d2;
    for (int i = 0; i < two.algebra.dim(); ++i)
      d2.insert(two.delta.matrix.at(i, i).index());
    CHECK(i64(d2.size()) == 2 * p + 1);
  }

  Field f3 = FiniteField::make(3, 1);
  Poly q3 = Poly::from_ints(f3, {-1, 0, 0, 1});
  CHECK_THROWS_AS(build_derivation({q3}, f3), HypothesisError);
  Field f9 = FiniteField::make(3, 2);
  CHECK_THROWS_AS(build_derivation({Poly::t(f9).pow(3)}, f9), HypothesisError);
  CHECK_THROWS_AS(build_derivation({Poly::from_ints(f9, {1, 1})}, f9),
                  HypothesisError);
  CHECK_THROWS_AS(build_derivation({q3.scaled(f3->from_int(2))}, f3),
                  HypothesisError);
  CHECK_THROWS_AS(build_derivation({}, f9), HypothesisError);
}

TEST_CASE("random round trips stay exact") {
  for (i64 p : {2, 3, 5}) {
    Field f = FiniteField::make(p, p == 2 ? 3 : 2);
    for (int trial = 0; trial < 8; ++trial) {
      int s = 1 + int(rng() % 2);
      std::vector<Poly> qs;
      std::multiset<int> want;
      for (int j = 0; j < s; ++j) {
        Scalar c = rnd_scalar(f);
        if (c.is_zero()) c = f->one();
        int r = 1 + int(rng() % 2);
        qs.push_back((Poly::t(f).pow(p) - Poly(f, {c})).pow(r));
        want.insert(int(p) * r);
      }
      auto built = build_derivation(qs, f);
      auto res = xp_decompose(built.algebra, built.x, built.delta);
      CHECK(dim_multiset(res.summands) == want);
      for (const auto& s2 : res.summands) {
        Mat adx = res.algebra.ad(res.x);
        CHECK(is_xp_cyclic(
                  restrict_to(adx, orbit_span(adx, s2.generator,
                                              s2.minpoly.degree())))
                  .ok);
      }
    }
  }
}
