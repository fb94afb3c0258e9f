#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "liep/pdecomp.hpp"

using namespace liep;

namespace {

std::mt19937_64 rng(11);

Scalar rnd_scalar(const Field& f) {
  std::uniform_int_distribution<i64> d(0, f->size() - 1);
  return f->element_at(d(rng));
}

Mat rnd_mat(const Field& f, int n) {
  Mat m(f, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = rnd_scalar(f);
  return m;
}

Mat two_cycles(const Field& f, int p) {
  Mat m(f, 2 * p, 2 * p);
  for (int i = 0; i < p; ++i) {
    m.at((i + 1) % p, i) = f->one();
    m.at(p + (i + 1) % p, p + i) = f->one();
  }
  return m;
}

}  // namespace

TEST_CASE("primary decomposition splits along irreducible factors") {
  Field f = FiniteField::make(5, 1);
  Poly q = Poly::linear(f->one()) * Poly::linear(f->from_int(2));
  auto comps = primary_decomposition(Mat::companion(q));
  REQUIRE(comps.size() == 2);
  // canonical order: t - 2 = t + 3 before t - 1 = t + 4
  CHECK(comps[0].q == Poly::linear(f->from_int(2)));
  CHECK(comps[1].q == Poly::linear(f->one()));
  CHECK(comps[0].space.dim() == 1);
  CHECK(comps[1].space.dim() == 1);
  CHECK(comps[0].multiplicity == 1);
}

TEST_CASE("repeated factor gives one big component") {
  Field f = FiniteField::make(3, 1);
  Mat x = two_cycles(f, 3);  // minpoly t^3 - 1 = (t-1)^3
  auto comps = primary_decomposition(x);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].q == Poly::linear(f->one()));
  CHECK(comps[0].multiplicity == 3);
  CHECK(comps[0].space.dim() == 6);
}

TEST_CASE("irreducible minimal polynomial keeps the whole space") {
  Field f = FiniteField::make(3, 1);
  Poly q = Poly::from_ints(f, {1, 0, 1});
  auto comps = primary_decomposition(Mat::companion(q));
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].q == q);
  CHECK(comps[0].space.dim() == 2);
}

TEST_CASE("random endomorphisms decompose consistently") {
  for (auto [p, k] : {std::pair<i64, int>{2, 1}, {3, 1}, {5, 1}, {2, 2}}) {
    Field f = FiniteField::make(p, k);
    for (int trial = 0; trial < 25; ++trial) {
      int n = 1 + int(rng() % 8);
      Mat x = rnd_mat(f, n);
      auto comps = primary_decomposition(x);
      int total = 0;
      std::vector<Vec> all;
      for (size_t i = 0; i < comps.size(); ++i) {
        total += comps[i].space.dim();
        CHECK(minpoly(restrict_to(x, comps[i].space)) ==
              comps[i].q.pow(comps[i].multiplicity));
        CHECK(check_invariance(comps[i].space, x));
        if (i) CHECK(poly_cmp(comps[i - 1].q, comps[i].q) < 0);
        for (const auto& b : comps[i].space.basis()) all.push_back(b);
      }
      CHECK(total == n);
      CHECK(Subspace::span(f, n, all).dim() == n);
    }
  }
}

TEST_CASE("invariance checks") {
  Field f = FiniteField::make(5, 1);
  Subspace s = Subspace::span(f, 3, {unit_vec(f, 3, 0)});
  CHECK(check_invariance(s, Mat::identity(f, 3)));
  Mat shift(f, 3, 3);
  for (int i = 0; i < 3; ++i) shift.at((i + 1) % 3, i) = f->one();
  CHECK(!check_invariance(s, shift));
  CHECK(check_invariance(Subspace::full(f, 3), shift));
  CHECK(check_invariance(Subspace::zero(f, 3), shift));
  CHECK_THROWS_AS(check_invariance(s, Mat(f, 2, 2)), HypothesisError);
}

TEST_CASE("block-commuting maps preserve the components") {
  Field f = FiniteField::make(5, 1);
  Mat x(f, 4, 4);
  x.at(0, 0) = f->one();
  x.at(1, 1) = f->one();
  x.at(2, 2) = f->from_int(2);
  x.at(3, 3) = f->from_int(2);
  Mat y(f, 4, 4);  // block diagonal, commutes with x^2
  y.at(0, 1) = f->from_int(3);
  y.at(1, 0) = f->one();
  y.at(2, 3) = f->from_int(4);
  REQUIRE(commutator(x.pow(2), y).is_zero());
  for (const auto& comp : primary_decomposition(x))
    CHECK(check_invariance(comp.space, y));
}

TEST_CASE("ad-nilpotent maps preserve the primary components") {
  Field f = FiniteField::make(5, 1);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 3 + int(rng() % 4);
    Mat x = rnd_mat(f, n);
    int e = 1 + int(rng() % 4);
    Mat xe = x.pow(e);
    // y = g(x^e) + rank-one perturbation supported on ker and coker of x^e
    Mat y(f, n, n);
    for (int i = 0, pw = 0; i < 3; ++i, ++pw)
      y = y + xe.pow(pw).scaled(rnd_scalar(f));
    Subspace kerr = kernel(xe);
    Subspace cok = kernel(xe.transpose());
    if (kerr.dim() > 0 && cok.dim() > 0) {
      Vec u = kerr.basis()[0];
      Vec w = cok.basis()[0];
      y = y + Mat::outer(u, w);
    }
    REQUIRE(commutator(xe, y).is_zero());
    // y is also killed by iterating [x, -], which is the hypothesis that matters
    Mat c = y;
    for (int i = 0; i < 2 * e - 1; ++i) c = commutator(x, c);
    REQUIRE(c.is_zero());
    for (const auto& comp : primary_decomposition(x))
      CHECK(check_invariance(comp.space, y));
  }
}
