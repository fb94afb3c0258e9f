#include "liep/pcyclic.hpp"

#include <set>

namespace liep {

namespace {

Vec combine(const std::vector<Vec>& basis, const Vec& coords) {
  if (basis.empty()) return {};
  Vec out = zero_vec(basis[0][0].field(), int(basis[0].size()));
  for (size_t j = 0; j < coords.size(); ++j)
    out = vec_add(out, vec_scale(coords[j], basis[j]));
  return out;
}

// component of w in the eigenspace of val, against the full eigenbasis
Vec eigencomponent(const std::vector<std::pair<Scalar, Subspace>>& eig,
                   const Vec& w, const Scalar& val) {
  const Field& f = val.field();
  int n = int(w.size());
  Mat b(f, n, n);
  std::vector<bool> keep(size_t(n), false);
  int c = 0;
  for (const auto& [ev, es] : eig)
    for (const auto& bv : es.basis()) {
      for (int r = 0; r < n; ++r) b.at(r, c) = bv[r];
      if (ev == val) keep[size_t(c)] = true;
      ++c;
    }
  if (c != n) throw CheckError("eigenbasis does not span the block");
  auto coords = solve(b, w);
  if (!coords) throw CheckError("vector has no eigenbasis coordinates");
  Vec z = zero_vec(f, n);
  for (int i = 0; i < n; ++i)
    if (keep[size_t(i)]) z = vec_add(z, vec_scale((*coords)[i], b.col(i)));
  return z;
}

std::vector<PCyclicSummand> primary_rec(const Mat& x, const Mat& delta,
                                        const Scalar& base) {
  const int n = x.rows();
  std::vector<PCyclicSummand> out;
  if (n == 0) return out;
  const Field& f = x.field();
  i64 p = f->p();

  auto fac = factor(minpoly(x));
  if (fac.size() != 1 || fac[0].first.degree() != 1)
    throw HypothesisError("block does not carry a single split eigenvalue of x");
  Scalar lam = -fac[0].first.coeff(0);
  if (lam.is_zero()) throw HypothesisError("x is singular on the block");
  int m = fac[0].second;  // minpoly is (t - lam)^m

  auto eig = eigen_decomposition(delta);
  int eigtotal = 0;
  for (const auto& [ev, es] : eig) eigtotal += es.dim();
  if (eigtotal != n)
    throw HypothesisError("derivation is not diagonalizable on the block");

  // scan eigenvectors coset-first for one attaining the block minimal
  // polynomial; its eigenvalue becomes the block base
  Vec v0;
  Scalar a0 = f->zero();
  bool found = false;
  for (i64 j = 0; j < p && !found; ++j) {
    Scalar val = base + f->from_int(j);
    for (const auto& [ev, es] : eig) {
      if (!(ev == val)) continue;
      for (const auto& bv : es.basis())
        if (relative_minpoly(x, bv).degree() == m) {
          v0 = bv;
          a0 = val;
          found = true;
          break;
        }
      break;
    }
  }
  if (!found)
    throw HypothesisError("no eigenvector attains the block minimal polynomial");

  out.push_back(cyclic_from_eigenvector(x, delta, v0));

  std::vector<Vec> kry;
  Vec w = v0;
  for (int i = 0; i < m; ++i) {
    kry.push_back(w);
    w = x.apply(w);
  }
  Subspace i0 = Subspace::span(f, n, kry);
  if (i0.dim() != m) throw CheckError("cyclic span has the wrong dimension");
  if (m < n) {
    QuotientSpace quo(i0);
    Mat xq = quo.induced(x);
    Mat dq = quo.induced(delta);
    auto sub = primary_rec(xq, dq, base);

    Mat kmat(f, n, m);
    for (int c = 0; c < m; ++c)
      for (int r = 0; r < n; ++r) kmat.at(r, c) = kry[size_t(c)][r];
    Poly tl = Poly::linear(lam);

    for (const auto& s : sub) {
      // move the class to the eigenvalue of v0 by applying x in the quotient
      Vec wq = s.generator;
      Scalar cur = s.eigenvalue;
      i64 steps = 0;
      while (!(cur == a0)) {
        wq = xq.apply(wq);
        cur = cur + f->one();
        if (++steps > p) throw CheckError("class eigenvalue left the coset");
      }
      Vec wl = quo.section().apply(wq);
      Vec z = eigencomponent(eig, wl, a0);
      if (!i0.contains(vec_sub(z, wl)))
        throw CheckError("eigencomponent correction left the cyclic span");

      int mip = s.minpoly.degree();
      Poly killer = tl.pow(mip);
      Vec u = killer.eval_apply(x, z);
      auto hc = solve(kmat, u);
      if (!hc) throw CheckError("remainder escaped the cyclic span");
      Poly h(f, *hc);
      if (!h.in_tp_subring())
        throw CheckError("lift polynomial has stray monomials");
      auto [q, rem] = h.divmod(killer);
      if (!rem.is_zero())
        throw CheckError("lift polynomial is not divisible by the block factor");
      Vec v = vec_sub(z, q.eval_apply(x, v0));

      if (!vec_eq(delta.apply(v), vec_scale(a0, v)))
        throw CheckError("lifted generator is not an eigenvector");
      if (relative_minpoly(x, v) != s.minpoly)
        throw CheckError("lifted generator changed its minimal polynomial");
      if (!i0.contains(vec_sub(v, wl)))
        throw CheckError("lifted generator moved off its class");
      out.push_back(PCyclicSummand{v, s.r, s.minpoly, a0});
    }
  }

  int total = 0;
  std::vector<Vec> all;
  for (const auto& s : out) {
    Vec g = s.generator;
    for (int i = 0; i < s.minpoly.degree(); ++i) {
      all.push_back(g);
      g = x.apply(g);
    }
    total += s.minpoly.degree();
  }
  if (total != n || Subspace::span(f, n, all).dim() != n)
    throw CheckError("summands do not fill the block");
  return out;
}

}  // namespace

XpCyclicCheck is_xp_cyclic(const Mat& x) {
  if (x.rows() != x.cols()) return {false, "matrix is not square"};
  Poly q = minpoly(x);
  if (q.degree() != x.rows()) return {false, "space is not cyclic under x"};
  if (!q.in_tp_subring())
    return {false, "minimal polynomial has monomials away from powers of p"};
  if (q.coeff(0).is_zero())
    return {false, "minimal polynomial has zero constant term"};
  return {true, ""};
}

PCyclicSummand cyclic_from_eigenvector(const Mat& x, const Mat& delta, const Vec& v) {
  if (x.rows() != x.cols() || delta.rows() != delta.cols() ||
      x.rows() != delta.rows())
    throw HypothesisError("maps must be square and equally sized");
  int n = x.rows();
  const Field& f = x.field();
  if (int(v.size()) != n) throw HypothesisError("vector size mismatch");
  if (rank(x) != n) throw HypothesisError("x is singular");
  if (!(commutator(delta, x) == x))
    throw HypothesisError("the relation [delta, x] = x fails");
  if (vec_is_zero(v)) throw HypothesisError("the zero vector generates nothing");

  Vec dv = delta.apply(v);
  Scalar a = f->zero();
  for (int i = 0; i < n; ++i)
    if (!v[i].is_zero()) {
      a = dv[i] / v[i];
      break;
    }
  if (!vec_eq(dv, vec_scale(a, v)))
    throw HypothesisError("vector is not an eigenvector of delta");

  std::vector<Vec> chain{v};
  Vec w = v;
  Scalar expect = a;
  for (;;) {
    w = x.apply(w);
    expect = expect + f->one();
    if (Subspace::span(f, n, chain).contains(w)) break;
    // each iterate climbs one eigenvalue step
    if (!vec_eq(delta.apply(w), vec_scale(expect, w)))
      throw CheckError("iterate is not an eigenvector at the shifted eigenvalue");
    chain.push_back(w);
  }
  i64 k = i64(chain.size());
  i64 p = f->p();
  if (k % p != 0)
    throw CheckError("cyclic span dimension is not a multiple of the characteristic");
  Poly q = relative_minpoly(x, v);
  if (q.degree() != int(k))
    throw CheckError("relative minimal polynomial degree mismatch");
  if (!q.in_tp_subring())
    throw CheckError("relative minimal polynomial has stray monomials");
  if (q.coeff(0).is_zero()) throw CheckError("constant term vanished");
  return PCyclicSummand{v, int(k / p), q, a};
}

std::vector<EigenCosetBlock> eigen_coset_blocks(const Mat& x, const Mat& delta) {
  if (x.rows() != x.cols() || delta.rows() != delta.cols() ||
      x.rows() != delta.rows())
    throw HypothesisError("maps must be square and equally sized");
  if (!(commutator(delta, x) == x))
    throw HypothesisError("the relation [delta, x] = x fails");
  int n = x.rows();
  const Field& f = x.field();
  i64 p = f->p();

  auto eig = eigen_decomposition(delta);
  int eigtotal = 0;
  for (const auto& [ev, es] : eig) eigtotal += es.dim();
  if (eigtotal != n) throw HypothesisError("delta is not diagonalizable");

  std::vector<EigenCosetBlock> blocks;
  for (const auto& [ev, es] : eig) {
    EigenCosetBlock* home = nullptr;
    for (auto& blk : blocks)
      if ((ev - blk.base).in_prime_field()) {
        home = &blk;
        break;
      }
    if (!home) {
      blocks.push_back(EigenCosetBlock{
          ev, std::vector<Subspace>(size_t(p), Subspace::zero(f, n)),
          Subspace::zero(f, n)});
      home = &blocks.back();
    }
    for (i64 j = 0; j < p; ++j)
      if (home->base + f->from_int(j) == ev) {
        home->eigenspaces[size_t(j)] = es;
        break;
      }
  }
  for (auto& blk : blocks) {
    Subspace tot = Subspace::zero(f, n);
    for (const auto& es : blk.eigenspaces) tot = tot.sum(es);
    blk.total = tot;
    for (i64 j = 0; j < p; ++j) {
      const Subspace& next = blk.eigenspaces[size_t((j + 1) % p)];
      for (const auto& b : blk.eigenspaces[size_t(j)].basis())
        if (!next.contains(x.apply(b)))
          throw CheckError("x does not shift the eigenspaces cyclically");
    }
  }
  return blocks;
}

std::vector<PCyclicSummand> xp_decompose_primary(const Mat& x, const Mat& delta,
                                                 const EigenCosetBlock& block) {
  Mat xb = restrict_to(x, block.total);
  Mat db = restrict_to(delta, block.total);
  auto sums = primary_rec(xb, db, block.base);
  for (auto& s : sums) s.generator = combine(block.total.basis(), s.generator);
  return sums;
}

XpDecomposition xp_decompose(const LieAlg& l, const Vec& x, const Derivation& d) {
  int n = l.dim();
  if (int(x.size()) != n)
    throw HypothesisError("element size does not match the algebra");
  if (d.matrix.rows() != n || d.matrix.cols() != n)
    throw HypothesisError("derivation size does not match the algebra");
  if (!is_derivation(l, d.matrix))
    throw HypothesisError("map is not a derivation of the algebra");
  Subspace der = derived_subalgebra(l);
  if (der.dim() == 0)
    throw HypothesisError("derived subalgebra is zero, nothing to decompose");
  if (der.dim() != n - 1)
    throw HypothesisError("derived subalgebra must have codimension one");
  for (const auto& u : der.basis())
    for (const auto& v : der.basis())
      if (!vec_is_zero(l.bracket(u, v)))
        throw HypothesisError("derived subalgebra is not abelian");
  if (der.contains(x))
    throw HypothesisError("chosen element lies in the derived subalgebra");
  if (rank(restrict_to(l.ad(x), der)) != der.dim())
    throw HypothesisError("element does not act invertibly on the derived subalgebra");
  if (!is_nonsingular(d.matrix)) throw HypothesisError("derivation is singular");

  NormalizedDerivation norm = normalize_derivation(l, x, d);
  LieAlg lw = norm.algebra;
  Vec xw = norm.x;
  Mat dmat = norm.delta.matrix;

  // extend further until the action of x splits into linear factors
  for (;;) {
    Subspace iw = derived_subalgebra(lw);
    int sd = splitting_degree(minpoly(restrict_to(lw.ad(xw), iw)));
    if (sd == 1) break;
    Field work = FiniteField::make(lw.field()->p(), lw.field()->k() * sd);
    xw = embed_vec(xw, work);
    dmat = embed_mat(dmat, work);
    lw = extend_scalars(lw, work);
  }

  Subspace iw = derived_subalgebra(lw);
  Mat psi = restrict_to(lw.ad(xw), iw);
  Mat beta = restrict_to(dmat, iw);

  std::vector<PCyclicSummand> out;
  for (const auto& comp : primary_decomposition(psi)) {
    if (comp.q.degree() != 1)
      throw CheckError("action of x failed to split over the working field");
    Mat psi_s = restrict_to(psi, comp.space);
    Mat beta_s;
    try {
      beta_s = restrict_to(beta, comp.space);
    } catch (const HypothesisError&) {
      throw CheckError("primary component is not invariant under the derivation");
    }
    for (const auto& block : eigen_coset_blocks(psi_s, beta_s))
      for (const auto& s : xp_decompose_primary(psi_s, beta_s, block)) {
        Vec gi = combine(comp.space.basis(), s.generator);
        Vec gl = combine(iw.basis(), gi);
        out.push_back(PCyclicSummand{gl, s.r, s.minpoly, s.eigenvalue});
      }
  }

  Mat adx = lw.ad(xw);
  int total = 0;
  std::vector<Vec> all;
  for (const auto& s : out) {
    Vec g = s.generator;
    for (int i = 0; i < s.minpoly.degree(); ++i) {
      all.push_back(g);
      g = adx.apply(g);
    }
    total += s.minpoly.degree();
  }
  if (total != iw.dim() ||
      Subspace::span(lw.field(), n, all).dim() != iw.dim())
    throw CheckError("summands do not fill the derived subalgebra");

  return XpDecomposition{lw, xw, Derivation{lw, dmat}, iw, out, norm.power_steps};
}

BuiltAlgebra build_derivation(const std::vector<Poly>& minpolys, const Field& f) {
  if (minpolys.empty()) throw HypothesisError("need at least one summand");
  i64 p = f->p();
  int mdim = 0;
  for (const auto& q : minpolys) {
    if (!same_field(q.field(), f))
      throw HypothesisError("polynomial field does not match");
    if (q.is_zero() || !q.lead().is_one())
      throw HypothesisError("minimal polynomials must be monic");
    if (q.degree() < 1)
      throw HypothesisError("minimal polynomials must not be constant");
    if (!q.in_tp_subring())
      throw HypothesisError("minimal polynomial has monomials away from powers of p");
    if (q.coeff(0).is_zero())
      throw HypothesisError("minimal polynomial needs a non-zero constant term");
    mdim += q.degree();
  }
  DegreeChoice dc = choose_degrees(int(minpolys.size()), f);

  Mat psi(f, mdim, mdim);
  int off = 0;
  for (const auto& q : minpolys) {
    Mat c = Mat::companion(q);
    for (int r = 0; r < q.degree(); ++r)
      for (int cc = 0; cc < q.degree(); ++cc) psi.at(off + r, off + cc) = c.at(r, cc);
    off += q.degree();
  }

  std::vector<std::string> labels;
  for (size_t j = 0; j < minpolys.size(); ++j)
    for (int i = 0; i < minpolys[j].degree(); ++i)
      labels.push_back("v" + std::to_string(j + 1) + "_" + std::to_string(i));
  LieAlg k(f, 1, {}, {"x"});
  LieAlg ideal(f, mdim, {}, labels);
  Representation rep{k, mdim, {psi}};
  LieAlg alg = semidirect_sum(k, rep, ideal);

  Mat dm(f, 1 + mdim, 1 + mdim);
  dm.at(0, 0) = dc.b;
  off = 1;
  for (size_t j = 0; j < minpolys.size(); ++j)
    for (int i = 0; i < minpolys[j].degree(); ++i, ++off)
      dm.at(off, off) = dc.as[j] + f->from_int(i) * dc.b;

  Derivation delta;
  try {
    delta = Derivation::make(alg, dm);
  } catch (const HypothesisError&) {
    throw CheckError("degree assignment failed the Leibniz rule");
  }
  if (!delta.nonsingular()) throw CheckError("built derivation is singular");
  std::set<i64> distinct;
  for (int i = 0; i < 1 + mdim; ++i) distinct.insert(dm.at(i, i).index());
  if (i64(distinct.size()) != p * i64(minpolys.size()) + 1)
    throw CheckError("eigenvalue count is off");

  return BuiltAlgebra{alg, unit_vec(f, 1 + mdim, 0), delta, dc.b, dc.as};
}

DegreeChoice choose_degrees(int s, const Field& f) {
  if (s < 1) throw HypothesisError("need at least one summand");
  if (f->k() < 2)
    throw HypothesisError("no valid degrees exist over the prime field");
  Scalar b = element_outside_prime_field(f);
  i64 p = f->p();
  auto in_pb = [&](const Scalar& v) {
    for (i64 c = 0; c < p; ++c)
      if (v == f->from_int(c) * b) return true;
    return false;
  };
  std::vector<Scalar> as;
  for (i64 idx = 1; idx < f->size() && int(as.size()) < s; ++idx) {
    Scalar a = f->element_at(idx);
    if (in_pb(a)) continue;
    bool clash = false;
    for (const auto& prev : as)
      if (in_pb(a - prev)) {
        clash = true;
        break;
      }
    if (!clash) as.push_back(a);
  }
  if (int(as.size()) < s)
    throw HypothesisError("field too small for the requested number of summands");
  std::set<i64> vals;
  for (const auto& a : as)
    for (i64 i = 0; i < p; ++i) vals.insert((a + f->from_int(i) * b).index());
  if (i64(vals.size()) != p * i64(s)) throw CheckError("degree set collapsed");
  vals.insert(b.index());
  if (i64(vals.size()) != p * i64(s) + 1)
    throw CheckError("degree of x collides with a module degree");
  return DegreeChoice{b, as};
}

}  // namespace liep
