#include "liep/verify.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "liep/pcyclic.hpp"
#include "liep/zoo.hpp"

namespace liep {

namespace {

using Rng = std::mt19937_64;

i64 binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  i64 r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;  // exact at each step
  return r;
}

Scalar rnd_scalar(Rng& g, const Field& f) {
  return f->element_at(i64(g() % std::uint64_t(f->size())));
}

Scalar rnd_nonzero(Rng& g, const Field& f) {
  for (;;) {
    Scalar s = rnd_scalar(g, f);
    if (!s.is_zero()) return s;
  }
}

Vec rnd_vec(Rng& g, const Field& f, int n) {
  Vec v = zero_vec(f, n);
  for (auto& e : v) e = rnd_scalar(g, f);
  return v;
}

Mat rnd_mat(Rng& g, const Field& f, int rows, int cols) {
  Mat m(f, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = rnd_scalar(g, f);
  return m;
}

Mat rnd_invertible(Rng& g, const Field& f, int n) {
  for (;;) {
    Mat m = rnd_mat(g, f, n, n);
    if (rank(m) == n) return m;
  }
}

// strictly lower triangular in a random frame
Mat rnd_nilpotent(Rng& g, const Field& f, int n) {
  Mat low(f, n, n);
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j) low.at(i, j) = rnd_scalar(g, f);
  Mat p = rnd_invertible(g, f, n);
  return p * low * p.inverse();
}

Mat shift_block(const Field& f, int n) {
  Mat j(f, n, n);
  for (int i = 0; i + 1 < n; ++i) j.at(i + 1, i) = f->one();
  return j;
}

Vec rnd_in(Rng& g, const Subspace& s) {
  Vec v = zero_vec(s.field(), s.ambient());
  for (const auto& b : s.basis()) v = vec_add(v, vec_scale(rnd_scalar(g, s.field()), b));
  return v;
}

struct Ctx {
  SuiteResult res;

  explicit Ctx(std::string name) { res.suite = std::move(name); }
  void instance() { ++res.trials; }
  void check(bool ok, const std::string& what) {
    if (ok) return;
    ++res.failures;
    if (res.first_failure.empty()) res.first_failure = what;
  }
  void note(const std::string& key, const std::string& value) {
    res.notes.push_back(key + "=" + value);
  }
};

// ---- brackpow: expand an iterated bracket -----------------------------------
// bracketing x against y n times gives sum_{i=0..n} (-1)^i C(n,i) x^{n-i} y x^i;
// the suite keeps n below the characteristic, where the binomials match the
// integer ones.

SuiteResult suite_brackpow(const SuiteOptions& opt) {
  Ctx c("brackpow");
  i64 p = opt.p ? opt.p : 7;
  int nmax = opt.n ? opt.n : 6;
  int trials = opt.trials ? opt.trials : 100;
  if (nmax >= p) throw HypothesisError("power bound must stay below the characteristic");
  Rng g(opt.seed * 0x9e3779b97f4a7c15ull + 1);
  Field base = FiniteField::make(p, 1);
  Field ext = FiniteField::make(p, 2);
  for (int t = 0; t < trials; ++t) {
    const Field& f = (t % 4 == 3) ? ext : base;
    int n = 2 + int(g() % 5);
    Mat x = rnd_mat(g, f, n, n);
    Mat y = rnd_mat(g, f, n, n);
    std::vector<Mat> xp = {Mat::identity(f, n)};
    for (int e = 1; e <= nmax; ++e) xp.push_back(xp.back() * x);
    c.instance();
    Mat lhs = y;
    for (int e = 1; e <= nmax; ++e) {
      lhs = commutator(x, lhs);
      Mat rhs(f, n, n);
      for (int i = 0; i <= e; ++i) {
        i64 sign = (i % 2) ? -1 : 1;
        rhs = rhs + (xp[e - i] * y * xp[i]).scaled(f->from_int(sign * binom(e, i)));
      }
      c.check(lhs == rhs, "expansion failed at power " + std::to_string(e));
    }
  }
  c.note("p", std::to_string(p));
  c.note("n_max", std::to_string(nmax));
  return c.res;
}

// ---- leibpow: iterated Leibniz rule ----------------------------------------
// d^n [u, v] = sum_k C(n,k) [d^k u, d^{n-k} v] for every derivation, all n.

SuiteResult suite_leibpow(const SuiteOptions& opt) {
  Ctx c("leibpow");
  Rng g(opt.seed * 0x9e3779b97f4a7c15ull + 2);
  int reps = opt.trials ? opt.trials : 6;

  struct Item {
    LieAlg l;
    Mat d;
  };
  std::vector<Item> items;
  Field f9 = FiniteField::make(3, 2);
  Field f25 = FiniteField::make(5, 2);
  {
    Mattarei m = mattarei(f9);
    items.push_back({m.algebra, m.delta.matrix});
    MaxClass mc = max_class_example(f9);
    items.push_back({mc.algebra, mc.delta.matrix});
    Heis2p h = heisenberg_2p(f9);
    items.push_back({h.algebra, h.delta.matrix});
    HeisP3 h3 = heisenberg_p3(f9);
    items.push_back({h3.algebra, h3.delta.matrix});
    Mattarei m5 = mattarei(f25);
    items.push_back({m5.algebra, m5.delta.matrix});
    Heis2p h5 = heisenberg_2p(f25);
    items.push_back({h5.algebra, h5.delta.matrix});
  }

  for (const auto& it : items) {
    const Field& f = it.l.field();
    i64 p = f->p();
    int nmax = opt.n ? opt.n : int(2 * p);
    int dim = it.l.dim();
    std::vector<Mat> dp = {Mat::identity(f, dim)};
    for (int e = 1; e <= nmax; ++e) dp.push_back(dp.back() * it.d);
    for (int r = 0; r < reps; ++r) {
      Vec u = rnd_vec(g, f, dim);
      Vec v = rnd_vec(g, f, dim);
      Vec uv = it.l.bracket(u, v);
      c.instance();
      for (int e = 1; e <= nmax; ++e) {
        Vec rhs = zero_vec(f, dim);
        for (int k = 0; k <= e; ++k) {
          Vec term = it.l.bracket(dp[k].apply(u), dp[e - k].apply(v));
          rhs = vec_add(rhs, vec_scale(f->from_int(binom(e, k)), term));
        }
        c.check(vec_eq(dp[e].apply(uv), rhs),
                "iterated rule failed at power " + std::to_string(e));
      }
    }
  }
  return c.res;
}

// ---- frobder: p-th powers of derivations and of compatible pairs ----------

SuiteResult suite_frobder(const SuiteOptions& opt) {
  Ctx c("frobder");
  Field f4 = FiniteField::make(2, 2);
  Field f9 = FiniteField::make(3, 2);
  Field f25 = FiniteField::make(5, 2);

  std::vector<Derivation> ds;
  ds.push_back(mattarei(f4).delta);
  ds.push_back(mattarei(f9).delta);
  ds.push_back(mattarei(f25).delta);
  ds.push_back(max_class_example(f9).delta);
  ds.push_back(heisenberg_2p(f9).delta);
  ds.push_back(heisenberg_p3(f9).delta);

  for (const auto& d : ds) {
    c.instance();
    i64 p = d.algebra.field()->p();
    Mat dp = d.matrix.pow(p);
    c.check(is_derivation(d.algebra, dp), "p-th power left the derivation space");
    c.check(frobenius_power(d).matrix == dp,
            "power helper disagrees with the plain matrix power");
  }

  // every basis pair of the compatibility space keeps the property under the
  // p-th power
  struct RepItem {
    Representation rep;
    std::string name;
  };
  std::vector<RepItem> reps;
  for (const Field& f : {f9, f25}) {
    int p = int(f->p());
    Mat s(f, p, p);
    for (int i = 0; i < p; ++i) s.at((i + 1) % p, i) = f->one();
    reps.push_back({Representation{LieAlg::abelian(f, 1), p, {s}},
                    "cycle/" + std::to_string(p)});
  }
  {
    MaxClassStructure mc = max_class_structure(f9);
    reps.push_back({Representation{mc.k, mc.k_mats[0].rows(), mc.k_mats}, "maxclass/3"});
  }
  for (const auto& ri : reps) {
    auto pairs = compatible_pair_space(ri.rep);
    c.note(ri.name, std::to_string(pairs.size()));
    for (const auto& pr : pairs) {
      c.instance();
      c.check(is_compatible_pair(ri.rep, pr), "space element is not compatible");
      c.check(is_compatible_pair(ri.rep, frobenius_power(ri.rep, pr)),
              "p-th power of a pair lost compatibility");
    }
  }
  return c.res;
}

// ---- commpow: [a, b^r] under [a, b] = c + lambda b, [b, c] = 0 -------------
// solve for a inside a regular nilpotent frame, conjugate, then check
// [a, b^r] = r b^{r-1} c + lambda r b^r for r up to the requested bound; when
// lambda != 0 and c is nilpotent, b itself must be nilpotent.

Mat solve_bracket(const Mat& b, const Mat& rhs) {
  const Field& f = b.field();
  int n = b.rows();
  Mat sys(f, n * n, n * n);
  for (int r = 0; r < n; ++r)
    for (int cc = 0; cc < n; ++cc)
      for (int l = 0; l < n; ++l) {
        sys.at(r * n + cc, r * n + l) = sys.at(r * n + cc, r * n + l) + b.at(l, cc);
        sys.at(r * n + cc, l * n + cc) = sys.at(r * n + cc, l * n + cc) - b.at(r, l);
      }
  Vec rv = zero_vec(f, n * n);
  for (int r = 0; r < n; ++r)
    for (int cc = 0; cc < n; ++cc) rv[r * n + cc] = rhs.at(r, cc);
  auto sol = solve(sys, rv);
  if (!sol) throw CheckError("bracket equation unexpectedly unsolvable");
  Mat a(f, n, n);
  for (int r = 0; r < n; ++r)
    for (int cc = 0; cc < n; ++cc) a.at(r, cc) = (*sol)[r * n + cc];
  return a;
}

SuiteResult suite_commpow(const SuiteOptions& opt) {
  Ctx c("commpow");
  i64 p = opt.p ? opt.p : 7;
  int trials = opt.trials ? opt.trials : 40;
  int rmax = opt.n ? opt.n : int(2 * p);
  Rng g(opt.seed * 0x9e3779b97f4a7c15ull + 3);
  Field f = FiniteField::make(p, 1);
  int nonzero_lambda = 0;
  for (int t = 0; t < trials; ++t) {
    c.instance();
    int n = 2 + int(g() % 5);
    Mat j = shift_block(f, n);
    Mat cm(f, n, n);
    if (t % 5 != 0) {
      int e = 1 + int(g() % std::max(1, n - 1));
      cm = j.pow(e).scaled(rnd_nonzero(g, f));
    }
    Scalar lam = (t % 3 == 0) ? f->zero() : rnd_nonzero(g, f);
    if (!lam.is_zero()) ++nonzero_lambda;
    Mat a0 = solve_bracket(j, cm + j.scaled(lam));

    Mat pm = rnd_invertible(g, f, n);
    Mat pin = pm.inverse();
    Mat a = pm * a0 * pin;
    Mat b = pm * j * pin;
    Mat cc = pm * cm * pin;

    c.check(commutator(a, b) == cc + b.scaled(lam), "setup relation failed");
    c.check(commutator(b, cc).is_zero(), "c stopped commuting with b");
    std::vector<Mat> bp = {Mat::identity(f, n)};
    for (int r = 1; r <= rmax; ++r) bp.push_back(bp.back() * b);
    for (int r = 1; r <= rmax; ++r) {
      Scalar rr = f->from_int(r);
      Mat want = (bp[r - 1] * cc).scaled(rr) + bp[r].scaled(lam * rr);
      c.check(commutator(a, bp[r]) == want,
              "power identity failed at r=" + std::to_string(r));
    }
    if (!lam.is_zero())
      c.check(is_nilpotent_mat(b), "b must be nilpotent when lambda is non-zero");
  }
  c.note("nonzero_lambda", std::to_string(nonzero_lambda));
  c.note("r_max", std::to_string(rmax));
  return c.res;
}

// ---- nilaction: small modules force nilpotent actions ----------------------
// a solvable K acting on a module of dimension below p, with a compatible
// pair whose first component is invertible, can only act by nilpotent maps;
// the p-dimensional cycle module shows the bound is sharp.

std::optional<CompatPair> invertible_alpha_pair(Rng& g, const Field& f,
                                                const std::vector<CompatPair>& basis,
                                                int attempts) {
  for (const auto& pr : basis)
    if (is_nonsingular(pr.alpha)) return pr;
  if (basis.empty()) return std::nullopt;
  int s = basis[0].alpha.rows();
  int m = basis[0].beta.rows();
  for (int t = 0; t < attempts; ++t) {
    Mat a(f, s, s), b(f, m, m);
    for (const auto& pr : basis) {
      Scalar w = rnd_scalar(g, f);
      a = a + pr.alpha.scaled(w);
      b = b + pr.beta.scaled(w);
    }
    if (is_nonsingular(a)) return CompatPair{a, b};
  }
  return std::nullopt;
}

SuiteResult suite_nilaction(const SuiteOptions& opt) {
  Ctx c("nilaction");
  int want = opt.trials ? opt.trials : 50;
  Rng g(opt.seed * 0x9e3779b97f4a7c15ull + 4);
  std::vector<i64> ps = opt.p ? std::vector<i64>{opt.p} : std::vector<i64>{5, 7};
  for (i64 p : ps)
    if (p < 3) throw HypothesisError("need p >= 3 so a module fits below p");
  int done = 0, skipped = 0, which = 0;
  while (done < want && skipped < 10 * want + 20) {
    i64 p = ps[std::size_t(which) % ps.size()];
    Field f = FiniteField::make(p, 1);
    int m = 2 + int(g() % std::uint64_t(p - 2));  // module dim below p
    Representation rep;
    if (which % 2 == 0) {
      rep = Representation{LieAlg::abelian(f, 1), m, {rnd_nilpotent(g, f, m)}};
    } else {
      // two commuting generators: a nilpotent map and one of its powers
      Mat pm = rnd_invertible(g, f, m);
      Mat x1 = pm * shift_block(f, m) * pm.inverse();
      int d = (m >= 3) ? 2 + int(g() % std::uint64_t(m - 2)) : 1;
      Mat x2 = x1.pow(d).scaled(rnd_nonzero(g, f));
      rep = Representation{LieAlg::abelian(f, 2), m, {x1, x2}};
    }
    ++which;
    auto pairs = compatible_pair_space(rep);
    auto pr = invertible_alpha_pair(g, f, pairs, 40);
    if (!pr) {
      ++skipped;
      continue;
    }
    c.instance();
    ++done;
    c.check(verify_nilpotent_action(rep, *pr), "action failed to be nilpotent");
  }
  c.check(done == want, "could not draw enough instances with an invertible alpha");
  c.note("instances", std::to_string(done));
  c.note("skipped", std::to_string(skipped));

  // sharpness: the p-cycle module has dimension exactly p and an invertible
  // action, with a perfectly good compatible pair
  {
    Field f = FiniteField::make(3, 2);
    Mattarei m = mattarei(f);
    int p = 3;
    Mat s(f, p, p);
    for (int i = 0; i < p; ++i) s.at((i + 1) % p, i) = f->one();
    Representation rep{LieAlg::abelian(f, 1), p, {s}};
    Mat alpha(f, 1, 1);
    alpha.at(0, 0) = m.alpha;
    Mat beta(f, p, p);
    for (int i = 0; i < p; ++i) beta.at(i, i) = m.delta.matrix.at(1 + i, 1 + i);
    CompatPair pr{alpha, beta};
    c.instance();
    c.check(is_compatible_pair(rep, pr), "cycle pair must be compatible");
    c.check(!verify_nilpotent_action(rep, pr),
            "the p-dimensional cycle module must escape the bound");
  }

  // the non-nilpotent 2-dim algebra admits no invertible derivation at all,
  // so it can never appear as the acting algebra here
  {
    Field f = FiniteField::make(5, 1);
    Vec e1 = unit_vec(f, 2, 1);
    LieAlg aff(f, 2, {{0, 1, e1}}, {"x", "y"});
    bool any = false;
    for (const auto& d : derivation_space(aff)) any = any || is_nonsingular(d.matrix);
    c.instance();
    c.check(!any, "the 2-dim non-nilpotent algebra has only singular derivations");
  }
  return c.res;
}

// ---- derbound: why the examples escape the nilpotency criterion ------------
// a solvable algebra with an invertible derivation whose derived-series
// quotients all stay below p would be nilpotent; each example family is
// solvable, carries an invertible derivation, and is not nilpotent, so some
// quotient must reach p.

SuiteResult suite_derbound(const SuiteOptions&) {
  Ctx c("derbound");
  struct Entry {
    std::string name;
    LieAlg l;
    Mat d;
  };
  std::vector<Entry> es;
  Field f4 = FiniteField::make(2, 2);
  Field f8 = FiniteField::make(2, 3);
  Field f9 = FiniteField::make(3, 2);
  Field f25 = FiniteField::make(5, 2);
  {
    Mattarei m = mattarei(f4);
    es.push_back({"shift/2", m.algebra, m.delta.matrix});
    Mattarei m3 = mattarei(f9);
    es.push_back({"shift/3", m3.algebra, m3.delta.matrix});
    Mattarei m5 = mattarei(f25);
    es.push_back({"shift/5", m5.algebra, m5.delta.matrix});
    MaxClass c2 = max_class_example(f8);
    es.push_back({"maxclass/2", c2.algebra, c2.delta.matrix});
    MaxClass c3 = max_class_example(f9);
    es.push_back({"maxclass/3", c3.algebra, c3.delta.matrix});
    MaxClass c5 = max_class_example(f25);
    es.push_back({"maxclass/5", c5.algebra, c5.delta.matrix});
    Heis2p h3 = heisenberg_2p(f9);
    es.push_back({"heis2p/3", h3.algebra, h3.delta.matrix});
    Heis2p h5 = heisenberg_2p(f25);
    es.push_back({"heis2p/5", h5.algebra, h5.delta.matrix});
    HeisP3 g3 = heisenberg_p3(f9);
    es.push_back({"heisp3/3", g3.algebra, g3.delta.matrix});
    HeisP3 g5 = heisenberg_p3(f25);
    es.push_back({"heisp3/5", g5.algebra, g5.delta.matrix});
  }
  for (const auto& e : es) {
    c.instance();
    i64 p = e.l.field()->p();
    c.check(is_solvable(e.l), e.name + ": not solvable");
    c.check(!is_nilpotent(e.l).nilpotent, e.name + ": unexpectedly nilpotent");
    c.check(is_nonsingular(e.d), e.name + ": derivation is singular");
    auto steps = derived_quotient_dims(e.l);
    int big = *std::max_element(steps.begin(), steps.end());
    c.check(big >= int(p), e.name + ": every derived quotient stays below p");
    std::string dims;
    for (std::size_t i = 0; i < steps.size(); ++i)
      dims += (i ? "," : "") + std::to_string(steps[i]);
    c.note(e.name, dims);
  }
  return c.res;
}

// ---- primary: splitting along the minimal polynomial -----------------------
// component dimensions fill the space, restrictions realize the primary
// powers, and anything commuting with a power of x (here g(x^e) plus a
// rank-one kernel sample) keeps every component invariant.

SuiteResult suite_primary(const SuiteOptions& opt) {
  Ctx c("primary");
  int trials = opt.trials ? opt.trials : 100;
  Rng g(opt.seed * 0x9e3779b97f4a7c15ull + 5);
  std::vector<Field> fs = {FiniteField::make(2, 1), FiniteField::make(3, 1),
                           FiniteField::make(5, 1), FiniteField::make(2, 2),
                           FiniteField::make(3, 2)};
  for (int t = 0; t < trials; ++t) {
    const Field& f = fs[std::size_t(t) % fs.size()];
    int n = 2 + int(g() % 7);
    Mat x = rnd_mat(g, f, n, n);
    c.instance();

    auto comps = primary_decomposition(x);
    Poly mp = minpoly(x);
    int total = 0;
    Poly prod = Poly::one(f);
    for (const auto& comp : comps) {
      total += comp.space.dim();
      prod = prod * comp.q.pow(comp.multiplicity);
      c.check(check_invariance(comp.space, x), "component is not x-invariant");
      Mat rx = restrict_to(x, comp.space);
      c.check(minpoly(rx) == comp.q.pow(comp.multiplicity),
              "restriction has the wrong minimal polynomial");
    }
    c.check(total == n, "component dimensions do not fill the space");
    c.check(prod == mp, "primary powers do not rebuild the minimal polynomial");

    // sample commuting with x^e: a polynomial in x^e plus a rank-one map
    // sending ker(x^e) through coker(x^e)
    int e = 1 + int(g() % 3);
    Mat xe = x.pow(e);
    Poly gp(f, {rnd_scalar(g, f), rnd_scalar(g, f), rnd_scalar(g, f)});
    Vec u = rnd_in(g, kernel(xe));
    Vec w = rnd_in(g, kernel(xe.transpose()));
    Mat y = gp.eval(xe) + Mat::outer(u, w);
    c.check(commutator(xe, y).is_zero(), "sample does not commute with the power");
    Mat ad = y;
    for (int i = 0; i < 2 * e - 1; ++i) ad = commutator(x, ad);
    c.check(ad.is_zero(), "iterated bracket with x does not vanish");
    for (const auto& comp : comps)
      c.check(check_invariance(comp.space, y),
              "component moved under the commuting sample");
  }
  return c.res;
}

// ---- delinv: [beta, x] = b x keeps the primary components of x invariant ---

SuiteResult suite_delinv(const SuiteOptions& opt) {
  Ctx c("delinv");

  // concrete module blocks from the example families
  struct Z {
    std::string name;
    Mat x, beta;
    Scalar b;
  };
  std::vector<Z> zs;
  Field f9 = FiniteField::make(3, 2);
  {
    Mattarei m = mattarei(f9);
    std::vector<Vec> mod;
    for (int i = 1; i <= 3; ++i) mod.push_back(unit_vec(f9, 4, i));
    Subspace s = Subspace::span(f9, 4, mod);
    zs.push_back({"shift/3", restrict_to(m.algebra.ad(m.x), s),
                  restrict_to(m.delta.matrix, s), m.alpha});
  }
  {
    MaxClass mc = max_class_example(f9);
    int dk = mc.k.dim(), md = mc.x.rows();
    std::vector<Vec> mod;
    for (int i = 0; i < md; ++i) mod.push_back(unit_vec(f9, dk + md, dk + i));
    Subspace s = Subspace::span(f9, dk + md, mod);
    zs.push_back({"maxclass/3", mc.x, restrict_to(mc.delta.matrix, s), f9->one()});
  }
  {
    Heis2p h = heisenberg_2p(f9);
    int dk = h.h.dim(), md = h.x.rows();
    std::vector<Vec> mod;
    for (int i = 0; i < md; ++i) mod.push_back(unit_vec(f9, dk + md, dk + i));
    Subspace s = Subspace::span(f9, dk + md, mod);
    zs.push_back({"heis2p/3", h.x, restrict_to(h.delta.matrix, s), f9->one()});
  }
  {
    HeisP3 h = heisenberg_p3(f9);
    int dk = h.h.dim(), md = h.x.rows();
    std::vector<Vec> mod;
    for (int i = 0; i < md; ++i) mod.push_back(unit_vec(f9, dk + md, dk + i));
    Subspace s = Subspace::span(f9, dk + md, mod);
    zs.push_back({"heisp3/3", h.x, restrict_to(h.delta.matrix, s), h.a});
  }
  for (const auto& z : zs) {
    c.instance();
    c.check(commutator(z.beta, z.x) == z.x.scaled(z.b), z.name + ": scaling relation failed");
    for (const auto& comp : primary_decomposition(z.x))
      c.check(check_invariance(comp.space, z.beta), z.name + ": component moved");
  }

  // random solutions of the linear condition itself
  int trials = opt.trials ? opt.trials : 40;
  Rng g(opt.seed * 0x9e3779b97f4a7c15ull + 6);
  std::vector<Field> fields = {FiniteField::make(3, 1), FiniteField::make(5, 1),
                               FiniteField::make(3, 2)};
  int scaled_cases = 0;
  for (int t = 0; t < trials; ++t) {
    const Field& f = fields[std::size_t(t) % fields.size()];
    int n = 2 + int(g() % 5);
    Mat x(f, n, n);
    if (t % 2 == 0) {
      x = rnd_mat(g, f, n, n);
    } else {
      Mat pm = rnd_invertible(g, f, n);
      x = pm * shift_block(f, n) * pm.inverse();  // graded, so b != 0 shows up
    }
    // unknowns (beta, b): [beta, x] - b x = 0 entrywise
    Mat sys(f, n * n, n * n + 1);
    for (int r = 0; r < n; ++r)
      for (int cc = 0; cc < n; ++cc) {
        for (int l = 0; l < n; ++l) {
          sys.at(r * n + cc, r * n + l) = sys.at(r * n + cc, r * n + l) + x.at(l, cc);
          sys.at(r * n + cc, l * n + cc) = sys.at(r * n + cc, l * n + cc) - x.at(r, l);
        }
        sys.at(r * n + cc, n * n) = f->zero() - x.at(r, cc);
      }
    auto sols = kernel(sys);
    c.instance();
    for (int pick = 0; pick < 3; ++pick) {
      Vec sol = rnd_in(g, sols);
      Mat beta(f, n, n);
      for (int r = 0; r < n; ++r)
        for (int cc = 0; cc < n; ++cc) beta.at(r, cc) = sol[r * n + cc];
      Scalar b = sol[n * n];
      if (!b.is_zero()) ++scaled_cases;
      c.check(commutator(beta, x) == x.scaled(b), "kernel element violates the relation");
      for (const auto& comp : primary_decomposition(x))
        c.check(check_invariance(comp.space, beta), "component moved under beta");
    }
  }
  c.note("scaled_cases", std::to_string(scaled_cases));
  return c.res;
}

// ---- roundtrip: rebuild requested summands ----------------------------------
// choose minimal polynomials (t^p - c)^r, build the algebra with its diagonal
// derivation, decompose, and compare: same number of summands, same dimension
// multiset, orbits filling the ideal, sp + 1 distinct degrees, every summand
// passing the cyclicity check on its own span.

SuiteResult suite_roundtrip(const SuiteOptions& opt) {
  Ctx c("roundtrip");
  Rng g(opt.seed * 0x9e3779b97f4a7c15ull + 7);
  int total = opt.trials ? opt.trials : 108;
  struct Plan {
    i64 p;
    int k;
    int smax;
  };
  std::vector<Plan> plans = {{2, 3, 3}, {3, 2, 2}, {5, 2, 3}, {3, 3, 3}};
  if (opt.p) {
    std::vector<Plan> kept;
    for (const auto& pl : plans)
      if (pl.p == opt.p) kept.push_back(pl);
    if (kept.empty()) throw HypothesisError("no field plan for the requested p");
    plans = kept;
  }
  int rebuilt = 0;
  for (int t = 0; t < total; ++t) {
    const Plan& pl = plans[std::size_t(t) % plans.size()];
    Field f = FiniteField::make(pl.p, pl.k);
    int smax = opt.s ? std::min(opt.s, pl.smax) : pl.smax;
    int s = 1 + int(g() % std::uint64_t(smax));
    std::vector<Poly> qs;
    std::multiset<int> want;
    for (int j = 0; j < s; ++j) {
      int r = 1 + int(g() % 3);
      Poly base = Poly::t(f).pow(pl.p) - Poly::one(f).scaled(rnd_nonzero(g, f));
      qs.push_back(base.pow(r));
      want.insert(int(pl.p) * r);
    }
    c.instance();
    BuiltAlgebra built = build_derivation(qs, f);

    std::set<i64> degrees;
    for (int i = 0; i < built.algebra.dim(); ++i)
      degrees.insert(built.delta.matrix.at(i, i).index());
    c.check(int(degrees.size()) == s * int(pl.p) + 1, "degree count is off");

    XpDecomposition dec = xp_decompose(built.algebra, built.x, built.delta);
    const Field& wf = dec.algebra.field();
    c.check(wf->p() == pl.p, "working characteristic changed");

    std::multiset<int> got;
    std::vector<Vec> orbit_vecs;
    Mat adx = dec.algebra.ad(dec.x);
    bool cyclic_ok = true;
    for (const auto& su : dec.summands) {
      got.insert(su.r * int(pl.p));
      Vec v = su.generator;
      std::vector<Vec> orbit;
      for (int i = 0; i < su.r * int(pl.p); ++i) {
        orbit.push_back(v);
        orbit_vecs.push_back(v);
        v = adx.apply(v);
      }
      Subspace span = Subspace::span(wf, dec.algebra.dim(), orbit);
      if (span.dim() != su.r * int(pl.p)) cyclic_ok = false;
      XpCyclicCheck ck = is_xp_cyclic(restrict_to(adx, span));
      if (!ck.ok) cyclic_ok = false;
    }
    c.check(cyclic_ok, "a summand failed the cyclicity check");
    c.check(got == want, "summand dimension multiset changed");
    c.check(int(dec.summands.size()) == s, "summand count changed");
    Subspace all = Subspace::span(wf, dec.algebra.dim(), orbit_vecs);
    c.check(all.dim() == dec.ideal.dim() && dec.ideal.contains(all),
            "orbits do not fill the ideal");
    if (got == want) ++rebuilt;
  }
  c.note("rebuilt", std::to_string(rebuilt));
  return c.res;
}

using SuiteFn = SuiteResult (*)(const SuiteOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"brackpow", suite_brackpow}, {"leibpow", suite_leibpow},
      {"frobder", suite_frobder},   {"commpow", suite_commpow},
      {"nilaction", suite_nilaction}, {"derbound", suite_derbound},
      {"primary", suite_primary},   {"delinv", suite_delinv},
      {"roundtrip", suite_roundtrip},
  };
  return r;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : registry()) out.push_back(name);
  return out;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opt) {
  for (const auto& [n, fn] : registry())
    if (n == name) return fn(opt);
  throw HypothesisError("unknown suite: " + name);
}

}  // namespace liep
