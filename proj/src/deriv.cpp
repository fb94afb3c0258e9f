#include "liep/deriv.hpp"

#include <numeric>

namespace liep {

bool is_derivation(const LieAlg& l, const Mat& m) {
  int n = l.dim();
  if (m.rows() != n || m.cols() != n) return false;
  if (!same_field(m.field(), l.field())) return false;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec lhs = m.apply(l.bracket_basis(i, j));
      Vec rhs = vec_add(l.bracket(m.col(i), unit_vec(l.field(), n, j)),
                        l.bracket(unit_vec(l.field(), n, i), m.col(j)));
      if (!vec_eq(lhs, rhs)) return false;
    }
  return true;
}

bool is_nonsingular(const Mat& m) { return rank(m) == m.rows(); }

Derivation Derivation::make(const LieAlg& l, const Mat& m) {
  if (!is_derivation(l, m)) throw HypothesisError("map violates the Leibniz rule");
  return Derivation{l, m};
}

bool Derivation::nonsingular() const { return is_nonsingular(matrix); }

Derivation Derivation::scaled(const Scalar& c) const {
  return Derivation{algebra, matrix.scaled(c)};
}

namespace {

// index of unknown D_{r,c} in a flattened n x n matrix
int flat(int n, int r, int c) { return r * n + c; }

// rows of the Leibniz condition for one algebra, in the unknown block
// starting at column `offset` of a wider system
void leibniz_rows(const LieAlg& l, std::vector<Vec>& rows, int total_cols,
                  int offset) {
  const Field& f = l.field();
  int n = l.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec w = l.bracket_basis(i, j);
      for (int r = 0; r < n; ++r) {
        Vec row = zero_vec(f, total_cols);
        for (int c = 0; c < n; ++c)
          row[offset + flat(n, r, c)] = row[offset + flat(n, r, c)] + w[c];
        for (int rp = 0; rp < n; ++rp) {
          Scalar b1 = l.bracket_basis(rp, j)[r];
          Scalar b2 = l.bracket_basis(i, rp)[r];
          row[offset + flat(n, rp, i)] = row[offset + flat(n, rp, i)] - b1;
          row[offset + flat(n, rp, j)] = row[offset + flat(n, rp, j)] - b2;
        }
        rows.push_back(std::move(row));
      }
    }
}

Mat unflatten(const Field& f, const Vec& sol, int n, int offset) {
  Mat m(f, n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m.at(r, c) = sol[offset + flat(n, r, c)];
  return m;
}

}  // namespace

std::vector<Derivation> derivation_space(const LieAlg& l) {
  const Field& f = l.field();
  int n = l.dim();
  std::vector<Vec> rows;
  leibniz_rows(l, rows, n * n, 0);
  if (rows.empty()) rows.push_back(zero_vec(f, n * n));
  Subspace ker = kernel(Mat::from_rows(f, rows, n * n));
  std::vector<Derivation> out;
  for (const auto& sol : ker.basis())
    out.push_back(Derivation{l, unflatten(f, sol, n, 0)});
  return out;
}

std::vector<CompatPair> compatible_pair_space(const Representation& rep) {
  rep.validate();
  const Field& f = rep.algebra.field();
  int s = rep.algebra.dim();
  int m = rep.module_dim;
  int cols = s * s + m * m;
  std::vector<Vec> rows;
  leibniz_rows(rep.algebra, rows, cols, 0);
  // [beta, psi_i] = psi(alpha(k_i)) for every basis element of the algebra
  for (int i = 0; i < s; ++i) {
    const Mat& psi_i = rep.psi[i];
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) {
        Vec row = zero_vec(f, cols);
        for (int l2 = 0; l2 < m; ++l2) {
          int b1 = s * s + flat(m, r, l2);
          int b2 = s * s + flat(m, l2, c);
          row[b1] = row[b1] + psi_i.at(l2, c);
          row[b2] = row[b2] - psi_i.at(r, l2);
        }
        for (int j = 0; j < s; ++j) {
          int aji = flat(s, j, i);
          row[aji] = row[aji] - rep.psi[j].at(r, c);
        }
        rows.push_back(std::move(row));
      }
  }
  if (rows.empty()) rows.push_back(zero_vec(f, cols));
  Subspace ker = kernel(Mat::from_rows(f, rows, cols));
  std::vector<CompatPair> out;
  for (const auto& sol : ker.basis())
    out.push_back(CompatPair{unflatten(f, sol, s, 0), unflatten(f, sol, m, s * s)});
  return out;
}

bool is_compatible_pair(const Representation& rep, const CompatPair& pair) {
  if (!is_derivation(rep.algebra, pair.alpha)) return false;
  int s = rep.algebra.dim();
  for (int i = 0; i < s; ++i) {
    Mat lhs = commutator(pair.beta, rep.psi[i]);
    Mat rhs = rep.action(pair.alpha.col(i));
    if (!(lhs == rhs)) return false;
  }
  return true;
}

Mat pair_block(const CompatPair& pair) {
  const Field& f = pair.alpha.field();
  int s = pair.alpha.rows();
  int m = pair.beta.rows();
  Mat out(f, s + m, s + m);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) out.at(i, j) = pair.alpha.at(i, j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out.at(s + i, s + j) = pair.beta.at(i, j);
  return out;
}

Derivation frobenius_power(const Derivation& d) {
  i64 p = d.algebra.field()->p();
  Mat m = d.matrix.pow(p);
  if (!is_derivation(d.algebra, m))
    throw CheckError("p-th power of a derivation failed the Leibniz rule");
  return Derivation{d.algebra, m};
}

CompatPair frobenius_power(const Representation& rep, const CompatPair& pair) {
  i64 p = rep.algebra.field()->p();
  CompatPair out{pair.alpha.pow(p), pair.beta.pow(p)};
  if (!is_compatible_pair(rep, out))
    throw CheckError("p-th power of a compatible pair is not compatible");
  return out;
}

DiagonalizablePower diagonalizable_power(const Derivation& d) {
  if (!d.nonsingular()) throw HypothesisError("derivation is singular");
  i64 p = d.algebra.field()->p();
  MultOrder mo = mult_order(d.matrix);
  i64 pe = 1;
  for (i64 i = 0; i < mo.t; ++i) pe *= p;
  Mat m = d.matrix.pow(pe);
  if (!is_derivation(d.algebra, m))
    throw CheckError("diagonalizable power is not a derivation");
  if (!is_nonsingular(m)) throw CheckError("diagonalizable power is singular");
  Poly g = minpoly(m);
  if (poly_gcd(g, g.derivative()).degree() != 0)
    throw CheckError("diagonalizable power has a repeated minimal polynomial factor");
  return DiagonalizablePower{Derivation{d.algebra, m}, mo.t};
}

void validate_grading(const LieAlg& l, const Grading& g) {
  const Field& f = l.field();
  int n = l.dim();
  int total = 0;
  std::vector<Vec> all;
  for (size_t i = 0; i < g.components.size(); ++i) {
    const auto& [deg, space] = g.components[i];
    if (!same_field(deg.field(), f) || space.ambient() != n)
      throw HypothesisError("grading component does not match the algebra");
    if (space.dim() == 0) throw HypothesisError("empty grading component");
    for (size_t j = 0; j < i; ++j)
      if (g.components[j].first == deg)
        throw HypothesisError("duplicate degree in grading");
    total += space.dim();
    for (const auto& b : space.basis()) all.push_back(b);
  }
  if (total != n || Subspace::span(f, n, all).dim() != n)
    throw HypothesisError("grading components do not direct-sum to the algebra");
  for (const auto& [da, sa] : g.components)
    for (const auto& [db, sb] : g.components) {
      Scalar target = da + db;
      const Subspace* dest = nullptr;
      for (const auto& [dc, sc] : g.components)
        if (dc == target) dest = &sc;
      for (const auto& u : sa.basis())
        for (const auto& v : sb.basis()) {
          Vec w = l.bracket(u, v);
          if (dest ? !dest->contains(w) : !vec_is_zero(w))
            throw HypothesisError("grading violates bracket degree additivity");
        }
    }
}

Derivation derivation_from_grading(const LieAlg& l, const Grading& g) {
  validate_grading(l, g);
  const Field& f = l.field();
  int n = l.dim();
  std::vector<Vec> cols;
  Vec degs;
  for (const auto& [deg, space] : g.components)
    for (const auto& b : space.basis()) {
      cols.push_back(b);
      degs.push_back(deg);
    }
  Mat p(f, n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) p.at(i, j) = cols[j][i];
  Mat d(f, n, n);
  for (int j = 0; j < n; ++j) d.at(j, j) = degs[j];
  Mat m = p * d * p.inverse();
  if (!is_derivation(l, m))
    throw CheckError("grading did not induce a derivation");
  return Derivation{l, m};
}

Grading grading_from_derivation(const Derivation& d) {
  int n = d.algebra.dim();
  auto eig = eigen_decomposition(d.matrix);
  int total = 0;
  for (const auto& [lam, space] : eig) total += space.dim();
  if (total != n)
    throw HypothesisError("derivation is not diagonalizable over the base field");
  Grading g;
  for (auto& [lam, space] : eig) g.components.push_back({lam, space});
  try {
    validate_grading(d.algebra, g);
  } catch (const HypothesisError& e) {
    throw CheckError(std::string("eigenspaces of a derivation failed to grade: ") +
                     e.what());
  }
  return g;
}

namespace {

void require_same_algebra(const LieAlg& a, const LieAlg& b, const char* what) {
  if (a.dim() != b.dim() || !same_field(a.field(), b.field()) ||
      !(a.structure() == b.structure()))
    throw HypothesisError(std::string(what) + " belongs to a different algebra");
}

}  // namespace

NormalizedDerivation normalize_derivation(const LieAlg& l, const Vec& x,
                                          const Derivation& d) {
  const Field& f = l.field();
  int n = l.dim();
  require_same_algebra(l, d.algebra, "derivation");
  Subspace ideal = derived_subalgebra(l);
  if (ideal.dim() != n - 1)
    throw HypothesisError("derived subalgebra does not have codimension one");
  for (const auto& u : ideal.basis())
    for (const auto& v : ideal.basis())
      if (!vec_is_zero(l.bracket(u, v)))
        throw HypothesisError("derived subalgebra is not abelian");
  if ((int)x.size() != n || ideal.contains(x))
    throw HypothesisError("chosen element lies in the derived subalgebra");
  if (!d.nonsingular()) throw HypothesisError("derivation is singular");

  // coordinates in the decomposition <x> + ideal
  std::vector<Vec> deco_rows;
  deco_rows.push_back(x);
  for (const auto& b : ideal.basis()) deco_rows.push_back(b);
  Mat deco = Mat::from_rows(f, deco_rows, n).transpose();
  Mat deco_inv = deco.inverse();

  Vec dx = d.matrix.apply(x);
  Vec coords = deco_inv.apply(dx);
  Scalar alpha = coords[0];
  if (alpha.is_zero()) throw CheckError("image of the complement element fell into the ideal");
  Vec a = vec_sub(dx, vec_scale(alpha, x));

  // functional that reads off the x-coordinate
  Vec phi = deco_inv.row(0);
  Mat dprime = d.matrix - Mat::outer(a, phi);
  if (!is_derivation(l, dprime))
    throw CheckError("splitting the derivation along the ideal broke the Leibniz rule");
  if (!is_nonsingular(dprime)) throw CheckError("split derivation is singular");

  DiagonalizablePower dp = diagonalizable_power(Derivation{l, dprime});
  i64 p = f->p();
  i64 pe = 1;
  for (i64 i = 0; i < dp.t; ++i) pe *= p;

  Poly mp = minpoly(restrict_to(dp.derivation.matrix, ideal));
  // factor degrees are relative to the current field, so the splitting field
  // of mp has absolute degree k * lcm(factor degrees)
  int ext = f->k() * splitting_degree(mp);
  Field work = ext == f->k() ? f : FiniteField::make(p, ext);
  LieAlg lw = ext == f->k() ? l : extend_scalars(l, work);
  Vec xw = embed_vec(x, work);
  Mat dw = embed_mat(dp.derivation.matrix, work);

  Scalar factor = embed_scalar(alpha, work).pow(pe);
  Mat final_m = dw.scaled(factor.inverse());
  if (!vec_eq(final_m.apply(xw), xw))
    throw CheckError("normalized derivation does not fix the complement element");
  if (!is_derivation(lw, final_m) || !is_nonsingular(final_m))
    throw CheckError("normalization destroyed the derivation");
  Subspace iw = derived_subalgebra(lw);
  Mat restr = restrict_to(final_m, iw);
  int eigtotal = 0;
  for (const auto& [lam, space] : eigen_decomposition(restr)) eigtotal += space.dim();
  if (eigtotal != iw.dim())
    throw CheckError("normalized derivation is not diagonalizable on the ideal");
  return NormalizedDerivation{lw, xw, Derivation{lw, final_m}, dp.t};
}

EngelResult graded_engel_check(const LieAlg& l, const Grading& g, int n_max) {
  validate_grading(l, g);
  EngelResult res;
  int worst = 0;
  for (const auto& [da, sa] : g.components)
    for (const auto& [db, sb] : g.components)
      for (const auto& u : sa.basis())
        for (const auto& v : sb.basis()) {
          int found = 0;
          Vec w = v;
          for (int n = 1; n <= n_max; ++n) {
            w = l.bracket(u, w);
            if (vec_is_zero(w)) {
              found = n;
              break;
            }
          }
          if (found == 0) {
            res.engel = false;
            res.n = n_max;
            res.witness_u = u;
            res.witness_v = v;
            return res;
          }
          worst = std::max(worst, found);
        }
  res.engel = true;
  res.n = worst;
  if (!is_nilpotent(l).nilpotent)
    throw CheckError("graded Engel condition held on a non-nilpotent algebra");
  return res;
}

bool verify_nilpotent_action(const Representation& rep, const CompatPair& pair) {
  rep.validate();
  if (!is_compatible_pair(rep, pair))
    throw HypothesisError("pair is not compatible");
  if (!is_nonsingular(pair.alpha))
    throw HypothesisError("first component of the pair is singular");
  if (!is_solvable(rep.algebra))
    throw HypothesisError("acting algebra is not solvable");
  for (const auto& psi : rep.psi)
    if (!is_nilpotent_mat(psi)) return false;
  return true;
}

}  // namespace liep
