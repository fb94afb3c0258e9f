#include <deque>
#include <sstream>

#include "liep/liealg.hpp"

namespace liep {

struct LieAlg::Impl {
  Field field;
  int dim = 0;
  std::map<std::pair<int, int>, Vec> sc;  // keys i < j, nonzero values only
  std::vector<std::string> labels;
};

LieAlg::LieAlg(Field f, int dim, const std::vector<ScEntry>& entries,
               std::vector<std::string> labels) {
  auto impl = std::make_shared<Impl>();
  impl->field = std::move(f);
  impl->dim = dim;
  if (dim < 0) throw HypothesisError("negative dimension");
  for (const auto& e : entries) {
    if (e.i < 0 || e.j >= dim || e.i >= e.j)
      throw HypothesisError("structure constant indices must satisfy 0 <= i < j < dim");
    if (int(e.coeffs.size()) != dim)
      throw HypothesisError("structure constant vector has wrong length");
    if (vec_is_zero(e.coeffs)) continue;
    if (!impl->sc.emplace(std::make_pair(e.i, e.j), e.coeffs).second)
      throw HypothesisError("duplicate structure constant entry");
  }
  if (!labels.empty() && int(labels.size()) != dim)
    throw HypothesisError("label count must match dimension");
  impl->labels = std::move(labels);
  impl_ = std::move(impl);
}

LieAlg LieAlg::abelian(const Field& f, int dim) { return LieAlg(f, dim, {}); }

LieAlg LieAlg::heisenberg(const Field& f) {
  Vec z = zero_vec(f, 3);
  z[2] = f->one();
  return LieAlg(f, 3, {{0, 1, z}}, {"x", "y", "z"});
}

int LieAlg::dim() const { return impl_->dim; }
const Field& LieAlg::field() const { return impl_->field; }
const std::vector<std::string>& LieAlg::labels() const { return impl_->labels; }
const std::map<std::pair<int, int>, Vec>& LieAlg::structure() const { return impl_->sc; }

Vec LieAlg::bracket_basis(int i, int j) const {
  if (i == j) return zero_vec(impl_->field, impl_->dim);
  bool flip = i > j;
  if (flip) std::swap(i, j);
  auto it = impl_->sc.find({i, j});
  if (it == impl_->sc.end()) return zero_vec(impl_->field, impl_->dim);
  return flip ? vec_scale(-impl_->field->one(), it->second) : it->second;
}

Vec LieAlg::bracket(const Vec& u, const Vec& v) const {
  int n = impl_->dim;
  if (int(u.size()) != n || int(v.size()) != n)
    throw HypothesisError("bracket operand has wrong length");
  Vec out = zero_vec(impl_->field, n);
  for (const auto& [key, c] : impl_->sc) {
    auto [i, j] = key;
    Scalar w = u[i] * v[j] - u[j] * v[i];
    if (w.is_zero()) continue;
    out = vec_add(out, vec_scale(w, c));
  }
  return out;
}

Vec LieAlg::bracket_pow(const Vec& x, int n, const Vec& v) const {
  if (n < 0) throw HypothesisError("negative bracket power");
  Vec r = v;
  for (int i = 0; i < n; ++i) r = bracket(x, r);
  return r;
}

Mat LieAlg::ad(const Vec& x) const {
  int n = impl_->dim;
  Mat m(impl_->field, n, n);
  for (int j = 0; j < n; ++j) {
    Vec col = bracket(x, unit_vec(impl_->field, n, j));
    for (int i = 0; i < n; ++i) m.at(i, j) = col[i];
  }
  return m;
}

void LieAlg::validate() const {
  int n = impl_->dim;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Vec s = bracket(unit_vec(impl_->field, n, i), bracket_basis(j, k));
        s = vec_add(s, bracket(unit_vec(impl_->field, n, j), bracket_basis(k, i)));
        s = vec_add(s, bracket(unit_vec(impl_->field, n, k), bracket_basis(i, j)));
        if (!vec_is_zero(s)) {
          std::ostringstream os;
          os << "Jacobi identity fails on basis triple (" << i << "," << j << "," << k << ")";
          throw HypothesisError(os.str());
        }
      }
}

Mat Representation::action(const Vec& k) const {
  if (int(k.size()) != algebra.dim()) throw HypothesisError("action argument has wrong length");
  Mat m(algebra.field(), module_dim, module_dim);
  for (int i = 0; i < algebra.dim(); ++i)
    if (!k[i].is_zero()) m = m + psi[i].scaled(k[i]);
  return m;
}

void Representation::validate() const {
  if (int(psi.size()) != algebra.dim())
    throw HypothesisError("representation needs one matrix per basis element");
  for (const auto& m : psi)
    if (m.rows() != module_dim || m.cols() != module_dim)
      throw HypothesisError("representation matrix has wrong shape");
  int n = algebra.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Mat lhs = action(algebra.bracket_basis(i, j));
      if (!(lhs == commutator(psi[i], psi[j]))) {
        std::ostringstream os;
        os << "not a representation: psi([e" << i << ",e" << j << "]) != [psi(e" << i
           << "),psi(e" << j << ")]";
        throw HypothesisError(os.str());
      }
    }
}

// ----- series -----

namespace {

// span of brackets of basis elements of a with basis elements of b
Subspace bracket_span(const LieAlg& l, const Subspace& a, const Subspace& b) {
  std::vector<Vec> gens;
  for (const auto& u : a.basis())
    for (const auto& v : b.basis()) gens.push_back(l.bracket(u, v));
  return Subspace::span(l.field(), l.dim(), gens);
}

}  // namespace

Subspace derived_subalgebra(const LieAlg& l) {
  Subspace full = Subspace::full(l.field(), l.dim());
  return bracket_span(l, full, full);
}

std::vector<Subspace> derived_series(const LieAlg& l) {
  std::vector<Subspace> series{Subspace::full(l.field(), l.dim())};
  for (;;) {
    const Subspace& cur = series.back();
    Subspace next = bracket_span(l, cur, cur);
    if (next.dim() == cur.dim()) break;
    series.push_back(next);
    if (series.back().dim() == 0) break;
  }
  return series;
}

std::optional<int> derived_length(const LieAlg& l) {
  auto series = derived_series(l);
  if (series.back().dim() != 0) return std::nullopt;
  return int(series.size()) - 1;
}

bool is_solvable(const LieAlg& l) { return derived_length(l).has_value(); }

std::vector<Subspace> lower_central_series(const LieAlg& l) {
  Subspace full = Subspace::full(l.field(), l.dim());
  std::vector<Subspace> series{full};
  for (;;) {
    Subspace next = bracket_span(l, full, series.back());
    if (next.dim() == series.back().dim()) break;
    series.push_back(next);
    if (series.back().dim() == 0) break;
  }
  return series;
}

Nilpotency is_nilpotent(const LieAlg& l) {
  auto series = lower_central_series(l);
  if (series.back().dim() != 0) return {false, 0};
  // series = L^1 > ... > L^(c+1) = 0
  return {true, int(series.size()) - 1};
}

// ----- subalgebras of gl -----

GlSubalgebra gl_subalgebra_generated(const std::vector<Mat>& gens) {
  if (gens.empty()) throw HypothesisError("no generators given");
  const Field& f = gens[0].field();
  int n = gens[0].rows();
  for (const auto& g : gens)
    if (g.rows() != n || g.cols() != n || !same_field(g.field(), f))
      throw HypothesisError("generators must be square matrices over one field");

  auto flatten = [&](const Mat& m) {
    Vec v;
    v.reserve(size_t(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v.push_back(m.at(i, j));
    return v;
  };

  std::vector<Mat> basis;
  std::vector<Vec> flat;
  Subspace span = Subspace::zero(f, n * n);
  auto try_add = [&](const Mat& m) {
    Vec v = flatten(m);
    if (span.contains(v)) return false;
    basis.push_back(m);
    flat.push_back(v);
    span = span.sum(Subspace::span(f, n * n, {v}));
    return true;
  };

  std::deque<std::pair<int, int>> work;
  for (const auto& g : gens)
    if (try_add(g)) {
      int s = int(basis.size()) - 1;
      for (int i = 0; i < s; ++i) work.emplace_back(i, s);
    }
  while (!work.empty()) {
    auto [i, j] = work.front();
    work.pop_front();
    if (try_add(commutator(basis[i], basis[j]))) {
      int s = int(basis.size()) - 1;
      for (int r = 0; r < s; ++r) work.emplace_back(r, s);
    }
  }

  // structure constants by solving against the flattened basis
  Mat cols = Mat::from_rows(f, flat, n * n).transpose();
  int d = int(basis.size());
  std::vector<ScEntry> entries;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      auto c = solve(cols, flatten(commutator(basis[i], basis[j])));
      if (!c) throw CheckError("commutator left the closed span");
      entries.push_back({i, j, *c});
    }
  LieAlg alg(f, d, entries);
  alg.validate();
  return {alg, basis};
}

// ----- semidirect sums -----

LieAlg semidirect_sum(const LieAlg& k, const Representation& rep, const LieAlg& ideal) {
  if (!same_field(k.field(), ideal.field()))
    throw HypothesisError("semidirect sum needs one common field");
  if (rep.module_dim != ideal.dim())
    throw HypothesisError("representation module dimension must match the ideal");
  rep.validate();
  if (rep.algebra.dim() != k.dim() || !(rep.algebra.structure() == k.structure()))
    throw HypothesisError("representation is not a representation of the given algebra");
  const Field& f = k.field();
  int nk = k.dim(), ni = ideal.dim(), n = nk + ni;
  bool ideal_abelian = ideal.structure().empty();
  if (!ideal_abelian) {
    // the action must be by derivations of the ideal
    for (int a = 0; a < nk; ++a)
      for (int i = 0; i < ni; ++i)
        for (int j = i + 1; j < ni; ++j) {
          Vec lhs = rep.psi[a].apply(ideal.bracket_basis(i, j));
          Vec rhs = vec_add(ideal.bracket(rep.psi[a].col(i), unit_vec(f, ni, j)),
                            ideal.bracket(unit_vec(f, ni, i), rep.psi[a].col(j)));
          if (!vec_eq(lhs, rhs))
            throw HypothesisError("action is not by derivations of the ideal");
        }
  }

  auto lift_k = [&](const Vec& v) {
    Vec out = zero_vec(f, n);
    for (int i = 0; i < nk; ++i) out[i] = v[i];
    return out;
  };
  auto lift_i = [&](const Vec& v) {
    Vec out = zero_vec(f, n);
    for (int i = 0; i < ni; ++i) out[nk + i] = v[i];
    return out;
  };

  std::vector<ScEntry> entries;
  for (int i = 0; i < nk; ++i)
    for (int j = i + 1; j < nk; ++j)
      entries.push_back({i, j, lift_k(k.bracket_basis(i, j))});
  for (int i = 0; i < nk; ++i)
    for (int j = 0; j < ni; ++j)
      entries.push_back({i, nk + j, lift_i(rep.psi[i].col(j))});
  for (int i = 0; i < ni; ++i)
    for (int j = i + 1; j < ni; ++j)
      entries.push_back({nk + i, nk + j, lift_i(ideal.bracket_basis(i, j))});

  std::vector<std::string> labels;
  if (!k.labels().empty() || !ideal.labels().empty()) {
    for (int i = 0; i < nk; ++i)
      labels.push_back(k.labels().empty() ? "k" + std::to_string(i) : k.labels()[i]);
    for (int i = 0; i < ni; ++i)
      labels.push_back(ideal.labels().empty() ? "v" + std::to_string(i) : ideal.labels()[i]);
  }
  LieAlg l(f, n, entries, std::move(labels));
  l.validate();
  return l;
}

// ----- ideals and quotients -----

bool is_ideal(const LieAlg& l, const Subspace& s) {
  if (s.ambient() != l.dim()) return false;
  for (int i = 0; i < l.dim(); ++i)
    for (const auto& w : s.basis())
      if (!s.contains(l.bracket(unit_vec(l.field(), l.dim(), i), w))) return false;
  return true;
}

QuotientAlg quotient(const LieAlg& l, const Subspace& ideal) {
  if (!is_ideal(l, ideal)) throw HypothesisError("subspace is not an ideal");
  const Field& f = l.field();
  QuotientSpace quo(ideal);
  int m = quo.dim();
  std::vector<ScEntry> entries;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Vec br = l.bracket(quo.section().col(i), quo.section().col(j));
      entries.push_back({i, j, quo.projection().apply(br)});
    }
  LieAlg q(f, m, entries);
  q.validate();
  return {q, quo.projection()};
}

LieAlg extend_scalars(const LieAlg& l, const Field& target) {
  std::vector<ScEntry> entries;
  for (const auto& [key, c] : l.structure())
    entries.push_back({key.first, key.second, embed_vec(c, target)});
  return LieAlg(target, l.dim(), entries, l.labels());
}

}  // namespace liep
