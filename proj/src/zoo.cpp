#include "liep/zoo.hpp"

#include <map>
#include <string>

namespace liep {

namespace {

LieAlg relabel(const LieAlg& a, std::vector<std::string> labels) {
  std::vector<ScEntry> entries;
  for (const auto& [ij, v] : a.structure())
    entries.push_back({ij.first, ij.second, v});
  return LieAlg(a.field(), a.dim(), entries, std::move(labels));
}

std::vector<std::string> numbered(const std::string& stem, int first, int count) {
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i) out.push_back(stem + std::to_string(first + i));
  return out;
}

// two disjoint p-cycles on a 2p-dimensional space
Mat double_cycle(const Field& f, int p) {
  Mat x(f, 2 * p, 2 * p);
  for (int blk = 0; blk < 2; ++blk)
    for (int i = 0; i < p; ++i)
      x.at(blk * p + (i + 1) % p, blk * p + i) = f->one();
  return x;
}

// the g with [beta, m] = g m, for diagonal beta and homogeneous m
Scalar degree_of(const Mat& beta, const Mat& m) {
  Mat c = commutator(beta, m);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).is_zero()) {
        Scalar g = c.at(i, j) / m.at(i, j);
        if (!(c == m.scaled(g)))
          throw CheckError("acting algebra basis element is not homogeneous");
        return g;
      }
  throw CheckError("zero matrix among the acting algebra basis elements");
}

// one grading component per distinct degree, spanned by the basis vectors
// carrying it; a zero degree would make the induced derivation singular
Grading basis_grading(const LieAlg& l, const std::vector<Scalar>& degrees) {
  const Field& f = l.field();
  int n = l.dim();
  std::map<i64, std::pair<Scalar, std::vector<Vec>>> groups;
  for (int i = 0; i < n; ++i) {
    if (degrees[i].is_zero())
      throw HypothesisError("degree 0 occurs; pick other parameters");
    auto& slot = groups[degrees[i].index()];
    slot.first = degrees[i];
    slot.second.push_back(unit_vec(f, n, i));
  }
  Grading g;
  for (auto& [idx, slot] : groups)
    g.components.push_back({slot.first, Subspace::span(f, n, slot.second)});
  return g;
}

void require_field(const Field& f, std::initializer_list<Scalar> params) {
  for (const auto& s : params)
    if (!s.field() || !same_field(s.field(), f))
      throw HypothesisError("parameter from the wrong field");
}

}  // namespace

Mattarei mattarei(const Field& f) {
  int p = int(f->p());
  Scalar alpha = element_outside_prime_field(f);  // rejects the prime field
  Scalar beta = f->one();
  Mat x(f, p, p);
  for (int i = 0; i < p; ++i) x.at((i + 1) % p, i) = f->one();
  LieAlg k(f, 1, {}, {"x"});
  LieAlg ideal(f, p, {}, numbered("v", 0, p));
  LieAlg l = semidirect_sum(k, Representation{k, p, {x}}, ideal);
  Mat dm(f, p + 1, p + 1);
  dm.at(0, 0) = alpha;
  for (int i = 0; i < p; ++i)
    dm.at(1 + i, 1 + i) = beta + f->from_int(i + 1) * alpha;
  Derivation delta = Derivation::make(l, dm);
  if (!delta.nonsingular()) throw CheckError("derivation came out singular");
  if (is_nilpotent(l).nilpotent) throw CheckError("algebra came out nilpotent");
  if (derived_length(l) != std::optional<int>(2))
    throw CheckError("derived length is off");
  return {l, unit_vec(f, p + 1, 0), delta, alpha, beta};
}

MaxClassStructure max_class_structure(const Field& f) {
  int p = int(f->p());
  Mat x = double_cycle(f, p);
  Mat y(f, 2 * p, 2 * p);
  y.at(0, p) = f->one();  // v_{p+1} -> v_1
  GlSubalgebra kk = gl_subalgebra_generated({x, y});
  if (kk.algebra.dim() != p + 1)
    throw CheckError("acting algebra has the wrong dimension");
  Nilpotency nil = is_nilpotent(kk.algebra);
  if (!nil.nilpotent || nil.cls != p)
    throw CheckError("acting algebra misses maximal class");
  if (!(kk.basis_mats[0] == x) || !(kk.basis_mats[1] == y))
    throw CheckError("closure reordered the generators");
  for (int j = 2; j <= p; ++j)
    if (!(kk.basis_mats[j] == commutator(x, kk.basis_mats[j - 1])))
      throw CheckError("closure basis is not the bracket chain");
  std::vector<std::string> kl = {"x", "y"};
  for (const auto& s : numbered("z", 1, p - 1)) kl.push_back(s);
  LieAlg k = relabel(kk.algebra, kl);
  LieAlg ideal(f, 2 * p, {}, numbered("v", 1, 2 * p));
  LieAlg l = semidirect_sum(k, Representation{k, 2 * p, kk.basis_mats}, ideal);
  if (is_nilpotent(l).nilpotent) throw CheckError("algebra came out nilpotent");
  if (derived_length(l) != std::optional<int>(3))
    throw CheckError("derived length is off");
  return {l, k, kk.basis_mats, x, y};
}

MaxClass max_class_example(const Field& f, const Scalar& a, const Scalar& b) {
  require_field(f, {a, b});
  MaxClassStructure s = max_class_structure(f);
  int p = int(f->p());
  std::vector<Scalar> mdeg;
  for (int j = 0; j < p; ++j) mdeg.push_back(b + f->from_int(j));
  for (int j = 0; j < p; ++j) mdeg.push_back(b - a + f->from_int(j));
  Mat beta(f, 2 * p, 2 * p);
  for (int j = 0; j < 2 * p; ++j) beta.at(j, j) = mdeg[j];
  std::vector<Scalar> degs;
  for (const auto& m : s.k_mats) degs.push_back(degree_of(beta, m));
  if (!degs[0].is_one() || degs[1] != a)
    throw CheckError("generator degrees are off");
  for (const auto& d : mdeg) degs.push_back(d);
  Grading g = basis_grading(s.algebra, degs);
  Derivation delta = derivation_from_grading(s.algebra, g);
  if (!delta.nonsingular()) throw CheckError("graded derivation is singular");
  return {s.algebra, s.k, s.k_mats, s.x, s.y, delta, a, b, g};
}

MaxClass max_class_example(const Field& f) {
  auto [a, b] = graded_pair_defaults(f);
  return max_class_example(f, a, b);
}

Heis2p heisenberg_2p(const Field& f, const Scalar& a, const Scalar& b) {
  require_field(f, {a, b});
  if (a.in_prime_field() || b.in_prime_field() || (b - a).in_prime_field())
    throw HypothesisError("a, b, b - a must avoid the prime field");
  int p = int(f->p());
  Mat x = double_cycle(f, p);
  Mat y(f, 2 * p, 2 * p);
  for (int j = 1; j < p; ++j) y.at(j, p + j) = f->from_int(j);
  Mat z = commutator(x, y);
  GlSubalgebra hh = gl_subalgebra_generated({x, y});
  if (hh.algebra.dim() != 3) throw CheckError("Heisenberg closure has wrong dimension");
  if (!(hh.basis_mats[0] == x) || !(hh.basis_mats[1] == y) ||
      !(hh.basis_mats[2] == z))
    throw CheckError("closure basis is not x, y, [x, y]");
  Nilpotency nil = is_nilpotent(hh.algebra);
  if (!nil.nilpotent || nil.cls != 2) throw CheckError("acting algebra is not Heisenberg");
  LieAlg h = relabel(hh.algebra, {"x", "y", "z"});
  LieAlg ideal(f, 2 * p, {}, numbered("v", 1, 2 * p));
  LieAlg l = semidirect_sum(h, Representation{h, 2 * p, hh.basis_mats}, ideal);
  if (is_nilpotent(l).nilpotent) throw CheckError("algebra came out nilpotent");
  if (derived_length(l) != std::optional<int>(3))
    throw CheckError("derived length is off");
  std::vector<Scalar> mdeg;
  for (int j = 0; j < p; ++j) mdeg.push_back(b + f->from_int(j) - f->one());
  for (int j = 0; j < p; ++j) mdeg.push_back(b - a + f->from_int(j) - f->one());
  Mat beta(f, 2 * p, 2 * p);
  for (int j = 0; j < 2 * p; ++j) beta.at(j, j) = mdeg[j];
  std::vector<Scalar> degs;
  for (const auto& m : hh.basis_mats) degs.push_back(degree_of(beta, m));
  if (!degs[0].is_one() || degs[1] != a || degs[2] != f->one() + a)
    throw CheckError("generator degrees are off");
  for (const auto& d : mdeg) degs.push_back(d);
  Grading g = basis_grading(l, degs);
  Derivation delta = derivation_from_grading(l, g);
  if (!delta.nonsingular()) throw CheckError("graded derivation is singular");
  return {l, h, hh.basis_mats, x, y, z, delta, a, b, g};
}

Heis2p heisenberg_2p(const Field& f) {
  auto [a, b] = graded_pair_defaults(f);
  return heisenberg_2p(f, a, b);
}

std::pair<Scalar, Scalar> graded_pair_defaults(const Field& f) {
  Scalar a = element_outside_prime_field(f);
  for (i64 s = 1; s < f->size(); ++s) {
    Scalar b = a + f->element_at(s);
    if (!b.in_prime_field() && !(b - a).in_prime_field()) return {a, b};
  }
  throw HypothesisError("no degree pair avoids the prime field");
}

HeisP3 heisenberg_p3(const Field& f, const Scalar& a, const Scalar& b,
                     const Scalar& c, const Scalar& d) {
  require_field(f, {a, b, c, d});
  int p = int(f->p());
  if (p == 2) throw HypothesisError("odd characteristic required");
  int md = p + 3;
  Mat x(f, md, md), y(f, md, md), z(f, md, md);
  x.at(0, 1) = f->one();  // v2 -> v1
  for (int i = 0; i < p; ++i) x.at(3 + (i + 1) % p, 3 + i) = f->one();
  y.at(1, 2) = f->one();  // v3 -> v2
  z.at(0, 2) = f->one();  // v3 -> v1
  if (!(commutator(x, y) == z)) throw CheckError("[x, y] is not z on the module");
  GlSubalgebra hh = gl_subalgebra_generated({x, y});
  if (hh.algebra.dim() != 3) throw CheckError("Heisenberg closure has wrong dimension");
  if (!(hh.basis_mats[0] == x) || !(hh.basis_mats[1] == y) ||
      !(hh.basis_mats[2] == z))
    throw CheckError("closure basis is not x, y, [x, y]");
  std::vector<Scalar> eig = {a, b, a + b, a + b + d, b + d, d};
  std::vector<Scalar> mdeg = {a + b + d, b + d, d};
  for (int i = 0; i < p; ++i) {
    mdeg.push_back(c + f->from_int(i) * a);
    eig.push_back(mdeg.back());
  }
  for (const auto& e : eig)
    if (e.is_zero())
      throw HypothesisError("zero eigenvalue; pick other parameters");
  Mat stack(f, md * md, 3);  // faithfulness: independent action matrices
  for (int m = 0; m < 3; ++m)
    for (int i = 0; i < md; ++i)
      for (int j = 0; j < md; ++j)
        stack.at(i * md + j, m) = hh.basis_mats[m].at(i, j);
  if (rank(stack) != 3) throw CheckError("action is not faithful");
  LieAlg h = relabel(hh.algebra, {"x", "y", "z"});
  std::vector<std::string> il = {"v1", "v2", "v3"};
  for (const auto& s : numbered("u", 0, p)) il.push_back(s);
  LieAlg ideal(f, md, {}, il);
  LieAlg l = semidirect_sum(h, Representation{h, md, hh.basis_mats}, ideal);
  Mat dm(f, 3 + md, 3 + md);
  dm.at(0, 0) = a;
  dm.at(1, 1) = b;
  dm.at(2, 2) = a + b;
  for (int j = 0; j < md; ++j) dm.at(3 + j, 3 + j) = mdeg[j];
  Derivation delta = [&] {
    try {
      return Derivation::make(l, dm);
    } catch (const HypothesisError& e) {
      throw CheckError(std::string("diagonal map failed the Leibniz rule: ") +
                       e.what());
    }
  }();
  if (!delta.nonsingular()) throw CheckError("derivation came out singular");
  if (is_nilpotent(l).nilpotent) throw CheckError("algebra came out nilpotent");
  auto dl = derived_length(l);
  if (!dl) throw CheckError("algebra came out unsolvable");
  return {l, h, hh.basis_mats, x, y, z, delta, a, b, c, d, *dl};
}

HeisP3 heisenberg_p3(const Field& f) {
  if (f->p() == 2) throw HypothesisError("odd characteristic required");
  Scalar a = element_outside_prime_field(f);
  Scalar b, c, d;
  for (i64 s = 1; s < f->size(); ++s) {
    Scalar cand = a + f->element_at(s);
    if (!cand.is_zero() && !(a + cand).is_zero()) {
      b = cand;
      break;
    }
  }
  for (i64 s = 1; s < f->size(); ++s) {
    Scalar cand = f->element_at(s);
    bool ok = true;
    for (int i = 0; i < int(f->p()) && ok; ++i)
      ok = !(cand + f->from_int(i) * a).is_zero();
    if (ok) {
      c = cand;
      break;
    }
  }
  for (i64 s = 1; s < f->size(); ++s) {
    Scalar cand = f->element_at(s);
    if (!(b + cand).is_zero() && !(a + b + cand).is_zero()) {
      d = cand;
      break;
    }
  }
  if (!b.field() || !c.field() || !d.field())
    throw HypothesisError("parameter scan exhausted the field");
  return heisenberg_p3(f, a, b, c, d);
}

std::vector<int> derived_quotient_dims(const LieAlg& l) {
  auto series = derived_series(l);
  std::vector<int> out;
  for (size_t i = 0; i + 1 < series.size(); ++i)
    out.push_back(series[i].dim() - series[i + 1].dim());
  return out;
}

}  // namespace liep
