#pragma once

#include <map>
#include <string>

#include "liep/linalg.hpp"

namespace liep {

struct ScEntry {
  int i, j;   // i < j
  Vec coeffs; // [e_i, e_j] in the basis, length = dim
};

// Finite-dimensional Lie algebra given by structure constants on a fixed
// basis.  Only pairs i < j are stored; the bracket is extended by
// antisymmetry and [e_i, e_i] = 0 holds structurally, so characteristic 2
// needs no special casing.  Immutable after construction; copies are cheap.
class LieAlg {
 public:
  LieAlg() = default;
  LieAlg(Field f, int dim, const std::vector<ScEntry>& entries,
         std::vector<std::string> labels = {});
  static LieAlg abelian(const Field& f, int dim);
  static LieAlg heisenberg(const Field& f);  // basis x, y, z with [x,y] = z

  int dim() const;
  const Field& field() const;
  const std::vector<std::string>& labels() const;
  const std::map<std::pair<int, int>, Vec>& structure() const;

  Vec bracket_basis(int i, int j) const;
  Vec bracket(const Vec& u, const Vec& v) const;
  // right-normed power [x, [x, ... [x, v]]] with n copies of x
  Vec bracket_pow(const Vec& x, int n, const Vec& v) const;
  Mat ad(const Vec& x) const;

  // checks shape of the table and the Jacobi identity on all basis triples;
  // throws HypothesisError naming the first offending triple
  void validate() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

// K acting on a vector space by matrices; the action of an abelian ideal's
// ambient factor in a semidirect sum
struct Representation {
  LieAlg algebra;  // K
  int module_dim = 0;
  std::vector<Mat> psi;  // one per K basis element

  Mat action(const Vec& k) const;  // sum k_i psi_i
  // psi([a,b]) = psi(a)psi(b) - psi(b)psi(a) on all basis pairs
  void validate() const;
};

Subspace derived_subalgebra(const LieAlg& l);
// L = L^(0) >= L^(1) >= ... until stable; ends with the zero space iff solvable
std::vector<Subspace> derived_series(const LieAlg& l);
std::optional<int> derived_length(const LieAlg& l);  // nullopt if not solvable
bool is_solvable(const LieAlg& l);
// L^1 = L, L^(m+1) = [L, L^m]
std::vector<Subspace> lower_central_series(const LieAlg& l);
struct Nilpotency {
  bool nilpotent = false;
  int cls = 0;  // abelian = 1, Heisenberg = 2; 0 for the zero algebra
};
Nilpotency is_nilpotent(const LieAlg& l);

// span of the given matrices closed under commutators, as an abstract
// algebra together with the matrices realizing its basis
struct GlSubalgebra {
  LieAlg algebra;
  std::vector<Mat> basis_mats;
};
GlSubalgebra gl_subalgebra_generated(const std::vector<Mat>& gens);

// K + I with [(k1,v1),(k2,v2)] = ([k1,k2], psi(k1)v2 - psi(k2)v1 + [v1,v2]);
// K basis comes first.  rep must be a representation of K on I's space and,
// when I is not abelian, must act by derivations of I.
LieAlg semidirect_sum(const LieAlg& k, const Representation& rep, const LieAlg& i);

bool is_ideal(const LieAlg& l, const Subspace& s);
struct QuotientAlg {
  LieAlg algebra;
  Mat projection;  // dim(L/S) x dim(L)
};
QuotientAlg quotient(const LieAlg& l, const Subspace& ideal);

LieAlg extend_scalars(const LieAlg& l, const Field& target);

}  // namespace liep
