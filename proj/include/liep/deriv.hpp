#pragma once

#include "liep/liealg.hpp"

namespace liep {

// linear map satisfying the Leibniz rule on a fixed algebra
struct Derivation {
  LieAlg algebra;
  Mat matrix;

  // checked constructor; throws HypothesisError if the rule fails
  static Derivation make(const LieAlg& l, const Mat& m);
  bool nonsingular() const;
  Derivation scaled(const Scalar& c) const;
};

bool is_derivation(const LieAlg& l, const Mat& m);
bool is_nonsingular(const Mat& m);

// all derivations of l, as a basis of the solution space of the
// Leibniz conditions over all basis pairs
std::vector<Derivation> derivation_space(const LieAlg& l);

// (alpha, beta) acting diagonally on k + module such that the joint map
// is a derivation of the semidirect sum; the module is abelian here
struct CompatPair {
  Mat alpha;  // on k
  Mat beta;   // on the module
};

std::vector<CompatPair> compatible_pair_space(const Representation& rep);
bool is_compatible_pair(const Representation& rep, const CompatPair& pair);
// diag(alpha, beta) as one matrix on k + module
Mat pair_block(const CompatPair& pair);

Derivation frobenius_power(const Derivation& d);  // d^p
CompatPair frobenius_power(const Representation& rep, const CompatPair& pair);

// d^(p^t) where the order of d is n p^t with p not dividing n; the result
// has squarefree minimal polynomial, so it is diagonalizable over the
// splitting field
struct DiagonalizablePower {
  Derivation derivation;
  i64 t = 0;
};
DiagonalizablePower diagonalizable_power(const Derivation& d);

// decomposition of the algebra into components indexed by field elements
// with [L_a, L_b] contained in L_{a+b}
struct Grading {
  std::vector<std::pair<Scalar, Subspace>> components;
};

void validate_grading(const LieAlg& l, const Grading& g);
Derivation derivation_from_grading(const LieAlg& l, const Grading& g);
// eigenspace decomposition of a derivation that is diagonalizable over
// the algebra's own field
Grading grading_from_derivation(const Derivation& d);

// rewrites a non-singular derivation of an algebra with an abelian
// derived subalgebra of codimension one so that the chosen complement
// element is fixed exactly and the restriction to the derived subalgebra
// is diagonalizable; may extend scalars and returns everything over the
// working field
struct NormalizedDerivation {
  LieAlg algebra;
  Vec x;
  Derivation delta;
  i64 power_steps = 0;  // t with delta'' = delta'^(p^t)
};
NormalizedDerivation normalize_derivation(const LieAlg& l, const Vec& x,
                                          const Derivation& d);

// scans homogeneous basis pairs for the smallest n with [u^n, v] = 0
// uniformly; a witness pair fails at every n up to the bound
struct EngelResult {
  bool engel = false;
  int n = 0;        // bound achieved, or n_max for a witness
  Vec witness_u, witness_v;
};
EngelResult graded_engel_check(const LieAlg& l, const Grading& g, int n_max);

// true iff every basis element of the acting algebra acts nilpotently;
// requires a compatible pair with non-singular first component and a
// solvable acting algebra, which force nilpotency whenever the module
// dimension is below the characteristic
bool verify_nilpotent_action(const Representation& rep, const CompatPair& pair);

}  // namespace liep
