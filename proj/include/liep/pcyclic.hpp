#pragma once

#include "liep/deriv.hpp"
#include "liep/pdecomp.hpp"

namespace liep {

// cyclic subspace whose relative minimal polynomial has monomials only at
// multiples of p and a non-zero constant term
struct PCyclicSummand {
  Vec generator;
  int r = 0;  // dimension of the span = r * p
  Poly minpoly;
  Scalar eigenvalue;  // of the diagonal derivation at the generator
};

struct XpCyclicCheck {
  bool ok = false;
  std::string reason;
};
// the whole space of x is cyclic with minpoly in the p-power ladder and
// invertible action
XpCyclicCheck is_xp_cyclic(const Mat& x);

// orbit of an eigenvector of delta under an invertible x with [delta, x] = x
PCyclicSummand cyclic_from_eigenvector(const Mat& x, const Mat& delta, const Vec& v);

// eigenvalues of delta grouped by cosets of the prime field; x shifts each
// eigenspace into the next one
struct EigenCosetBlock {
  Scalar base;
  std::vector<Subspace> eigenspaces;  // p slots, eigenvalue base + j
  Subspace total;
};
std::vector<EigenCosetBlock> eigen_coset_blocks(const Mat& x, const Mat& delta);

// splits one coset block on which x has a single split eigenvalue into
// cyclic summands generated by eigenvectors of delta; generators come back
// in the ambient coordinates of x
std::vector<PCyclicSummand> xp_decompose_primary(const Mat& x, const Mat& delta,
                                                 const EigenCosetBlock& block);

// full pipeline over a possibly extended field; generators live in the
// coordinates of the returned algebra
struct XpDecomposition {
  LieAlg algebra;
  Vec x;
  Derivation delta;  // normalized: fixes x, diagonalizable on the ideal
  Subspace ideal;    // the derived subalgebra of the returned algebra
  std::vector<PCyclicSummand> summands;
  i64 power_steps = 0;
};
XpDecomposition xp_decompose(const LieAlg& l, const Vec& x, const Derivation& d);

// inverse construction: companion blocks for the requested minimal
// polynomials plus the diagonal derivation coming from a degree assignment
struct BuiltAlgebra {
  LieAlg algebra;
  Vec x;
  Derivation delta;
  Scalar b;                // degree of x
  std::vector<Scalar> as;  // base degree of each summand
};
BuiltAlgebra build_derivation(const std::vector<Poly>& minpolys, const Field& f);

struct DegreeChoice {
  Scalar b;
  std::vector<Scalar> as;
};
DegreeChoice choose_degrees(int s, const Field& f);

}  // namespace liep
