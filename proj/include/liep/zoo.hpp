#pragma once

#include "liep/deriv.hpp"

namespace liep {

// Cyclic shift acting on a p-dimensional abelian ideal.  Solvable of derived
// length 2, not nilpotent, yet carries a non-singular derivation; needs
// k >= 2 so that alpha can avoid every F_p-multiple of beta.
struct Mattarei {
  LieAlg algebra;  // dim p + 1, basis x, v0, ..., v_{p-1}
  Vec x;
  Derivation delta;  // delta(x) = alpha x, delta(v_i) = (beta + (i+1) alpha) v_i
  Scalar alpha, beta;
};
Mattarei mattarei(const Field& f);

// Nilpotent algebra of maximal class: generated inside gl(2p) by a double
// p-cycle x and a corner map y, giving dim p + 1 and class p.  The structure
// exists over any field; the graded derivation needs parameters, see below.
struct MaxClassStructure {
  LieAlg algebra;           // K semidirect I, dim 3p + 1
  LieAlg k;                 // basis x, y, z1, ..., z_{p-1} with z_j = [x, z_{j-1}]
  std::vector<Mat> k_mats;  // matrices realizing k's basis on the ideal
  Mat x, y;
};
MaxClassStructure max_class_structure(const Field& f);

// Adds the grading with deg x = 1, deg y = a, deg v_{kp+i} = b - ka + i - 1
// and the induced non-singular derivation.  Any a, b, or b - a inside the
// prime field forces a zero degree, reported as a hypothesis error.
struct MaxClass {
  LieAlg algebra;
  LieAlg k;
  std::vector<Mat> k_mats;
  Mat x, y;
  Derivation delta;
  Scalar a, b;
  Grading grading;
};
MaxClass max_class_example(const Field& f, const Scalar& a, const Scalar& b);
MaxClass max_class_example(const Field& f);  // scans default degrees

// Heisenberg algebra acting on the double p-cycle module of dimension 2p,
// with z realized as the commutator of the two displayed generators.
// Degrees: x -> 1, y -> a, z -> 1 + a, v_{kp+i} -> b - ka + i - 2.
struct Heis2p {
  LieAlg algebra;  // H semidirect I, dim 2p + 3
  LieAlg h;
  std::vector<Mat> h_mats;
  Mat x, y, z;
  Derivation delta;
  Scalar a, b;
  Grading grading;
};
Heis2p heisenberg_2p(const Field& f, const Scalar& a, const Scalar& b);
Heis2p heisenberg_2p(const Field& f);

// First (a, b) in canonical element order with a, b, b - a all outside the
// prime field; b is searched as a + s over non-zero s.  Shared by the two
// graded families above.
std::pair<Scalar, Scalar> graded_pair_defaults(const Field& f);

// Heisenberg algebra acting faithfully on a (p+3)-dimensional module, with a
// non-singular diagonal derivation; p must be odd.  The derived length is
// computed from the derived series and exposed rather than assumed.
struct HeisP3 {
  LieAlg algebra;  // H semidirect I, dim p + 6
  LieAlg h;
  std::vector<Mat> h_mats;
  Mat x, y, z;
  Derivation delta;
  Scalar a, b, c, d;
  int derived_len = 0;
};
HeisP3 heisenberg_p3(const Field& f, const Scalar& a, const Scalar& b,
                     const Scalar& c, const Scalar& d);
HeisP3 heisenberg_p3(const Field& f);  // scans default parameters

// dims of the successive derived-series quotients; every algebra above has
// some step of size at least p
std::vector<int> derived_quotient_dims(const LieAlg& l);

}  // namespace liep
