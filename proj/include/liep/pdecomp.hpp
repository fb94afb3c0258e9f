#pragma once

#include "liep/linalg.hpp"

namespace liep {

// generalized eigenspace of an irreducible factor of the minimal polynomial
struct PrimaryComponent {
  Poly q;               // monic irreducible
  int multiplicity = 0; // q^multiplicity divides the minimal polynomial exactly
  Subspace space;
};

// splits the space along the distinct irreducible factors of the minimal
// polynomial of x; components are x-invariant, ordered by degree and then
// lexicographically by the coefficients of q
std::vector<PrimaryComponent> primary_decomposition(const Mat& x);

bool check_invariance(const Subspace& s, const Mat& m);

}  // namespace liep
