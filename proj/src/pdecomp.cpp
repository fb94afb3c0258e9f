#include "liep/pdecomp.hpp"

namespace liep {

std::vector<PrimaryComponent> primary_decomposition(const Mat& x) {
  if (x.rows() != x.cols()) throw HypothesisError("matrix is not square");
  std::vector<PrimaryComponent> out;
  if (x.rows() == 0) return out;
  int total = 0;
  for (const auto& [q, mult] : factor(minpoly(x))) {
    PrimaryComponent comp{q, mult, primary_subspace(x, q)};
    if (!check_invariance(comp.space, x))
      throw CheckError("primary component is not invariant");
    if (minpoly(restrict_to(x, comp.space)) != q.pow(mult))
      throw CheckError("restriction to a primary component has the wrong minimal polynomial");
    total += comp.space.dim();
    out.push_back(std::move(comp));
  }
  if (total != x.rows())
    throw CheckError("primary components do not fill the space");
  return out;
}

bool check_invariance(const Subspace& s, const Mat& m) {
  if (s.ambient() != m.cols() || m.rows() != m.cols())
    throw HypothesisError("shape mismatch in invariance check");
  for (const auto& b : s.basis())
    if (!s.contains(m.apply(b))) return false;
  return true;
}

}  // namespace liep
