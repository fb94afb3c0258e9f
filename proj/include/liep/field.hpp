#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace liep {

using i64 = std::int64_t;

// Invalid input from the caller (bad dimensions, missing hypothesis, ...).
struct HypothesisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A computed quantity contradicts something the library guarantees.
// Seeing one of these means a bug, not a bad input.
struct CheckError : std::logic_error {
  using std::logic_error::logic_error;
};

class FiniteField;
using Field = std::shared_ptr<const FiniteField>;

// Element of GF(p^k), stored as a residue-coefficient vector of length k
// (low degree first) together with a handle to its field.  All arithmetic
// is exact; operands must belong to structurally equal fields.
class Scalar {
 public:
  Scalar() = default;

  const Field& field() const { return field_; }
  const std::vector<i64>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  // true iff the element lies in the prime subfield F_p
  bool in_prime_field() const;
  // enumeration index: sum_i c_i p^i; defines the canonical element order
  i64 index() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar inverse() const;  // throws HypothesisError on zero
  Scalar pow(i64 e) const; // e >= 0
  Scalar frobenius() const;  // a -> a^p
  Scalar pth_root() const;   // unique p-th root (finite fields are perfect)

  std::string str() const;  // "0", "2", "t", "2t+1", "t^2+1", ...

 private:
  friend class FiniteField;
  Scalar(Field f, std::vector<i64> c) : field_(std::move(f)), coeffs_(std::move(c)) {}

  Field field_;
  std::vector<i64> coeffs_;
};

class FiniteField : public std::enable_shared_from_this<FiniteField> {
 public:
  // GF(p^k) with the lexicographically least monic irreducible modulus of
  // degree k over F_p (coefficients compared low degree first).  k = 1 gives
  // the prime field.
  static Field make(i64 p, int k);
  // Same field arithmetic but with a caller-supplied modulus (used when
  // reading algebras from files).  Irreducibility is verified.
  static Field make(i64 p, int k, const std::vector<i64>& modulus);

  i64 p() const { return p_; }
  int k() const { return k_; }
  i64 size() const { return size_; }  // p^k
  // length k+1, monic; for k = 1 this is {0, 1} and is never used in arithmetic
  const std::vector<i64>& modulus() const { return modulus_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(i64 v) const;                  // image of an integer
  Scalar element(std::vector<i64> coeffs) const; // residues, low degree first
  Scalar element_at(i64 index) const;            // inverse of Scalar::index()

  bool same_as(const FiniteField& o) const;
  std::string str() const;  // "GF(9)"

 private:
  FiniteField(i64 p, int k, std::vector<i64> modulus);

  i64 p_;
  int k_;
  i64 size_;
  std::vector<i64> modulus_;
};

bool same_field(const Field& a, const Field& b);

// Embedding GF(p^j) -> GF(p^k) for j | k, determined by mapping the source
// generator to the first root of the source modulus in the target field
// (canonical element order).  Results are cached per field pair.
Scalar embed_scalar(const Scalar& s, const Field& target);

// The residue class of t; the standard witness that k >= 2.
Scalar element_outside_prime_field(const Field& f);

}  // namespace liep
