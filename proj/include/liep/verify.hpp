#pragma once

#include <cstdint>
#include <string>

#include "liep/pcyclic.hpp"

namespace liep {

// Property suites over randomized instances.  Every suite is deterministic
// for a fixed seed; failures report the first counterexample found.
struct SuiteResult {
  std::string suite;
  int trials = 0;
  int failures = 0;
  std::string first_failure;
  std::vector<std::string> notes;  // key=value lines for certificates

  bool ok() const { return failures == 0; }
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  i64 p = 0;      // 0 = suite default characteristics
  int trials = 0; // 0 = suite default
  int n = 0;      // exponent bound where a suite has one
  int s = 0;      // summand count bound for the rebuild suite
};

// brackpow  expansion of [x^n, y] into alternating binomial terms
// leibpow   powers of a derivation against the bracket
// frobder   p-th powers of derivations and of compatible pairs
// commpow   [A, B^r] under [A, B] = C + lambda B with [B, C] = 0
// nilaction solvable algebras acting on small modules act nilpotently
// derbound  derived-series quotient dims reach p on every example family
// primary   primary decomposition consistency and commuting invariance
// delinv    eigencomponent invariance under scaling maps, examples + random
// roundtrip build from ladder polynomials, decompose, compare multisets
std::vector<std::string> suite_names();

SuiteResult run_suite(const std::string& name, const SuiteOptions& opt = {});

}  // namespace liep
