#pragma once

#include <string>

#include "liep/pcyclic.hpp"

namespace liep {

// JSON text for an algebra: {field: {p, k, modulus}, dim, sc, labels} with
// scalars written as residue vectors, low degree first.  Loading validates
// the modulus, the table shape, and the Jacobi identity.
std::string algebra_to_json(const LieAlg& l);
LieAlg algebra_from_json(const std::string& text);

// 16 hex digits of the FNV-1a hash of the canonical (compact, sorted-key)
// serialization; whitespace and key order in a file do not affect it
std::string algebra_hash(const LieAlg& l);

// derivations are stored as {algebra_hash, matrix} and only load against
// the algebra they were saved with
std::string derivation_to_json(const Derivation& d);
Derivation derivation_from_json(const std::string& text, const LieAlg& l);

std::string summand_to_json(const PCyclicSummand& s);
PCyclicSummand summand_from_json(const std::string& text, const Field& f);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace liep
