#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>

#include "json.hpp"
#include "liep/serialize.hpp"
#include "liep/zoo.hpp"

using namespace liep;

namespace {

bool same_algebra(const LieAlg& a, const LieAlg& b) {
  if (a.dim() != b.dim() || !a.field()->same_as(*b.field())) return false;
  if (a.labels() != b.labels()) return false;
  const auto& sa = a.structure();
  const auto& sb = b.structure();
  if (sa.size() != sb.size()) return false;
  for (const auto& [ij, v] : sa) {
    auto it = sb.find(ij);
    if (it == sb.end() || !vec_eq(v, it->second)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("algebra files roundtrip") {
  std::vector<LieAlg> algs = {
      mattarei(FiniteField::make(3, 2)).algebra,
      max_class_example(FiniteField::make(3, 2)).algebra,
      heisenberg_2p(FiniteField::make(3, 2)).algebra,
      LieAlg::heisenberg(FiniteField::make(7, 1)),
  };
  for (const auto& l : algs) {
    LieAlg back = algebra_from_json(algebra_to_json(l));
    CHECK(same_algebra(l, back));
    CHECK(algebra_hash(l) == algebra_hash(back));
    CHECK(algebra_hash(l).size() == 16);
  }
}

TEST_CASE("hash tracks content") {
  Field f = FiniteField::make(5, 1);
  Vec z = zero_vec(f, 3);
  z[2] = f->one();
  LieAlg heis(f, 3, {{0, 1, z}}, {"x", "y", "z"});
  LieAlg ab = LieAlg::abelian(f, 3);
  CHECK(algebra_hash(heis) != algebra_hash(ab));

  Vec z2 = z;
  z2[2] = f->from_int(2);
  LieAlg heis2(f, 3, {{0, 1, z2}}, {"x", "y", "z"});
  CHECK(algebra_hash(heis) != algebra_hash(heis2));
}

TEST_CASE("derivation files roundtrip") {
  Mattarei m = mattarei(FiniteField::make(3, 2));
  std::string text = derivation_to_json(m.delta);
  Derivation back = derivation_from_json(text, m.algebra);
  CHECK(back.matrix == m.delta.matrix);

  // wrong algebra: the stored hash cannot match
  MaxClass mc = max_class_example(FiniteField::make(3, 2));
  CHECK_THROWS_AS(derivation_from_json(text, mc.algebra), HypothesisError);

  // corrupted hash
  auto j = nlohmann::json::parse(text);
  j["algebra_hash"] = std::string(16, '0');
  CHECK_THROWS_AS(derivation_from_json(j.dump(), m.algebra), HypothesisError);

  // an edited entry breaks the Leibniz rule
  j = nlohmann::json::parse(text);
  j["matrix"][0][0][0] = (j["matrix"][0][0][0].get<i64>() + 1) % 3;
  CHECK_THROWS_AS(derivation_from_json(j.dump(), m.algebra), HypothesisError);
}

TEST_CASE("summand files roundtrip") {
  Field f = FiniteField::make(3, 2);
  Poly q = Poly::from_ints(f, {2, 0, 0, 1});  // t^3 + 2
  BuiltAlgebra built = build_derivation({q, q * q}, f);
  XpDecomposition dec = xp_decompose(built.algebra, built.x, built.delta);
  REQUIRE(dec.summands.size() == 2);
  for (const auto& s : dec.summands) {
    PCyclicSummand back = summand_from_json(summand_to_json(s), dec.algebra.field());
    CHECK(vec_eq(back.generator, s.generator));
    CHECK(back.r == s.r);
    CHECK(back.minpoly == s.minpoly);
    CHECK(back.eigenvalue == s.eigenvalue);
  }
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(algebra_from_json("not json"), HypothesisError);
  CHECK_THROWS_AS(algebra_from_json("{}"), HypothesisError);

  // bad index range
  nlohmann::json j;
  j["field"] = {{"p", 5}, {"k", 1}, {"modulus", {0, 1}}};
  j["dim"] = 2;
  j["labels"] = nlohmann::json::array();
  j["sc"] = nlohmann::json::array({nlohmann::json::array(
      {1, 1, nlohmann::json::array({nlohmann::json::array({1}),
                                    nlohmann::json::array({0})})})});
  CHECK_THROWS_AS(algebra_from_json(j.dump()), HypothesisError);

  // a table that fails the Jacobi identity
  j["dim"] = 3;
  auto sc = nlohmann::json::array();
  auto vec = [](std::vector<i64> c) {
    auto a = nlohmann::json::array();
    for (i64 x : c) a.push_back(nlohmann::json::array({x}));
    return a;
  };
  sc.push_back(nlohmann::json::array({0, 1, vec({1, 0, 0})}));
  sc.push_back(nlohmann::json::array({1, 2, vec({0, 1, 0})}));
  j["sc"] = sc;
  CHECK_THROWS_AS(algebra_from_json(j.dump()), HypothesisError);
}

TEST_CASE("files on disk") {
  const char* path = "test_serialize_tmp.json";
  Mattarei m = mattarei(FiniteField::make(2, 2));
  write_file(path, algebra_to_json(m.algebra));
  LieAlg back = algebra_from_json(read_file(path));
  CHECK(same_algebra(m.algebra, back));
  std::remove(path);
  CHECK_THROWS_AS(read_file(path), HypothesisError);
}
