#include "liep/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace liep {

namespace {

using nlohmann::json;

json scalar_json(const Scalar& s) { return json(s.coeffs()); }

Scalar scalar_from(const json& j, const Field& f) {
  if (!j.is_array() || int(j.size()) != f->k())
    throw HypothesisError("scalar must be a residue vector of length k");
  return f->element(j.get<std::vector<i64>>());
}

json vec_json(const Vec& v) {
  json a = json::array();
  for (const auto& s : v) a.push_back(scalar_json(s));
  return a;
}

Vec vec_from(const json& j, const Field& f, int n) {
  if (!j.is_array() || int(j.size()) != n)
    throw HypothesisError("vector entry has the wrong length");
  Vec v;
  for (const auto& e : j) v.push_back(scalar_from(e, f));
  return v;
}

json field_json(const Field& f) {
  json j;
  j["p"] = f->p();
  j["k"] = f->k();
  j["modulus"] = f->modulus();
  return j;
}

Field field_from(const json& j) {
  if (!j.is_object()) throw HypothesisError("field entry must be an object");
  return FiniteField::make(j.at("p").get<i64>(), j.at("k").get<int>(),
                           j.at("modulus").get<std::vector<i64>>());
}

json algebra_json(const LieAlg& l) {
  json sc = json::array();
  for (const auto& [ij, v] : l.structure())
    sc.push_back(json::array({ij.first, ij.second, vec_json(v)}));
  json j;
  j["field"] = field_json(l.field());
  j["dim"] = l.dim();
  j["sc"] = sc;
  j["labels"] = l.labels();
  return j;
}

std::string fnv_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw HypothesisError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string algebra_to_json(const LieAlg& l) { return algebra_json(l).dump(2) + "\n"; }

LieAlg algebra_from_json(const std::string& text) {
  json j = parse(text);
  try {
    Field f = field_from(j.at("field"));
    int dim = j.at("dim").get<int>();
    std::vector<ScEntry> entries;
    for (const auto& e : j.at("sc")) {
      if (!e.is_array() || e.size() != 3)
        throw HypothesisError("sc entries must be [i, j, coeffs]");
      entries.push_back({e[0].get<int>(), e[1].get<int>(), vec_from(e[2], f, dim)});
    }
    auto labels = j.at("labels").get<std::vector<std::string>>();
    LieAlg l(f, dim, entries, labels);
    l.validate();
    return l;
  } catch (const json::exception& e) {
    throw HypothesisError(std::string("algebra file malformed: ") + e.what());
  }
}

std::string algebra_hash(const LieAlg& l) { return fnv_hex(algebra_json(l).dump()); }

std::string derivation_to_json(const Derivation& d) {
  json rows = json::array();
  for (int r = 0; r < d.matrix.rows(); ++r) rows.push_back(vec_json(d.matrix.row(r)));
  json j;
  j["algebra_hash"] = algebra_hash(d.algebra);
  j["matrix"] = rows;
  return j.dump(2) + "\n";
}

Derivation derivation_from_json(const std::string& text, const LieAlg& l) {
  json j = parse(text);
  try {
    if (j.at("algebra_hash").get<std::string>() != algebra_hash(l))
      throw HypothesisError("derivation file does not match the algebra (hash mismatch)");
    int n = l.dim();
    const json& rows = j.at("matrix");
    if (!rows.is_array() || int(rows.size()) != n)
      throw HypothesisError("matrix has the wrong number of rows");
    Mat m(l.field(), n, n);
    for (int r = 0; r < n; ++r) {
      Vec row = vec_from(rows[r], l.field(), n);
      for (int c = 0; c < n; ++c) m.at(r, c) = row[c];
    }
    return Derivation::make(l, m);
  } catch (const json::exception& e) {
    throw HypothesisError(std::string("derivation file malformed: ") + e.what());
  }
}

std::string summand_to_json(const PCyclicSummand& s) {
  json j;
  j["generator"] = vec_json(s.generator);
  j["r"] = s.r;
  j["minpoly"] = vec_json(s.minpoly.coeffs());
  j["eigenvalue"] = scalar_json(s.eigenvalue);
  return j.dump(2) + "\n";
}

PCyclicSummand summand_from_json(const std::string& text, const Field& f) {
  json j = parse(text);
  try {
    const json& g = j.at("generator");
    if (!g.is_array()) throw HypothesisError("generator must be a vector");
    const json& mp = j.at("minpoly");
    if (!mp.is_array()) throw HypothesisError("minpoly must list coefficients");
    PCyclicSummand s;
    s.generator = vec_from(g, f, int(g.size()));
    s.r = j.at("r").get<int>();
    s.minpoly = Poly(f, vec_from(mp, f, int(mp.size())));
    s.eigenvalue = scalar_from(j.at("eigenvalue"), f);
    return s;
  } catch (const json::exception& e) {
    throw HypothesisError(std::string("summand file malformed: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw HypothesisError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw HypothesisError("cannot write " + path);
  out << text;
  out.flush();
  if (!out) throw HypothesisError("failed writing " + path);
}

}  // namespace liep
