// command line front end: construct example algebras, decompose modules,
// run the randomized verification suites
#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "liep/pcyclic.hpp"
#include "liep/serialize.hpp"
#include "liep/verify.hpp"
#include "liep/zoo.hpp"

using namespace liep;

namespace {

void emit(const std::string& key, const std::string& value) {
  std::cout << key << "=" << value << "\n";
}

void emit(const std::string& key, i64 value) { emit(key, std::to_string(value)); }

std::string series_dims(const LieAlg& l) {
  std::string out;
  for (const auto& s : derived_series(l)) {
    if (!out.empty()) out += ",";
    out += std::to_string(s.dim());
  }
  return out;
}

std::string modulus_str(const Field& f) {
  std::string out;
  for (i64 c : f->modulus()) {
    if (!out.empty()) out += ",";
    out += std::to_string(c);
  }
  return out;
}

std::string vec_str(const Vec& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].str();
  }
  return out + "]";
}

void emit_common(const LieAlg& l, const Derivation& d) {
  emit("dim", l.dim());
  emit("derived_series", series_dims(l));
  auto dl = derived_length(l);
  emit("derived_length", dl ? std::to_string(*dl) : "none");
  emit("nilpotent", is_nilpotent(l).nilpotent ? "true" : "false");
  emit("nonsingular", d.nonsingular() ? "true" : "false");
  if (!d.nonsingular()) throw CheckError("derivation came out singular");
}

void write_pair(const LieAlg& l, const Derivation& d, const std::string& dir,
                const std::string& stem) {
  std::string ap = dir + "/" + stem + ".alg.json";
  std::string dp = dir + "/" + stem + ".der.json";
  write_file(ap, algebra_to_json(l));
  write_file(dp, derivation_to_json(d));
  emit("algebra_hash", algebra_hash(l));
  emit("algebra_file", ap);
  emit("derivation_file", dp);
}

int run_zoo(const std::string& family, i64 p, int k, const std::string& out_dir,
            const std::vector<i64>& par) {
  Field f = FiniteField::make(p, k);
  emit("family", family);
  emit("p", p);
  emit("k", k);
  emit("modulus", modulus_str(f));
  auto param = [&](std::size_t i) { return f->element_at(par.at(i)); };
  std::string stem = family + "_p" + std::to_string(p) + "k" + std::to_string(k);

  if (family == "mattarei") {
    if (!par.empty()) throw HypothesisError("this family takes no parameters");
    Mattarei m = mattarei(f);
    emit("alpha", m.alpha.str());
    emit("beta", m.beta.str());
    emit_common(m.algebra, m.delta);
    write_pair(m.algebra, m.delta, out_dir, stem);
    return 0;
  }
  if (family == "maxclass") {
    // the ungraded structure exists over any field; report it before the
    // degree assignment gets a chance to fail
    MaxClassStructure st = max_class_structure(f);
    emit("dim_k", st.k.dim());
    emit("class", is_nilpotent(st.k).cls);
    if (!par.empty() && par.size() != 2)
      throw HypothesisError("this family takes two parameters");
    MaxClass mc = par.empty() ? max_class_example(f)
                              : max_class_example(f, param(0), param(1));
    emit("a", mc.a.str());
    emit("b", mc.b.str());
    emit("grading_components", i64(mc.grading.components.size()));
    emit_common(mc.algebra, mc.delta);
    write_pair(mc.algebra, mc.delta, out_dir, stem);
    return 0;
  }
  if (family == "heis2p") {
    if (!par.empty() && par.size() != 2)
      throw HypothesisError("this family takes two parameters");
    Heis2p h = par.empty() ? heisenberg_2p(f) : heisenberg_2p(f, param(0), param(1));
    emit("a", h.a.str());
    emit("b", h.b.str());
    emit("grading_components", i64(h.grading.components.size()));
    emit_common(h.algebra, h.delta);
    write_pair(h.algebra, h.delta, out_dir, stem);
    return 0;
  }
  if (family == "heisp3") {
    if (!par.empty() && par.size() != 4)
      throw HypothesisError("this family takes four parameters");
    HeisP3 h = par.empty() ? heisenberg_p3(f)
                           : heisenberg_p3(f, param(0), param(1), param(2), param(3));
    emit("a", h.a.str());
    emit("b", h.b.str());
    emit("c", h.c.str());
    emit("d", h.d.str());
    emit("module_dim", h.x.rows());
    emit_common(h.algebra, h.delta);
    write_pair(h.algebra, h.delta, out_dir, stem);
    return 0;
  }
  throw HypothesisError("unknown family: " + family);
}

int run_decompose(const std::string& alg_path, const std::string& der_path, int xidx) {
  LieAlg l = algebra_from_json(read_file(alg_path));
  Derivation d = derivation_from_json(read_file(der_path), l);
  emit("algebra_hash", algebra_hash(l));
  emit("dim", l.dim());

  Subspace der = derived_subalgebra(l);
  Vec x;
  if (xidx >= 0) {
    if (xidx >= l.dim()) throw HypothesisError("basis index out of range");
    x = unit_vec(l.field(), l.dim(), xidx);
    if (der.contains(x))
      throw HypothesisError("chosen basis vector lies in the derived subalgebra");
  } else {
    bool found = false;
    for (int i = 0; i < l.dim() && !found; ++i) {
      Vec cand = unit_vec(l.field(), l.dim(), i);
      if (!der.contains(cand)) {
        x = cand;
        found = true;
      }
    }
    if (!found) throw HypothesisError("no basis vector escapes the derived subalgebra");
  }

  XpDecomposition dec = xp_decompose(l, x, d);
  const Field& wf = dec.algebra.field();
  emit("field", wf->str());
  emit("field_modulus", modulus_str(wf));
  emit("power_steps", dec.power_steps);
  emit("summands", i64(dec.summands.size()));
  Mat adx = dec.algebra.ad(dec.x);
  std::vector<Vec> all;
  for (std::size_t i = 0; i < dec.summands.size(); ++i) {
    const auto& su = dec.summands[i];
    std::string pre = "summand_" + std::to_string(i) + "_";
    emit(pre + "dim", su.r * wf->p());
    emit(pre + "minpoly", su.minpoly.str());
    emit(pre + "eigenvalue", su.eigenvalue.str());
    emit(pre + "generator", vec_str(su.generator));
    Vec v = su.generator;
    for (i64 j = 0; j < su.r * wf->p(); ++j) {
      all.push_back(v);
      v = adx.apply(v);
    }
  }
  Subspace total = Subspace::span(wf, dec.algebra.dim(), all);
  if (total.dim() != dec.ideal.dim() || !dec.ideal.contains(total))
    throw CheckError("summand orbits do not rebuild the derived subalgebra");
  emit("directsum", "true");
  return 0;
}

int run_verify(const std::string& suite, const SuiteOptions& opt) {
  SuiteResult r = run_suite(suite, opt);
  emit("suite", r.suite);
  emit("seed", i64(opt.seed));
  emit("trials", r.trials);
  emit("failures", r.failures);
  for (const auto& n : r.notes) std::cout << n << "\n";
  if (!r.first_failure.empty()) emit("first_failure", r.first_failure);
  emit("ok", r.ok() ? "true" : "false");
  return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Lie algebra tool over finite fields"};
  app.require_subcommand(1);

  auto* zc = app.add_subcommand("zoo", "construct an example algebra and its derivation");
  std::string family;
  i64 zp = 0;
  int zk = 2;
  std::string out_dir = ".";
  std::vector<i64> par;
  zc->add_option("family", family, "mattarei, maxclass, heis2p or heisp3")->required();
  zc->add_option("--p", zp, "field characteristic")->required();
  zc->add_option("--k", zk, "field degree over the prime field");
  zc->add_option("--out", out_dir, "output directory");
  zc->add_option("--param", par,
                 "family parameters as canonical element indices, in order");

  auto* dc = app.add_subcommand("decompose", "split the derived subalgebra into cyclic summands");
  std::string alg_path, der_path;
  int xidx = -1;
  dc->add_option("algebra", alg_path, "algebra file")->required();
  dc->add_option("derivation", der_path, "derivation file")->required();
  dc->add_option("--x", xidx, "basis index of the distinguished element");

  auto* vc = app.add_subcommand("verify", "run a randomized verification suite");
  std::string suite;
  bool list = false;
  SuiteOptions opt;
  vc->add_option("suite", suite, "suite name");
  vc->add_flag("--list", list, "list suite names and exit");
  vc->add_option("--seed", opt.seed, "random seed");
  vc->add_option("--trials", opt.trials, "instance count override");
  vc->add_option("--p", opt.p, "characteristic override");
  vc->add_option("--n", opt.n, "power bound override");
  vc->add_option("--s", opt.s, "summand bound override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (zc->parsed()) return run_zoo(family, zp, zk, out_dir, par);
    if (dc->parsed()) return run_decompose(alg_path, der_path, xidx);
    if (list) {
      for (const auto& n : suite_names()) std::cout << n << "\n";
      return 0;
    }
    if (suite.empty()) throw HypothesisError("missing suite name (try --list)");
    return run_verify(suite, opt);
  } catch (const HypothesisError& e) {
    std::cout.flush();
    std::cerr << "hypothesis error: " << e.what() << std::endl;
    return 2;
  } catch (const CheckError& e) {
    std::cout.flush();
    std::cerr << "counterexample: " << e.what() << std::endl;
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid input: " << e.what() << std::endl;
    return 2;
  }
}
