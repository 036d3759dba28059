#include "pealab/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <ostream>
#include <sstream>

#include "pealab/atom_algebra.hpp"
#include "pealab/equations.hpp"
#include "pealab/error.hpp"
#include "pealab/lemmas.hpp"

namespace pealab {

namespace {

struct Options {
  bool no_timing = false;
  int p = 3;
  int alpha = 3;
  std::string out_file;
  std::string algebra;
  std::string use = "Ap";
  std::string suite = "P";
  std::string mode = "auto";
  std::uint64_t seed = 20240229;
  std::size_t samples = 10000;
  unsigned threads = 0;
  std::vector<int> against{3, 5};
  int k = 0;
  int m = -1;
  std::string which;
  int n = 0;
  std::string suite_name = "P";
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

// "full:N:ALPHA", a file written by build (member "Ap" or "As"), a bare
// algebra file, or --p/--alpha built in memory.
AtomAlgebra load_algebra(const Options& o, json& params) {
  if (o.algebra.rfind("full:", 0) == 0) {
    int n = 0, alpha = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(o.algebra.substr(4));
    if (!(ss >> c1 >> n >> c2 >> alpha) || c1 != ':' || c2 != ':' || n < 1 || alpha < 3 || !ss.eof())
      throw InvalidArgument("expected full:N:ALPHA with N >= 1, ALPHA >= 3");
    params["algebra"] = o.algebra;
    return full_set_algebra(n, alpha);
  }
  if (!o.algebra.empty()) {
    json j = read_json(o.algebra);
    params["algebra"] = o.algebra;
    if (j.contains("Ap") || j.contains("As")) {
      if (!j.contains(o.use)) throw InvalidArgument(o.algebra + " has no member " + o.use);
      params["use"] = o.use;
      return algebra_from_json(j.at(o.use));
    }
    return algebra_from_json(j);
  }
  params["p"] = o.p;
  params["alpha"] = o.alpha;
  params["use"] = o.use;
  SetAlgebraBuild b(o.p, o.alpha);
  return o.use == "As" ? algebra_from_table(b.table, b.r_times_T) : build_Ap(b);
}

std::vector<Equation> load_suite(const std::string& suite, int alpha) {
  if (suite == "P") return suite_P(alpha);
  if (suite == "F") return suite_F(alpha);
  json j = read_json(suite);
  if (!j.is_array()) throw InvalidArgument(suite + ": expected a JSON list of equations");
  std::vector<Equation> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const auto& e = j[k];
    if (e.is_string()) {
      out.push_back(parse_equation(e.get<std::string>(), alpha, "file[" + std::to_string(k) + "]"));
    } else if (e.is_object() && e.contains("equation")) {
      std::string origin = e.value("origin", "file[" + std::to_string(k) + "]");
      out.push_back(parse_equation(e.at("equation").get<std::string>(), alpha, origin));
    } else {
      throw InvalidArgument(suite + ": entry " + std::to_string(k) + " is neither a string nor {origin, equation}");
    }
  }
  return out;
}

json suite_json(const std::vector<Equation>& eqs) {
  json j = json::array();
  for (const auto& e : eqs) j.push_back({{"origin", e.origin}, {"equation", to_string(e)}});
  return j;
}

int emit(const CheckReport& rep, const Options& o, std::ostream& out) {
  out << rep.to_json(!o.no_timing).dump(2) << "\n";
  return rep.passed() ? 0 : 1;
}

int cmd_build(const Options& o, std::ostream& out) {
  CheckReport rep;
  rep.command = "build";
  rep.parameters = {{"p", o.p}, {"alpha", o.alpha}};
  Stopwatch sw;
  SetAlgebraBuild b(o.p, o.alpha);
  AtomAlgebra ap = build_Ap(b);
  std::size_t q_atoms = 0;
  for (const auto& l : ap.labels) q_atoms += l.kind == AtomLabel::Kind::Q ? 1 : 0;
  rep.add("closure", true, nullptr,
          {{"atoms", ap.size()}, {"q_atoms", q_atoms}, {"b_atoms", ap.size() - q_atoms}, {"rounds", b.closure.rounds}},
          sw.millis());
  if (o.alpha <= 4) rep.append(atom_formula_check(b), "atom_formula.");
  rep.append(q_label_uniqueness_check(b), "q_labels.");
  rep.append(verify_atom_table(b.table), "table.");
  if (!o.out_file.empty()) {
    AtomAlgebra as = algebra_from_table(b.table, b.r_times_T);
    json file = {{"schema", kReportSchema}, {"tool", "pealab"}, {"version", kToolVersion},
                 {"p", o.p},           {"alpha", o.alpha}, {"As", algebra_to_json(as, &b.table.atoms)},
                 {"Ap", algebra_to_json(ap)}};
    std::ofstream f(o.out_file);
    if (!f) throw InvalidArgument("cannot write " + o.out_file);
    f << file.dump() << "\n";
    rep.parameters["out"] = o.out_file;
  }
  return emit(rep, o, out);
}

int cmd_axioms(const Options& o, std::ostream& out) {
  CheckReport rep;
  rep.command = "axioms";
  json params = json::object();
  AtomAlgebra a = load_algebra(o, params);
  CheckMode mode;
  mode.kind = mode_from_string(o.mode);
  mode.seed = o.seed;
  mode.samples = o.samples;
  auto eqs = load_suite(o.suite, a.alpha);
  rep.append(check_all(a, eqs, mode, o.threads));
  params["suite"] = o.suite;
  params["mode"] = o.mode;
  params["seed"] = o.seed;
  params["samples"] = o.samples;
  params["equations"] = eqs.size();
  rep.parameters = std::move(params);
  return emit(rep, o, out);
}

int cmd_witness(const Options& o, std::ostream& out) {
  SetAlgebraBuild b(o.p, o.alpha);
  AtomAlgebra ap = build_Ap(b);
  return emit(witness_report(ap, o.against), o, out);
}

int cmd_reducts(const Options& o, std::ostream& out) {
  int p = o.p, alpha = o.alpha;
  std::optional<AtomAlgebra> loaded;
  if (!o.algebra.empty()) {
    json params;
    loaded = load_algebra(o, params);
    p = loaded->p;
    alpha = loaded->alpha;
  }
  CheckReport rep;
  rep.command = "reducts";
  SetAlgebraBuild b(p, alpha);
  AtomAlgebra ap = build_Ap(b);
  if (loaded) {
    bool same = loaded->labels == ap.labels && loaded->cyl == ap.cyl && loaded->diag == ap.diag &&
                loaded->transp == ap.transp && loaded->transp_star == ap.transp_star;
    rep.add("algebra_file_matches_build", same);
  }
  const int k = o.k;
  const int m = o.m < 0 ? p - 2 - k : o.m;
  rep.parameters = {{"p", p}, {"alpha", alpha}, {"k", k}, {"m", m}};
  if (!o.algebra.empty()) rep.parameters["algebra"] = o.algebra;
  rep.append(nonrepresentability_certificate(ap, b), "certificate.");
  rep.append(reduct_rep_cylfree(ap, b).report, "cylfree.");
  rep.append(reduct_rep_diagfree(ap, b).report, "diagfree.");
  rep.append(merge_construction(ap, b, k, m).report, "merge.");
  return emit(rep, o, out);
}

int cmd_lemmas(const Options& o, std::ostream& out) {
  CheckReport rep;
  rep.command = "lemmas";
  rep.parameters = {{"which", o.which}};
  if (o.which == "x") {
    rep.parameters["p"] = o.p;
    try {
      rep.append(lemma_x_check(plane_equivalences(o.p)), "x.");
    } catch (const HypothesisFailed& e) {
      rep.add("x.hypothesis." + e.which, false, e.witness);
    }
  } else if (o.which == "y") {
    rep.parameters["n"] = o.n;
    Stopwatch sw;
    auto r = lemma_y_search(o.n);
    bool even = o.n % 2 == 0;
    rep.add("y.exists_iff_even", r.exists() == even, r.exists() == even ? json(nullptr) : r.to_json(), r.to_json(),
            sw.millis());
    if (r.system) rep.append(verify_factor_system(o.n, *r.system), "y.system.");
  } else if (o.which == "walecki") {
    rep.parameters["n"] = o.n;
    rep.append(walecki_check(o.n), "walecki.");
  } else {
    throw InvalidArgument("--which must be x, y or walecki");
  }
  return emit(rep, o, out);
}

int cmd_suite(const Options& o, std::ostream& out) {
  std::vector<Equation> eqs;
  if (o.suite_name == "P") eqs = suite_P(o.alpha);
  else if (o.suite_name == "F") eqs = suite_F(o.alpha);
  else if (o.suite_name == "E") eqs = gen_Ep(o.p, o.alpha);
  else if (o.suite_name == "E0") eqs = gen_Eq0(o.p, o.alpha);
  else if (o.suite_name == "e") eqs = {gen_ep(o.p, o.alpha)};
  else throw InvalidArgument("--name must be P, F, E, E0 or e");
  out << suite_json(eqs).dump(2) << "\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Constructs the algebras A_p and checks their properties", "pealab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--no-timing", o.no_timing, "Omit timing fields from reports");
  app.set_version_flag("--version", kToolVersion);

  auto* build = app.add_subcommand("build", "Build A^s and A_p, cross-check the atoms");
  build->add_option("--p", o.p, "Odd prime")->required();
  build->add_option("--alpha", o.alpha, "Dimension (>= 3)");
  build->add_option("--out", o.out_file, "Write both atom tables to this JSON file");

  auto* axioms = app.add_subcommand("axioms", "Check an equation suite on an algebra");
  axioms->add_option("--algebra", o.algebra, "Algebra file from build, a bare algebra file, or full:N:ALPHA");
  axioms->add_option("--use", o.use, "Member of a build file: Ap or As")->check(CLI::IsMember({"Ap", "As"}));
  axioms->add_option("--p", o.p, "Build A_p in memory when no --algebra");
  axioms->add_option("--alpha", o.alpha, "Dimension for --p");
  axioms->add_option("--suite", o.suite, "P, F, or a JSON file of equations");
  axioms->add_option("--mode", o.mode, "auto, atom, atoms, sampled or exhaustive");
  axioms->add_option("--seed", o.seed, "Sampling seed");
  axioms->add_option("--samples", o.samples, "Samples per equation");
  axioms->add_option("--threads", o.threads, "Worker threads (0 = automatic)");

  auto* witness = app.add_subcommand("witness", "E_p, e_p and e_q checks on A_p");
  witness->add_option("--p", o.p, "Odd prime")->required();
  witness->add_option("--alpha", o.alpha, "Dimension (>= 3)");
  witness->add_option("--against", o.against, "Odd primes q for e_q")->expected(1, -1);

  auto* reducts = app.add_subcommand("reducts", "Reduct representations, certificate and merge construction");
  reducts->add_option("--algebra", o.algebra, "Algebra file from build (p and alpha are read from it)");
  reducts->add_option("--p", o.p, "Odd prime");
  reducts->add_option("--alpha", o.alpha, "Dimension (>= 3)");
  reducts->add_option("--k", o.k, "Merged class k");
  reducts->add_option("--m", o.m, "Merged class m (default p-2-k)");

  auto* lemmas = app.add_subcommand("lemmas", "Combinatorial kernels");
  lemmas->add_option("--which", o.which, "x, y or walecki")->required()->check(CLI::IsMember({"x", "y", "walecki"}));
  lemmas->add_option("--p", o.p, "Plane order for x");
  lemmas->add_option("--n", o.n, "Set size for y and walecki");

  auto* suite = app.add_subcommand("suite", "Print an equation list as JSON");
  suite->add_option("--name", o.suite_name, "P, F, E, E0 or e")->required();
  suite->add_option("--p", o.p, "p for E, E0, e");
  suite->add_option("--alpha", o.alpha, "Dimension");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*build) return cmd_build(o, out);
    if (*axioms) return cmd_axioms(o, out);
    if (*witness) return cmd_witness(o, out);
    if (*reducts) return cmd_reducts(o, out);
    if (*lemmas) return cmd_lemmas(o, out);
    if (*suite) return cmd_suite(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace pealab
