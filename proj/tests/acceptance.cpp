// One line per acceptance criterion. Exit status 0 iff all pass.
//
// Tolerances: every check is exact (set equality, table equality, search
// verdicts). Sampled checks use seed 20240229 and 10^4 samples per equation.

#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pealab/atom_algebra.hpp"
#include "pealab/cli.hpp"
#include "pealab/equations.hpp"
#include "pealab/error.hpp"
#include "pealab/lemmas.hpp"

using namespace pealab;

namespace {

constexpr std::uint64_t kSeed = 20240229;
constexpr std::size_t kSamples = 10000;

struct Tally {
  std::size_t checks = 0;
  std::vector<std::string> failed;

  void take(const CheckReport& r, const std::string& where) {
    for (const auto& rec : r.records) {
      ++checks;
      if (!rec.passed) failed.push_back(where + ":" + rec.name);
    }
  }
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failed.push_back(what);
  }
};

bool line(int id, const std::string& title, const std::function<void(Tally&)>& body) {
  Tally t;
  Stopwatch sw;
  try {
    body(t);
  } catch (const std::exception& e) {
    t.failed.push_back(std::string("exception: ") + e.what());
  }
  bool ok = t.failed.empty();
  std::cout << (ok ? "PASS" : "FAIL") << "  " << id << "  " << title << "  [" << t.checks << " checks, "
            << static_cast<long>(sw.millis()) << " ms]";
  if (!ok) {
    std::cout << "  failed:";
    for (std::size_t k = 0; k < t.failed.size() && k < 5; ++k) std::cout << " " << t.failed[k];
    if (t.failed.size() > 5) std::cout << " ...(" << t.failed.size() << ")";
  }
  std::cout << std::endl;
  return ok;
}

struct Built {
  SetAlgebraBuild b;
  AtomAlgebra ap;
  explicit Built(int p, int alpha = 3) : b(p, alpha), ap(build_Ap(b)) {}
};

std::string run_hash(std::vector<std::string> args) {
  args.insert(args.begin(), "pealab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return std::to_string(code) + ":" + std::to_string(std::hash<std::string>{}(out.str()));
}

}  // namespace

int main() {
  const Built a3(3), a5(5);
  bool all = true;

  all &= line(1, "construction soundness: Q, K, H families", [&](Tally& t) {
    struct Case {
      int p, alpha;
    };
    for (Case c : {Case{3, 3}, Case{5, 3}, Case{7, 3}, Case{3, 4}}) {
      const std::string at = "p" + std::to_string(c.p) + "a" + std::to_string(c.alpha);
      const AffinePlane plane = build_plane(PrimeField(c.p));
      const LyndonRelations rels = lyndon_relations(plane);
      const BaseSet base(c.p, c.alpha);
      const auto target = times_T(base, rels.R[0]);
      t.take(verify_lyndon(rels), at + ".lyndon");
      t.take(verify_block_partition(block_partition(base)), at + ".blocks");
      const auto q = build_Q(base, plane);
      t.take(verify_family(q, target), at + ".Q");
      t.take(verify_family(build_K(base, plane), target), at + ".K");
      t.take(verify_family(build_H_cylfree(base, plane), target), at + ".Hcyl");
      const Doubling dbl{base.size()};
      t.take(verify_family(build_H_diagfree(q, dbl), dbl.lift(target)), at + ".Hdiag");
    }
  });

  all &= line(2, "atom cross-check: closure atoms = formula atoms", [&](Tally& t) {
    t.take(atom_formula_check(a3.b), "p3a3");
    t.take(atom_formula_check(a5.b), "p5a3");
    t.take(atom_formula_check(SetAlgebraBuild(3, 4)), "p3a4");
  });

  all &= line(3, "axiom suites P and F", [&](Tally& t) {
    CheckMode mode;
    mode.seed = kSeed;
    mode.samples = kSamples;
    for (const Built* x : {&a3, &a5}) {
      const std::string at = "A" + std::to_string(x->ap.p);
      const auto p = check_all(x->ap, suite_P(3), mode);
      const auto f = check_all(x->ap, suite_F(3), mode);
      t.take(p, at + ".P");
      t.take(f, at + ".F");
      // AtomLevel must actually have run on the additive instances
      t.expect(p.find("P1[0,1].atom_level") != nullptr, at + ".P1 atom_level ran");
    }
    const AtomAlgebra full = full_set_algebra(3, 3);
    CheckMode scan;
    scan.kind = CheckModeKind::AtomEnumeration;
    CheckMode samp = mode;
    samp.kind = CheckModeKind::Sampled;
    for (const auto& [name, suite] : {std::pair{"P", suite_P(3)}, std::pair{"F", suite_F(3)}}) {
      t.take(check_all(full, suite, scan), std::string("full.") + name + ".atoms");
      t.take(check_all(full, suite, samp), std::string("full.") + name + ".sampled");
    }
  });

  all &= line(4, "witness behaviour: E_3, e_3, solve_Eq0", [&](Tally& t) {
    t.take(witness_report(a3.ap, {}), "A3");
    const auto r35 = solve_Eq0(a3.ap, 5);
    const auto r53 = solve_Eq0(a5.ap, 3);
    t.expect(!r35.sat, "solve_Eq0(A3,5) unsat");
    t.expect(!r53.sat, "solve_Eq0(A5,3) unsat");
    for (const Built* x : {&a3, &a5}) {
      const auto r = solve_Eq0(x->ap, x->ap.p);
      t.expect(r.sat && r.recovers_lyndon, "solve_Eq0(A" + std::to_string(x->ap.p) + ",p) recovers R_i");
    }
  });

  all &= line(5, "reduct representability (cyl-free p=3,5; diag-free p=3)", [&](Tally& t) {
    IsoOptions opt;
    opt.seed = kSeed;
    for (const Built* x : {&a3, &a5}) {
      const auto iso = reduct_rep_cylfree(x->ap, x->b, opt);
      t.take(iso.report, "cylfree.p" + std::to_string(x->ap.p));
      const auto* ex = iso.report.find("excluded_operation_fails");
      t.expect(ex != nullptr, "cylfree sanity direction recorded");
    }
    const auto d = reduct_rep_diagfree(a3.ap, a3.b, opt);
    t.take(d.report, "diagfree.p3");
    t.expect(d.target.space.n == 22, "|U'| = 22");
    t.expect(d.report.find("excluded_operation_fails") != nullptr, "diagfree sanity direction recorded");
  });

  all &= line(6, "merge construction p=5, k=0, m=3", [&](Tally& t) {
    IsoOptions opt;
    opt.seed = kSeed;
    const auto res = merge_construction(a5.ap, a5.b, 0, 3, opt);
    t.take(res.report, "merge");
    for (const char* name : {"iso.cyl", "iso.diag", "iso.transp", "iso.bijective"})
      t.expect(res.report.find(name) != nullptr, std::string("merge records ") + name);
  });

  all &= line(7, "combinatorial kernels: x and y", [&](Tally& t) {
    for (int p : {3, 5}) t.take(lemma_x_check(plane_equivalences(p)), "x.p" + std::to_string(p));
    for (int n : {2, 4, 6}) {
      const auto r = lemma_y_search(n);
      t.expect(r.exists(), "y.n" + std::to_string(n) + " exists");
      if (r.system) t.take(verify_factor_system(n, *r.system), "y.n" + std::to_string(n));
    }
    for (int n : {3, 5}) t.expect(!lemma_y_search(n).exists(), "y.n" + std::to_string(n) + " none");
  });

  all &= line(8, "nonrepresentability certificate", [&](Tally& t) {
    t.take(nonrepresentability_certificate(a3.ap, a3.b), "A3");
    t.take(nonrepresentability_certificate(a5.ap, a5.b), "A5");
  });

  all &= line(9, "determinism: repeated runs hash equal", [&](Tally& t) {
    const std::vector<std::vector<std::string>> cmds = {
        {"--no-timing", "axioms", "--p", "3", "--suite", "P", "--mode", "sampled", "--seed", "42", "--samples", "10000"},
        {"--no-timing", "axioms", "--p", "5", "--suite", "F", "--seed", "7", "--samples", "1000"},
        {"--no-timing", "witness", "--p", "3", "--against", "3", "5"},
        {"--no-timing", "reducts", "--p", "3"},
        {"--no-timing", "lemmas", "--which", "y", "--n", "6"},
        {"--no-timing", "build", "--p", "3", "--alpha", "3"}};
    for (const auto& c : cmds) {
      const auto h1 = run_hash(c);
      const auto h2 = run_hash(c);
      t.expect(h1 == h2, c[1] + " hash");
      t.expect(h1.rfind("0:", 0) == 0, c[1] + " exit 0");
    }
  });

  return all ? 0 : 1;
}
