#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pealab/atom_algebra.hpp"
#include "pealab/bitset.hpp"
#include "pealab/report.hpp"
#include "pealab/term.hpp"

namespace pealab {

/// Cap on search nodes and enumerated evaluations; PEALAB_BUDGET overrides 2^24.
std::size_t search_budget();

/// Variable index -> element (atom set).
using Evaluation = std::map<std::size_t, Bitset>;

/// Bottom-up evaluation; transpositions use P* when the algebra has it.
/// Throws UnboundVariable.
Bitset eval(const AtomAlgebra& a, const Term& t, const Evaluation& e);

/// The full set algebra on {0..n-1}^alpha, one atom per tuple.
AtomAlgebra full_set_algebra(int n, int alpha);

enum class CheckModeKind {
  Exhaustive,       // all (2^atoms)^vars evaluations
  AtomLevel,        // variables over atoms and 0; a proof for join-preserving sides
  AtomEnumeration,  // the same scan without the applicability requirement
  Sampled,          // uniform random atom subsets
  Auto              // AtomLevel when applicable and within budget, plus Sampled
};

struct CheckMode {
  CheckModeKind kind = CheckModeKind::Auto;
  std::uint64_t seed = 20240229;
  std::size_t samples = 10000;
  /// Cap on the number of evaluations of an enumerating mode.
  std::size_t budget = closure_budget();
};

std::string to_string(CheckModeKind k);
/// "exhaustive", "atom", "atoms", "sampled", "auto"; throws InvalidArgument.
CheckModeKind mode_from_string(const std::string& s);

/// True when both sides preserve nonempty joins in each variable: no
/// complement above a variable and no product of two subterms sharing one.
/// Such an equation holds iff it holds with every variable an atom or 0.
bool atom_level_applicable(const Equation& eq);

/// One record per strategy run, named after the mode. A failing record's
/// witness holds the evaluation (variable -> atom ids) and the first atom
/// where the sides differ. Throws BudgetExceeded, ModeInapplicable.
CheckReport check(const AtomAlgebra& a, const Equation& eq, const CheckMode& mode = {});

/// check over a list; records are prefixed by origin tags. Equations are
/// checked on worker threads; the report does not depend on scheduling.
CheckReport check_all(const AtomAlgebra& a, const std::vector<Equation>& eqs, const CheckMode& mode = {},
                      unsigned threads = 0);

/// All index instances of (P1)-(P8) for i,j,k,l < alpha.
std::vector<Equation> suite_P(int alpha);
/// All index instances of (F0)-(F11), with s^i_j lowered.
std::vector<Equation> suite_F(int alpha);

/// Variables: x_i is x[i] for i <= p, y_k is x[p+1+k] for k < p-1.
std::size_t var_x(int p, int i);
std::size_t var_y(int p, int k);

/// The two displayed groups of E_p; x-only equations first.
std::vector<Equation> gen_Ep(int p, int alpha);
/// The equations of E_q that mention only x_0..x_q.
std::vector<Equation> gen_Eq0(int q, int alpha);
/// Pi{ -c_0...c_{alpha-1}(lhs (+) rhs) : lhs = rhs in E_p } = 0.
Equation gen_ep(int p, int alpha);

/// x_i -> c_2...c_{alpha-1}(R_i x T), y_k -> the atom (Id, k).
/// Throws InvalidArgument when the algebra lacks Lyndon or Q labels.
Evaluation distinguished_eval(const AtomAlgebra& ap);

/// Evaluation with variables printed as "x[k]" -> atom id list.
json evaluation_json(const Evaluation& e);

struct Eq0Result {
  bool sat = false;
  std::vector<Bitset> assignment;  // first solution, x_0..x_q
  std::size_t solutions = 0;       // all solutions up to class order
  std::size_t binary_atoms = 0;
  std::size_t orbits = 0;          // converse orbits not meeting d_01
  std::size_t nodes = 0;
  std::size_t leaves = 0;
  /// Every solution is the set {c_2...c_{alpha-1}(R_i x T)} (needs q = p).
  bool recovers_lyndon = false;

  json to_json() const;
};

/// Searches x_0..x_q in the binary part of a satisfying E_q^0: each x_i is a
/// union of converse orbits of binary atoms, orbits are given to classes in
/// restricted-growth order, and every leaf is checked against the generated
/// equations. Throws BudgetExceeded above budget nodes.
Eq0Result solve_Eq0(const AtomAlgebra& ap, int q, std::size_t budget = search_budget());

/// The witness checks for A_p: E_p under the distinguished evaluation, e_p
/// failing there, and e_q for each q via solve_Eq0.
CheckReport witness_report(const AtomAlgebra& ap, const std::vector<int>& against);

}  // namespace pealab
