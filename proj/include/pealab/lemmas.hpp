#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pealab/equations.hpp"
#include "pealab/field_geometry.hpp"
#include "pealab/report.hpp"

namespace pealab {

/// Checks the hypotheses on S_0..S_q over Z = {0..n-1} (q >= 1, each S_i a
/// nontrivial equivalence, union Z x Z, pairwise meets Id_Z, S_i o S_j = Z x Z
/// for i != j), then records the S_0 class sizes and whether all equal q.
/// Throws HypothesisFailed(which, witness) naming the first broken hypothesis.
CheckReport lemma_x_check(const std::vector<BinaryRelation>& s);

/// The equivalences E_i = R_i u Id of AG(2,p).
std::vector<BinaryRelation> plane_equivalences(int p);

/// n-1 disjoint symmetric irreflexive relations with domain Z = {0..n-1}
/// covering Z x Z - Id, i.e. a proper (n-1)-edge-colouring of K_n.
struct FactorSystem {
  std::vector<BinaryRelation> relations;
};

struct YSearchResult {
  std::optional<FactorSystem> system;
  std::size_t nodes = 0;

  bool exists() const { return system.has_value(); }
  json to_json() const;
};

/// Exhaustive backtracking over the edges of K_n, colours numbered in order
/// of first use. n >= 2; throws BudgetExceeded above budget nodes.
YSearchResult lemma_y_search(int n, std::size_t budget = search_budget());

/// Checks that a system meets the conditions above.
CheckReport verify_factor_system(int n, const FactorSystem& f);

/// walecki_coloring(m) is a 1-factorization of K_m.
CheckReport walecki_check(int m);

}  // namespace pealab
