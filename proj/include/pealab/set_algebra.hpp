#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pealab/bitset.hpp"
#include "pealab/field_geometry.hpp"
#include "pealab/partitions.hpp"
#include "pealab/perm.hpp"
#include "pealab/relation.hpp"
#include "pealab/report.hpp"

namespace pealab {

/// Non-Boolean operations a closure uses. + and - are always included.
struct Signature {
  bool cyl = true;
  bool diag = true;
  bool transp = true;

  friend bool operator==(const Signature&, const Signature&) = default;
};

json to_json(const Signature& s);

/// Cap on atom counts and element enumeration; PEALAB_BUDGET overrides 2^20.
std::size_t closure_budget();

/// A subalgebra of the full set algebra on U^alpha, held by its atoms.
///
/// Every element is a union of atoms; atom ids follow the first tuple each
/// atom contains.
class ClosedFamily {
public:
  Space space;
  std::vector<ConcreteRelation> generators;
  Signature signature;
  std::vector<std::uint32_t> atom_of;  // per tuple
  std::vector<ConcreteRelation> atoms;
  std::size_t rounds = 0;

  std::size_t atom_count() const { return atoms.size(); }
  /// The element with the given atom set.
  ConcreteRelation element(const Bitset& atom_set) const;
  /// Atom set of x when x is an element, nullopt otherwise.
  std::optional<Bitset> decompose(const ConcreteRelation& x) const;
  bool contains(const ConcreteRelation& x) const { return decompose(x).has_value(); }
  /// All 2^n elements in binary-counter order. Throws BudgetExceeded above cap.
  std::vector<ConcreteRelation> elements(std::size_t cap = closure_budget()) const;
};

/// Least subset of the full set algebra containing gens (and the diagonals
/// when signature.diag) closed under the signature. Computed as the coarsest
/// partition of U^alpha compatible with the generators and stable under each
/// operation. Throws BudgetExceeded when the atom count exceeds cap.
ClosedFamily generate_subalgebra(const Space& space, const std::vector<ConcreteRelation>& gens,
                                 Signature signature = {}, std::size_t cap = closure_budget());

struct AtomLabel {
  enum class Kind { Q, B };
  Kind kind = Kind::B;
  Perm tau_plus;
  int k = -1;
  int b = -1;

  json to_json() const;
  friend bool operator==(const AtomLabel&, const AtomLabel&) = default;
};

/// Atoms with their operation tables.
struct AtomTable {
  int p = 0;
  int alpha = 0;
  Space space;
  std::vector<ConcreteRelation> atoms;
  std::vector<std::uint32_t> atom_of;  // per tuple
  std::vector<AtomLabel> labels;
  std::vector<std::vector<Bitset>> cyl;                       // [i][a]
  std::vector<std::vector<Bitset>> diag;                      // [i][j]
  std::vector<std::vector<std::vector<std::size_t>>> transp;  // [i][j][a]

  std::size_t size() const { return atoms.size(); }
  std::size_t atom_containing(std::size_t tuple) const { return atom_of[tuple]; }
  std::optional<std::size_t> find(const ConcreteRelation& r) const;
};

/// Action tables read off the atom partition; all atoms labelled B in id order.
AtomTable atoms_of(const ClosedFamily& fam);

/// Labels S_tau+ Q_k atoms as (tau+, k) and renumbers the B labels.
/// Throws LabelAmbiguity if an atom receives two labels, InvalidArgument if
/// some S_tau+ Q_k is not an atom.
void label_q_atoms(AtomTable& table, const RelationFamily& q);

/// Tables against the concrete operations, disjointness, cover, transp bijectivity.
CheckReport verify_atom_table(const AtomTable& table);

/// The concrete algebra A^s and its ingredients.
struct SetAlgebraBuild {
  int p = 0;
  int alpha = 0;
  BaseSet base;
  AffinePlane plane;
  LyndonRelations rels;
  RelationFamily q;
  std::vector<ConcreteRelation> r_times_T;  // R_i x T, i <= p
  ClosedFamily closure;
  AtomTable table;

  SetAlgebraBuild(int p, int alpha);
};

/// The generating set {Q_k} u {R_i x T : 1 <= i <= p}.
std::vector<ConcreteRelation> generators(const SetAlgebraBuild& b);

/// Closure atoms equal {S_tau Q_k} u At(B) - {S_tau(R_0 x T)}, where B is
/// generated by all R_i x T.
CheckReport atom_formula_check(const SetAlgebraBuild& b);

/// S_tau Q_k = S_sigma Q_j only for (sigma, j) in {(tau,k), (tau o [0,1], p-2-k)}.
CheckReport q_label_uniqueness_check(const SetAlgebraBuild& b);

}  // namespace pealab
