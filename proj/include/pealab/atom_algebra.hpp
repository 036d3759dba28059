#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pealab/bitset.hpp"
#include "pealab/perm.hpp"
#include "pealab/relation.hpp"
#include "pealab/report.hpp"
#include "pealab/set_algebra.hpp"

namespace pealab {

using TranspTable = std::vector<std::vector<std::vector<std::size_t>>>;  // [i][j][a]

/// A finite algebra given by its atoms and atomwise operation tables.
/// Elements are atom sets; every non-Boolean operation is the additive
/// extension of its table.
class AtomAlgebra {
public:
  int p = 0;
  int alpha = 0;
  std::vector<AtomLabel> labels;
  std::vector<std::vector<Bitset>> cyl;  // [i][a]
  std::vector<std::vector<Bitset>> diag;  // [i][j]
  TranspTable transp;
  std::optional<TranspTable> transp_star;
  /// Atom sets of R_i x T, i <= p, when known.
  std::vector<Bitset> lyndon;

  std::size_t size() const { return labels.size(); }
  Bitset zero() const { return Bitset(size()); }
  Bitset one() const;
  Bitset atom(std::size_t a) const;

  Bitset cyl_of(int i, const Bitset& x) const;
  const Bitset& diag_of(int i, int j) const;
  /// P*_ij when transp_star is present, P_ij otherwise.
  Bitset transp_of(int i, int j, const Bitset& x) const;
  const TranspTable& effective_transp() const { return transp_star ? *transp_star : transp; }

  /// Atom labelled (tau+, k), if any.
  std::optional<std::size_t> q_atom(const Perm& tau_plus, int k) const;

  /// Rebuilds the per-coordinate grouping used by cyl_of; call after editing cyl.
  void index();

private:
  struct CylGroup {
    Bitset members;
    Bitset image;
  };
  std::vector<std::vector<CylGroup>> groups_;
};

/// The abstract copy of A^s.
AtomAlgebra algebra_from_table(const AtomTable& table, const std::vector<ConcreteRelation>& lyndon = {});

/// A_p: transp_star[i][j] sends (tau+, k) to (([i,j] o tau+)+, k) and agrees
/// with transp elsewhere. Throws LabelAmbiguity when the Q labels repeat.
AtomAlgebra build_Ap(const AtomTable& table, const std::vector<ConcreteRelation>& lyndon = {});
AtomAlgebra build_Ap(const SetAlgebraBuild& b);

/// S*_sigma x: the P* operations along perm_word(sigma), innermost first.
Bitset s_star(const Perm& sigma, const Bitset& x, const AtomAlgebra& a);
/// The same along an explicit word [i1,j1],...,[ir,jr] (composition order).
Bitset s_star_word(const std::vector<Transposition>& word, const Bitset& x, const AtomAlgebra& a);

/// Atoms of a concrete set algebra, indexed like the target of an atom map.
struct ConcreteAtomSystem {
  Space space;
  std::vector<ConcreteRelation> atoms;

  ConcreteRelation element(const Bitset& set) const;
};

struct IsoOptions {
  std::size_t samples = 1000;
  std::uint64_t seed = 20240229;
};

/// Checks that the additive extension of h (atom a of src to atom h[a] of dst)
/// is an isomorphism for the operations in sig: atomwise commutation, target
/// atoms partitioning the unit, bijectivity, and random element spot checks.
/// Transpositions of src use transp_star when present.
CheckReport verify_iso(const AtomAlgebra& src, const ConcreteAtomSystem& dst, const std::vector<std::size_t>& h,
                       Signature sig, const IsoOptions& opt = {});

struct IsoWitness {
  ConcreteAtomSystem target;
  std::vector<std::size_t> h;
  CheckReport report;
};

/// Identity-map comparison of A_p with A^s: equal cyl and diag tables, and
/// the full-signature check failing on transp at a Q atom.
CheckReport nonrepresentability_certificate(const AtomAlgebra& ap, const SetAlgebraBuild& b);

/// Set algebra over U with S_tau+ H_k in place of S_tau+ Q_k; checked for
/// +, -, D, P* vs P, and expected to fail on C.
IsoWitness reduct_rep_cylfree(const AtomAlgebra& ap, const SetAlgebraBuild& b, const IsoOptions& opt = {});

/// Set algebra over the doubled base with S_tau+ H_k and doubled B atoms;
/// checked for +, -, C, P* vs P, and expected to fail on D.
IsoWitness reduct_rep_diagfree(const AtomAlgebra& ap, const SetAlgebraBuild& b, const IsoOptions& opt = {});

struct MergeResult {
  AtomAlgebra c;
  std::vector<Bitset> members;  // A_p atoms of each C atom
  IsoWitness iso;
  CheckReport report;  // closure checks plus the iso report
};

/// Merges S_tau+ Q_k with S_tau+ Q_m; requires m = p-2-k, throws
/// UnsupportedCase otherwise. D uses S_tau+ K_i with the order-preserving
/// bijection from the merged classes.
MergeResult merge_construction(const AtomAlgebra& ap, const SetAlgebraBuild& b, int k, int m,
                               const IsoOptions& opt = {});

/// Serialized atom tables; concrete atoms are written as tuple lists when given.
json algebra_to_json(const AtomAlgebra& a, const std::vector<ConcreteRelation>* concrete = nullptr);
AtomAlgebra algebra_from_json(const json& j);

}  // namespace pealab
