#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pealab/field_geometry.hpp"
#include "pealab/relation.hpp"
#include "pealab/report.hpp"

namespace pealab {

/// The class-0 lines of the plane, i.e. the equivalence blocks of R_0.
/// Vertices inside a block are numbered by sorted point index.
struct R0Blocks {
  int p = 0;
  std::vector<std::vector<std::size_t>> lines;
  std::vector<std::size_t> line_of;
  std::vector<std::size_t> position;

  explicit R0Blocks(const AffinePlane& plane);

  bool related(std::size_t a, std::size_t b) const { return a != b && line_of[a] == line_of[b]; }
  /// i with (a,b) in S_i = {(v_k, v_{k+i+1})}; requires related(a,b).
  int cyclic_class(std::size_t a, std::size_t b) const;
};

/// {s in U^alpha : (s_0,s_1) in r and s_{j+1} in U_j for 1 <= j <= alpha-2}.
ConcreteRelation times_T(const BaseSet& base, const BinaryRelation& r);

/// T = U_1 x ... x U_{alpha-2}, numbered in mixed radix over the block labels,
/// split into T_i = { t : sum of labels = i mod p-1 }.
struct BlockPartition {
  int p = 0;
  int alpha = 0;
  std::vector<std::size_t> part_of;
  std::vector<std::vector<std::size_t>> parts;

  std::size_t tuple_count() const { return part_of.size(); }
  std::vector<std::size_t> labels(std::size_t t) const;
  std::size_t index(std::span<const std::size_t> labels) const;
  /// T-index of a full tuple s in R_0 x T (coordinates 2..alpha-1).
  std::size_t index_of_tail(const BaseSet& base, std::span<const std::size_t> s) const;
};

BlockPartition block_partition(const BaseSet& base);

/// Checks cover, disjointness and T within C_j(T_i) for all parts and coordinates.
CheckReport verify_block_partition(const BlockPartition& bp);

enum class FamilyKind { Q, K, HCylfree, HDiagfree };

std::string to_string(FamilyKind kind);

struct RelationFamily {
  FamilyKind kind = FamilyKind::Q;
  int p = 0;
  int alpha = 0;
  std::vector<ConcreteRelation> parts;
};

/// The matchings E_k between the cyclic classes S_0..S_{p-2} of a block and
/// the labels 0..p-2. matching[k][i] is the label l with (S_i, z_l) in E_k.
///
/// For k >= (p-1)/2 the class is taken from E_{p-2-k} with the S index
/// reflected: (S_i, z_l) in E_k iff (S_{p-2-i}, z_l) in E_{p-2-k}.
std::vector<std::vector<std::size_t>> q_matchings(int p);

/// Q_k over any alpha: s in Q_k iff (s_0,s_1) lies in S_i and (S_i, z_l) in
/// E_k, where l indexes the part T_l holding the tail of s.
RelationFamily lift_Q(const BaseSet& base, const R0Blocks& blocks, const std::vector<std::vector<std::size_t>>& matchings,
                      const BlockPartition& tp);

RelationFamily build_Q(const BaseSet& base, const AffinePlane& plane);
RelationFamily build_Q_alpha3(const AffinePlane& plane);

/// Walecki's 1-factorization of K_m: m-1 perfect matchings.
std::vector<std::vector<std::pair<int, int>>> walecki_coloring(int m);

/// p-2 symmetric big parts of R_0 x T.
RelationFamily build_K(const BaseSet& base, const AffinePlane& plane);

/// p-1 symmetric parts of R_0 x T built from stars around w_0.
RelationFamily build_H_cylfree(const BaseSet& base, const AffinePlane& plane);

/// p-1 symmetric big parts of F(R_0 x T) over the doubled base.
///
/// For i < (p-1)/2 the lift of K_i = Q_i u Q_{p-2-i} is split by the parity of
/// the number of copied coordinates: H_i gets even parity, H_{p-2-i} odd.
RelationFamily build_H_diagfree(const RelationFamily& q, const Doubling& doubling);

/// Kind-specific invariants: partition of target, part count, bigness,
/// and the P_01 action.
CheckReport verify_family(const RelationFamily& fam, const ConcreteRelation& target);

}  // namespace pealab
