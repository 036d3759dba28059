#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pealab/bitset.hpp"
#include "pealab/report.hpp"

namespace pealab {

bool is_prime(long long n);

/// The prime field GF(p). Elements are the canonical representatives 0..p-1.
class PrimeField {
public:
  /// Throws NotPrime for composite p and InvalidArgument for p < 3.
  explicit PrimeField(int p);

  int order() const { return p_; }
  int add(int a, int b) const { return (a + b) % p_; }
  int sub(int a, int b) const { return ((a - b) % p_ + p_) % p_; }
  int neg(int a) const { return (p_ - a) % p_; }
  int mul(int a, int b) const { return static_cast<int>((static_cast<long long>(a) * b) % p_); }
  int pow(int a, long long e) const;
  /// Multiplicative inverse; throws InvalidArgument for 0.
  int inv(int a) const;

private:
  int p_;
};

/// A binary relation on {0..n-1}, stored as an n*n adjacency bitset.
class BinaryRelation {
public:
  BinaryRelation() = default;
  explicit BinaryRelation(std::size_t n) : n_(n), bits_(n * n) {}

  std::size_t universe() const { return n_; }
  bool contains(std::size_t a, std::size_t b) const { return bits_.test(a * n_ + b); }
  void insert(std::size_t a, std::size_t b) { bits_.set(a * n_ + b); }
  void erase(std::size_t a, std::size_t b) { bits_.reset(a * n_ + b); }
  std::size_t size() const { return bits_.count(); }
  const Bitset& bits() const { return bits_; }

  static BinaryRelation identity(std::size_t n);
  static BinaryRelation full(std::size_t n);

  BinaryRelation converse() const;
  /// Composition in function order: (a,b) is in R.compose(S) iff (a,c) in S and (c,b) in R for some c.
  BinaryRelation compose(const BinaryRelation& s) const;
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;

  BinaryRelation& operator|=(const BinaryRelation& o) {
    bits_ |= o.bits_;
    return *this;
  }
  BinaryRelation& operator&=(const BinaryRelation& o) {
    bits_ &= o.bits_;
    return *this;
  }
  BinaryRelation& subtract(const BinaryRelation& o) {
    bits_.subtract(o.bits_);
    return *this;
  }
  friend BinaryRelation operator|(BinaryRelation a, const BinaryRelation& b) { return a |= b; }
  friend BinaryRelation operator&(BinaryRelation a, const BinaryRelation& b) { return a &= b; }
  friend bool operator==(const BinaryRelation&, const BinaryRelation&) = default;

  /// Equivalence classes, assuming the relation is an equivalence; each class sorted, classes ordered by minimum.
  std::vector<std::vector<std::size_t>> classes() const;

private:
  std::size_t n_ = 0;
  Bitset bits_;
};

/// AG(2,p): p^2 points (a,b) numbered a*p+b, and p+1 parallel classes of p lines.
///
/// Classes 0..p-1 are the lines of slope i (b = i*a + c, line index c);
/// class p is the vertical pencil (a = c).
struct AffinePlane {
  PrimeField field;
  int p = 0;
  /// classes[i][j] = sorted point indices of line L_{i,j}.
  std::vector<std::vector<std::vector<std::size_t>>> classes;

  std::size_t point_count() const { return static_cast<std::size_t>(p) * p; }
  std::size_t point_index(int a, int b) const { return static_cast<std::size_t>(a) * p + b; }
  std::pair<int, int> coordinates(std::size_t idx) const { return {static_cast<int>(idx) / p, static_cast<int>(idx) % p}; }
};

AffinePlane build_plane(const PrimeField& f);

/// The p+1 symmetric irreflexive relations R_i on the points of AG(2,p).
struct LyndonRelations {
  int p = 0;
  std::vector<BinaryRelation> R;

  std::size_t point_count() const { return R.empty() ? 0 : R.front().universe(); }
  /// E_i = R_i united with the identity.
  BinaryRelation equivalence(std::size_t i) const;
};

LyndonRelations lyndon_relations(const AffinePlane& plane);

/// Checks disjointness, cover, symmetry, irreflexivity, the E_i being
/// equivalences, and R_i o R_j = U0^2 - (R_i u R_j u Id) for i != j.
CheckReport verify_lyndon(const LyndonRelations& rels);

}  // namespace pealab
