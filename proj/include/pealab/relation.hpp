#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "pealab/bitset.hpp"
#include "pealab/perm.hpp"
#include "pealab/report.hpp"

namespace pealab {

/// The tuple space U^alpha over a base {0..n-1}.
///
/// Tuples are numbered in mixed radix with coordinate 0 most significant.
struct Space {
  std::size_t n = 0;
  int alpha = 0;

  Space() = default;
  Space(std::size_t n, int alpha);

  std::size_t tuple_count() const { return count_; }
  std::size_t stride(int coord) const { return strides_[static_cast<std::size_t>(coord)]; }
  std::size_t coord(std::size_t tuple, int i) const { return (tuple / stride(i)) % n; }
  std::vector<std::size_t> decode(std::size_t tuple) const;
  std::size_t encode(std::span<const std::size_t> coords) const;

  friend bool operator==(const Space& a, const Space& b) { return a.n == b.n && a.alpha == b.alpha; }

private:
  std::size_t count_ = 0;
  std::vector<std::size_t> strides_;
};

/// The base set U = U_0 u U_1 u ... u U_{alpha-2} with |U_0| = p^2 and
/// |U_k| = p-1 for k >= 1. U_0 holds the points of AG(2,p) in their plane
/// numbering; U_k follows as consecutive blocks.
struct BaseSet {
  int p = 0;
  int alpha = 0;

  BaseSet(int p, int alpha);

  std::size_t size() const { return size_; }
  std::size_t block_count() const { return static_cast<std::size_t>(alpha - 1); }
  std::size_t block_of(std::size_t u) const;
  /// Position of u within its block (f(u) for u outside U_0).
  std::size_t label(std::size_t u) const;
  std::size_t element(std::size_t block, std::size_t label) const;
  std::size_t block_size(std::size_t block) const;
  Space space() const { return Space(size_, alpha); }

private:
  std::size_t size_ = 0;
};

/// A subset of U^alpha.
class ConcreteRelation {
public:
  ConcreteRelation() = default;
  explicit ConcreteRelation(const Space& space) : space_(space), bits_(space.tuple_count()) {}
  ConcreteRelation(const Space& space, Bitset bits);

  static ConcreteRelation empty(const Space& s) { return ConcreteRelation(s); }
  static ConcreteRelation unit(const Space& s);
  static ConcreteRelation from_predicate(const Space& s, const std::function<bool(std::span<const std::size_t>)>& pred);

  const Space& space() const { return space_; }
  const Bitset& bits() const { return bits_; }
  Bitset& bits() { return bits_; }

  bool contains(std::size_t tuple) const { return bits_.test(tuple); }
  bool contains(std::span<const std::size_t> coords) const { return bits_.test(space_.encode(coords)); }
  void insert(std::size_t tuple) { bits_.set(tuple); }
  void insert(std::span<const std::size_t> coords) { bits_.set(space_.encode(coords)); }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  bool is_subset_of(const ConcreteRelation& o) const { return bits_.is_subset_of(o.bits_); }
  bool intersects(const ConcreteRelation& o) const { return bits_.intersects(o.bits_); }

  ConcreteRelation complement() const { return ConcreteRelation(space_, bits_.complement()); }
  ConcreteRelation& operator|=(const ConcreteRelation& o) {
    bits_ |= o.bits_;
    return *this;
  }
  ConcreteRelation& operator&=(const ConcreteRelation& o) {
    bits_ &= o.bits_;
    return *this;
  }
  ConcreteRelation& subtract(const ConcreteRelation& o) {
    bits_.subtract(o.bits_);
    return *this;
  }
  friend ConcreteRelation operator|(ConcreteRelation a, const ConcreteRelation& b) { return a |= b; }
  friend ConcreteRelation operator&(ConcreteRelation a, const ConcreteRelation& b) { return a &= b; }
  friend ConcreteRelation operator-(ConcreteRelation a, const ConcreteRelation& b) { return a.subtract(b); }
  friend bool operator==(const ConcreteRelation& a, const ConcreteRelation& b) {
    return a.space_ == b.space_ && a.bits_ == b.bits_;
  }

private:
  Space space_;
  Bitset bits_;
};

struct ConcreteRelationHash {
  std::size_t operator()(const ConcreteRelation& r) const { return r.bits().hash(); }
};

/// C_i(X): translate X along axis i.
ConcreteRelation cyl(int i, const ConcreteRelation& x);
/// D_ij over the given space.
ConcreteRelation diag(const Space& s, int i, int j);
/// P_ij(X): swap coordinates i and j of every tuple.
ConcreteRelation transp(int i, int j, const ConcreteRelation& x);
/// S_tau(X) = { s : s o tau in X }.
ConcreteRelation s_tau(const Perm& tau, const ConcreteRelation& x);

/// Coordinates of a tuple as JSON, for witnesses.
json tuple_json(const Space& s, std::size_t tuple);
/// Index of the first tuple in the symmetric difference, or tuple_count() when equal.
std::size_t first_difference(const ConcreteRelation& a, const ConcreteRelation& b);

/// The doubled base U' = U u f(U), with f(u) = u + |U|.
struct Doubling {
  std::size_t base_size = 0;

  std::size_t image(std::size_t u) const { return u + base_size; }
  std::size_t origin(std::size_t v) const { return v < base_size ? v : v - base_size; }
  bool is_copy(std::size_t v) const { return v >= base_size; }
  Space doubled_space(int alpha) const { return Space(2 * base_size, alpha); }

  /// F(a) = union of s_0' x ... x s_{alpha-1}' over s in a, where u' = {u, f(u)}.
  ConcreteRelation lift(const ConcreteRelation& a) const;
};

}  // namespace pealab
