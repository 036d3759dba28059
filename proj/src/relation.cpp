#include "pealab/relation.hpp"

#include <string>

#include "pealab/error.hpp"

namespace pealab {

Space::Space(std::size_t n, int alpha) : n(n), alpha(alpha) {
  if (alpha < 1) throw InvalidArgument("dimension must be positive");
  strides_.assign(static_cast<std::size_t>(alpha), 1);
  for (int i = alpha - 2; i >= 0; --i) strides_[static_cast<std::size_t>(i)] = strides_[static_cast<std::size_t>(i) + 1] * n;
  count_ = strides_[0] * n;
}

std::vector<std::size_t> Space::decode(std::size_t tuple) const {
  std::vector<std::size_t> out(static_cast<std::size_t>(alpha));
  for (int i = alpha - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = tuple % n;
    tuple /= n;
  }
  return out;
}

std::size_t Space::encode(std::span<const std::size_t> coords) const {
  std::size_t t = 0;
  for (auto c : coords) t = t * n + c;
  return t;
}

BaseSet::BaseSet(int p, int alpha) : p(p), alpha(alpha) {
  if (alpha < 3) throw InvalidArgument("dimension alpha >= 3 required, got " + std::to_string(alpha));
  if (p < 3) throw InvalidArgument("p >= 3 required");
  size_ = static_cast<std::size_t>(p) * p + static_cast<std::size_t>(alpha - 2) * (p - 1);
}

std::size_t BaseSet::block_of(std::size_t u) const {
  const std::size_t p2 = static_cast<std::size_t>(p) * p;
  if (u < p2) return 0;
  return 1 + (u - p2) / static_cast<std::size_t>(p - 1);
}

std::size_t BaseSet::label(std::size_t u) const {
  const std::size_t p2 = static_cast<std::size_t>(p) * p;
  if (u < p2) return u;
  return (u - p2) % static_cast<std::size_t>(p - 1);
}

std::size_t BaseSet::element(std::size_t block, std::size_t lbl) const {
  if (block == 0) return lbl;
  return static_cast<std::size_t>(p) * p + (block - 1) * static_cast<std::size_t>(p - 1) + lbl;
}

std::size_t BaseSet::block_size(std::size_t block) const {
  return block == 0 ? static_cast<std::size_t>(p) * p : static_cast<std::size_t>(p - 1);
}

ConcreteRelation::ConcreteRelation(const Space& space, Bitset bits) : space_(space), bits_(std::move(bits)) {
  if (bits_.size() != space_.tuple_count()) throw InvalidArgument("bitset size does not match space");
}

ConcreteRelation ConcreteRelation::unit(const Space& s) {
  ConcreteRelation r(s);
  r.bits_.fill();
  return r;
}

ConcreteRelation ConcreteRelation::from_predicate(const Space& s,
                                                  const std::function<bool(std::span<const std::size_t>)>& pred) {
  ConcreteRelation r(s);
  std::vector<std::size_t> coords(static_cast<std::size_t>(s.alpha), 0);
  for (std::size_t t = 0; t < s.tuple_count(); ++t) {
    if (pred(coords)) r.insert(t);
    for (int i = s.alpha - 1; i >= 0; --i) {
      if (++coords[static_cast<std::size_t>(i)] < s.n) break;
      coords[static_cast<std::size_t>(i)] = 0;
    }
  }
  return r;
}

namespace {

void check_index(const Space& s, int i) {
  if (i < 0 || i >= s.alpha) throw IndexOutOfRange("coordinate " + std::to_string(i) + " out of range");
}

}  // namespace

ConcreteRelation cyl(int i, const ConcreteRelation& x) {
  const Space& s = x.space();
  check_index(s, i);
  ConcreteRelation out(s);
  const std::size_t stride = s.stride(i);
  const std::size_t block = stride * s.n;
  for (std::size_t outer = 0; outer < s.tuple_count(); outer += block)
    for (std::size_t inner = 0; inner < stride; ++inner) {
      const std::size_t base = outer + inner;
      bool hit = false;
      for (std::size_t v = 0; v < s.n && !hit; ++v) hit = x.contains(base + v * stride);
      if (!hit) continue;
      for (std::size_t v = 0; v < s.n; ++v) out.insert(base + v * stride);
    }
  return out;
}

ConcreteRelation diag(const Space& s, int i, int j) {
  check_index(s, i);
  check_index(s, j);
  return ConcreteRelation::from_predicate(
      s, [i, j](std::span<const std::size_t> c) { return c[static_cast<std::size_t>(i)] == c[static_cast<std::size_t>(j)]; });
}

ConcreteRelation transp(int i, int j, const ConcreteRelation& x) {
  check_index(x.space(), i);
  check_index(x.space(), j);
  return s_tau(Perm::transposition(x.space().alpha, i, j), x);
}

ConcreteRelation s_tau(const Perm& tau, const ConcreteRelation& x) {
  const Space& s = x.space();
  if (tau.degree() != s.alpha) throw InvalidArgument("permutation degree does not match dimension");
  ConcreteRelation out(s);
  std::vector<std::size_t> coords(static_cast<std::size_t>(s.alpha), 0);
  std::vector<std::size_t> moved(coords.size());
  for (std::size_t t = 0; t < s.tuple_count(); ++t) {
    for (std::size_t k = 0; k < coords.size(); ++k) moved[k] = coords[static_cast<std::size_t>(tau(static_cast<int>(k)))];
    if (x.contains(s.encode(moved))) out.insert(t);
    for (int i = s.alpha - 1; i >= 0; --i) {
      if (++coords[static_cast<std::size_t>(i)] < s.n) break;
      coords[static_cast<std::size_t>(i)] = 0;
    }
  }
  return out;
}

json tuple_json(const Space& s, std::size_t tuple) { return json(s.decode(tuple)); }

std::size_t first_difference(const ConcreteRelation& a, const ConcreteRelation& b) {
  return (a.bits() ^ b.bits()).first();
}

ConcreteRelation Doubling::lift(const ConcreteRelation& a) const {
  const Space& src = a.space();
  if (src.n != base_size) throw InvalidArgument("doubling base size mismatch");
  Space dst = doubled_space(src.alpha);
  std::vector<std::size_t> orig(static_cast<std::size_t>(src.alpha));
  return ConcreteRelation::from_predicate(dst, [&](std::span<const std::size_t> c) {
    for (std::size_t k = 0; k < c.size(); ++k) orig[k] = origin(c[k]);
    return a.contains(orig);
  });
}

}  // namespace pealab
