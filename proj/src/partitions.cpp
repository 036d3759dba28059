#include "pealab/partitions.hpp"

#include <algorithm>

#include "pealab/error.hpp"

namespace pealab {

R0Blocks::R0Blocks(const AffinePlane& plane) : p(plane.p), lines(plane.classes.at(0)) {
  line_of.assign(plane.point_count(), 0);
  position.assign(plane.point_count(), 0);
  for (std::size_t j = 0; j < lines.size(); ++j)
    for (std::size_t k = 0; k < lines[j].size(); ++k) {
      line_of[lines[j][k]] = j;
      position[lines[j][k]] = k;
    }
}

int R0Blocks::cyclic_class(std::size_t a, std::size_t b) const {
  if (!related(a, b)) throw InvalidArgument("points not related by R_0");
  const int d = static_cast<int>(position[b]) - static_cast<int>(position[a]);
  return ((d - 1) % p + p) % p;
}

ConcreteRelation times_T(const BaseSet& base, const BinaryRelation& r) {
  const std::size_t p2 = static_cast<std::size_t>(base.p) * base.p;
  return ConcreteRelation::from_predicate(base.space(), [&](std::span<const std::size_t> s) {
    if (s[0] >= p2 || s[1] >= p2 || !r.contains(s[0], s[1])) return false;
    for (std::size_t j = 2; j < s.size(); ++j)
      if (base.block_of(s[j]) != j - 1) return false;
    return true;
  });
}

std::vector<std::size_t> BlockPartition::labels(std::size_t t) const {
  const std::size_t radix = static_cast<std::size_t>(p - 1);
  std::vector<std::size_t> out(static_cast<std::size_t>(alpha - 2));
  for (std::size_t k = out.size(); k-- > 0;) {
    out[k] = t % radix;
    t /= radix;
  }
  return out;
}

std::size_t BlockPartition::index(std::span<const std::size_t> lbl) const {
  std::size_t t = 0;
  for (auto l : lbl) t = t * static_cast<std::size_t>(p - 1) + l;
  return t;
}

std::size_t BlockPartition::index_of_tail(const BaseSet& base, std::span<const std::size_t> s) const {
  std::size_t t = 0;
  for (std::size_t j = 2; j < s.size(); ++j) t = t * static_cast<std::size_t>(p - 1) + base.label(s[j]);
  return t;
}

BlockPartition block_partition(const BaseSet& base) {
  BlockPartition bp;
  bp.p = base.p;
  bp.alpha = base.alpha;
  const std::size_t radix = static_cast<std::size_t>(base.p - 1);
  std::size_t count = 1;
  for (int k = 0; k < base.alpha - 2; ++k) count *= radix;
  bp.part_of.resize(count);
  bp.parts.assign(radix, {});
  for (std::size_t t = 0; t < count; ++t) {
    std::size_t sum = 0;
    for (auto l : bp.labels(t)) sum += l;
    bp.part_of[t] = sum % radix;
    bp.parts[sum % radix].push_back(t);
  }
  return bp;
}

CheckReport verify_block_partition(const BlockPartition& bp) {
  CheckReport rep;
  rep.command = "block_partition";
  rep.parameters = {{"p", bp.p}, {"alpha", bp.alpha}};
  std::vector<int> hits(bp.tuple_count(), 0);
  for (const auto& part : bp.parts)
    for (auto t : part) ++hits[t];
  json bad = nullptr;
  for (std::size_t t = 0; t < hits.size() && bad.is_null(); ++t)
    if (hits[t] != 1) bad = {{"t", bp.labels(t)}, {"hits", hits[t]}};
  rep.add("partition", bad.is_null(), bad);
  rep.add("part_count", bp.parts.size() == static_cast<std::size_t>(bp.p - 1), nullptr, {{"parts", bp.parts.size()}});

  // T subset C_j(T_i): every t has, for every coordinate j, a j-variant in T_i.
  json miss = nullptr;
  const std::size_t radix = static_cast<std::size_t>(bp.p - 1);
  for (std::size_t i = 0; i < bp.parts.size() && miss.is_null(); ++i)
    for (std::size_t t = 0; t < bp.tuple_count() && miss.is_null(); ++t)
      for (int j = 0; j < bp.alpha - 2 && miss.is_null(); ++j) {
        auto lbl = bp.labels(t);
        bool found = false;
        for (std::size_t v = 0; v < radix && !found; ++v) {
          lbl[static_cast<std::size_t>(j)] = v;
          found = bp.part_of[bp.index(lbl)] == i;
        }
        if (!found) miss = {{"part", i}, {"t", bp.labels(t)}, {"coord", j}};
      }
  rep.add("cylinder_big", miss.is_null(), miss);
  return rep;
}

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Q: return "Q";
    case FamilyKind::K: return "K";
    case FamilyKind::HCylfree: return "H_cylfree";
    case FamilyKind::HDiagfree: return "H_diagfree";
  }
  return "?";
}

std::vector<std::vector<std::size_t>> q_matchings(int p) {
  if (p < 3 || p % 2 == 0) throw InvalidArgument("odd p >= 3 required");
  const std::size_t n = static_cast<std::size_t>(p - 1);
  const std::size_t h = n / 2;
  std::vector<std::vector<std::size_t>> e(n, std::vector<std::size_t>(n));
  for (std::size_t k = 0; k < h; ++k)
    for (std::size_t i = 0; i < h; ++i) {
      e[k][i] = (i + k) % h;
      e[k][h + i] = h + (i + k) % h;
    }
  for (std::size_t k = h; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) e[k][i] = e[n - 1 - k][n - 1 - i];
  return e;
}

RelationFamily lift_Q(const BaseSet& base, const R0Blocks& blocks, const std::vector<std::vector<std::size_t>>& matchings,
                      const BlockPartition& tp) {
  const std::size_t n = static_cast<std::size_t>(base.p - 1);
  // kind[i][l] = k with (S_i, z_l) in E_k
  std::vector<std::vector<std::size_t>> kind(n, std::vector<std::size_t>(n, n));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) kind[i][matchings[k][i]] = k;

  RelationFamily fam;
  fam.kind = FamilyKind::Q;
  fam.p = base.p;
  fam.alpha = base.alpha;
  const Space space = base.space();
  fam.parts.assign(n, ConcreteRelation(space));
  const std::size_t p2 = static_cast<std::size_t>(base.p) * base.p;
  for (std::size_t t = 0; t < space.tuple_count(); ++t) {
    const auto s = space.decode(t);
    if (s[0] >= p2 || s[1] >= p2 || !blocks.related(s[0], s[1])) continue;
    bool in_T = true;
    for (std::size_t j = 2; j < s.size() && in_T; ++j) in_T = base.block_of(s[j]) == j - 1;
    if (!in_T) continue;
    const auto i = static_cast<std::size_t>(blocks.cyclic_class(s[0], s[1]));
    const std::size_t l = tp.part_of[tp.index_of_tail(base, s)];
    fam.parts[kind[i][l]].insert(t);
  }
  return fam;
}

RelationFamily build_Q(const BaseSet& base, const AffinePlane& plane) {
  return lift_Q(base, R0Blocks(plane), q_matchings(base.p), block_partition(base));
}

RelationFamily build_Q_alpha3(const AffinePlane& plane) { return build_Q(BaseSet(plane.p, 3), plane); }

std::vector<std::vector<std::pair<int, int>>> walecki_coloring(int m) {
  if (m < 2) throw InvalidArgument("order must be >= 2");
  if (m % 2) throw OddOrder(m);
  const int r = m - 1;
  auto mod = [r](int x) { return ((x % r) + r) % r; };
  std::vector<std::vector<std::pair<int, int>>> classes(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) {
    auto& cls = classes[static_cast<std::size_t>(i)];
    for (int j = 1; j <= (m - 2) / 2; ++j) cls.emplace_back(mod(i + j), mod(i - j));
    cls.emplace_back(m - 1, i);
  }
  return classes;
}

namespace {

void check_odd_prime(int p) {
  if (p < 3 || p % 2 == 0) throw InvalidArgument("odd p >= 3 required");
}

// Per-block vertex relation (by positions) lifted to R_0 x T with a T-part filter.
template <typename Pred>
void add_block_pattern(ConcreteRelation& out, const BaseSet& base, const R0Blocks& blocks, const BlockPartition& tp,
                       Pred&& pred) {
  const Space& space = out.space();
  const std::size_t p2 = static_cast<std::size_t>(base.p) * base.p;
  for (std::size_t t = 0; t < space.tuple_count(); ++t) {
    const auto s = space.decode(t);
    if (s[0] >= p2 || s[1] >= p2 || !blocks.related(s[0], s[1])) continue;
    bool in_T = true;
    for (std::size_t j = 2; j < s.size() && in_T; ++j) in_T = base.block_of(s[j]) == j - 1;
    if (!in_T) continue;
    if (pred(blocks.position[s[0]], blocks.position[s[1]], tp.part_of[tp.index_of_tail(base, s)])) out.insert(t);
  }
}

}  // namespace

RelationFamily build_K(const BaseSet& base, const AffinePlane& plane) {
  const int p = base.p;
  check_odd_prime(p);
  const R0Blocks blocks(plane);
  const BlockPartition tp = block_partition(base);
  const std::size_t parts = static_cast<std::size_t>(p - 2);

  // rho[a][b] = index of the rho class holding the vertex pair (w_a, w_b).
  const std::size_t w = static_cast<std::size_t>(p);
  std::vector<std::vector<std::size_t>> rho(w, std::vector<std::size_t>(w, parts));
  const auto gamma = walecki_coloring(p - 1);
  for (std::size_t c = 0; c < gamma.size(); ++c)
    for (auto [a, b] : gamma[c]) {
      rho[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = c;
      rho[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = c;
    }
  const std::size_t apex = w - 1;
  for (std::size_t i = 0; i + 1 < w; ++i) {
    const std::size_t c = std::min(i, parts - 1);
    rho[apex][i] = c;
    rho[i][apex] = c;
  }
  // J_k = T_k for k < p-3, J_{p-3} = T_{p-3} u T_{p-2}
  auto j_of = [parts](std::size_t l) { return std::min(l, parts - 1); };

  RelationFamily fam;
  fam.kind = FamilyKind::K;
  fam.p = p;
  fam.alpha = base.alpha;
  fam.parts.assign(parts, ConcreteRelation(base.space()));
  for (std::size_t i = 0; i < parts; ++i)
    add_block_pattern(fam.parts[i], base, blocks, tp, [&](std::size_t a, std::size_t b, std::size_t l) {
      return (rho[a][b] + j_of(l)) % parts == i;
    });
  return fam;
}

RelationFamily build_H_cylfree(const BaseSet& base, const AffinePlane& plane) {
  const int p = base.p;
  check_odd_prime(p);
  const R0Blocks blocks(plane);
  const BlockPartition tp = block_partition(base);
  const std::size_t parts = static_cast<std::size_t>(p - 1);
  auto cls = [parts](std::size_t a, std::size_t b) {
    if (a == 0) return b - 1;
    if (b == 0) return a - 1;
    return parts - 1;
  };
  RelationFamily fam;
  fam.kind = FamilyKind::HCylfree;
  fam.p = p;
  fam.alpha = base.alpha;
  fam.parts.assign(parts, ConcreteRelation(base.space()));
  for (std::size_t i = 0; i < parts; ++i)
    add_block_pattern(fam.parts[i], base, blocks, tp,
                      [&](std::size_t a, std::size_t b, std::size_t) { return std::min(cls(a, b), parts - 1) == i; });
  return fam;
}

RelationFamily build_H_diagfree(const RelationFamily& q, const Doubling& doubling) {
  if (q.kind != FamilyKind::Q) throw InvalidArgument("Q family required");
  check_odd_prime(q.p);
  const std::size_t n = static_cast<std::size_t>(q.p - 1);
  RelationFamily fam;
  fam.kind = FamilyKind::HDiagfree;
  fam.p = q.p;
  fam.alpha = q.alpha;
  const Space dst = doubling.doubled_space(q.alpha);
  fam.parts.assign(n, ConcreteRelation(dst));
  for (std::size_t i = 0; i < n / 2; ++i) {
    const ConcreteRelation lifted = doubling.lift(q.parts[i] | q.parts[n - 1 - i]);
    lifted.bits().for_each([&](std::size_t t) {
      std::size_t copies = 0;
      for (int c = 0; c < dst.alpha; ++c) copies += doubling.is_copy(dst.coord(t, c)) ? 1 : 0;
      fam.parts[copies % 2 == 0 ? i : n - 1 - i].insert(t);
    });
  }
  return fam;
}

CheckReport verify_family(const RelationFamily& fam, const ConcreteRelation& target) {
  CheckReport rep;
  rep.command = "verify_family";
  rep.parameters = {{"kind", to_string(fam.kind)}, {"p", fam.p}, {"alpha", fam.alpha}};
  const Space& space = target.space();
  const std::size_t n = fam.parts.size();

  std::size_t expected = static_cast<std::size_t>(fam.kind == FamilyKind::K ? fam.p - 2 : fam.p - 1);
  rep.add("part_count", n == expected, n == expected ? json(nullptr) : json{{"parts", n}, {"expected", expected}});

  json w = nullptr;
  for (std::size_t i = 0; i < n && w.is_null(); ++i)
    if (fam.parts[i].empty()) w = {{"part", i}};
  rep.add("nonempty", w.is_null(), w);

  w = nullptr;
  for (std::size_t i = 0; i < n && w.is_null(); ++i)
    for (std::size_t j = i + 1; j < n && w.is_null(); ++j)
      if (fam.parts[i].intersects(fam.parts[j])) {
        const auto t = (fam.parts[i] & fam.parts[j]).bits().first();
        w = {{"parts", {i, j}}, {"tuple", tuple_json(space, t)}};
      }
  rep.add("disjoint", w.is_null(), w);

  ConcreteRelation uni(space);
  for (const auto& part : fam.parts) uni |= part;
  const auto diff = first_difference(uni, target);
  rep.add("union", diff == space.tuple_count(),
          diff == space.tuple_count() ? json(nullptr) : json{{"tuple", tuple_json(space, diff)}});

  if (fam.kind != FamilyKind::HCylfree) {
    w = nullptr;
    for (int i = 0; i < space.alpha && w.is_null(); ++i) {
      const auto want = cyl(i, target);
      for (std::size_t k = 0; k < n && w.is_null(); ++k) {
        const auto d = first_difference(cyl(i, fam.parts[k]), want);
        if (d != space.tuple_count()) w = {{"part", k}, {"coord", i}, {"tuple", tuple_json(space, d)}};
      }
    }
    rep.add("big", w.is_null(), w);
  }

  w = nullptr;
  for (std::size_t k = 0; k < n && w.is_null(); ++k) {
    const std::size_t partner = fam.kind == FamilyKind::Q ? n - 1 - k : k;
    const auto d = first_difference(transp(0, 1, fam.parts[k]), fam.parts[partner]);
    if (d != space.tuple_count()) w = {{"part", k}, {"expected_part", partner}, {"tuple", tuple_json(space, d)}};
  }
  rep.add(fam.kind == FamilyKind::Q ? "transposition_pairs" : "symmetric", w.is_null(), w);
  return rep;
}

}  // namespace pealab
