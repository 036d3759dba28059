#include <doctest.h>

#include <set>

#include "pealab/error.hpp"
#include "pealab/field_geometry.hpp"
#include "pealab/partitions.hpp"

using namespace pealab;

namespace {

struct Fixture {
  int p;
  AffinePlane plane;
  LyndonRelations rels;
  Fixture(int p) : p(p), plane(build_plane(PrimeField(p))), rels(lyndon_relations(plane)) {}
};

// The k >= (p-1)/2 matchings read literally: (S_i, z_l) in E_k iff (S_i, z_{p-2-l}) in E_{p-2-k}.
std::vector<std::vector<std::size_t>> literal_matchings(int p) {
  auto e = q_matchings(p);
  const std::size_t n = static_cast<std::size_t>(p - 1);
  for (std::size_t k = n / 2; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) e[k][i] = n - 1 - e[n - 1 - k][i];
  return e;
}

}  // namespace

TEST_CASE("block partition") {
  const auto bp3 = block_partition(BaseSet(5, 3));
  REQUIRE(bp3.parts.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(bp3.parts[i] == std::vector<std::size_t>{i});
  const auto bp4 = block_partition(BaseSet(3, 4));
  CHECK(bp4.tuple_count() == 4);
  REQUIRE(bp4.parts.size() == 2);
  CHECK(bp4.parts[0].size() == 2);
  CHECK(bp4.parts[1].size() == 2);
  for (int p : {3, 5, 7})
    for (int alpha : {3, 4, 5}) CHECK(verify_block_partition(block_partition(BaseSet(p, alpha))).passed());
}

TEST_CASE("Q matchings at p = 3") {
  const auto e = q_matchings(3);
  CHECK(e[0] == std::vector<std::size_t>{0, 1});
  CHECK(e[1] == std::vector<std::size_t>{1, 0});
}

TEST_CASE("Q family at p = 3, alpha = 3 against a hand-built oracle") {
  Fixture f(3);
  const auto q = build_Q_alpha3(f.plane);
  REQUIRE(q.parts.size() == 2);
  CHECK(q.parts[0].size() == 18);
  CHECK(q.parts[1].size() == 18);
  const BaseSet base(3, 3);
  CHECK((q.parts[0] | q.parts[1]) == times_T(base, f.rels.R[0]));
  CHECK(transp(0, 1, q.parts[0]) == q.parts[1]);

  // E_0 = {(S_0,z_0),(S_1,z_1)}; S_0 steps +1 along a line, S_1 steps +2.
  ConcreteRelation q0(base.space());
  for (const auto& line : f.plane.classes[0])
    for (std::size_t k = 0; k < 3; ++k) {
      q0.insert(std::vector<std::size_t>{line[k], line[(k + 1) % 3], base.element(1, 0)});
      q0.insert(std::vector<std::size_t>{line[k], line[(k + 2) % 3], base.element(1, 1)});
    }
  CHECK(q.parts[0] == q0);
}

TEST_CASE("Q family invariants") {
  for (int p : {3, 5, 7})
    for (int alpha : {3, 4}) {
      if (p == 7 && alpha == 4) continue;
      Fixture f(p);
      const BaseSet base(p, alpha);
      const auto q = build_Q(base, f.plane);
      const auto rep = verify_family(q, times_T(base, f.rels.R[0]));
      CAPTURE(p);
      CAPTURE(alpha);
      CHECK(rep.passed());
    }
}

TEST_CASE("lift_Q over alpha = 4 covers R_0 x T") {
  Fixture f(3);
  const BaseSet base(3, 4);
  const auto q = build_Q(base, f.plane);
  std::size_t total = 0;
  for (const auto& part : q.parts) total += part.size();
  CHECK(total == 72);
  const auto target = times_T(base, f.rels.R[0]);
  for (int i = 0; i < 4; ++i)
    for (const auto& part : q.parts) CHECK(cyl(i, part) == cyl(i, target));
}

TEST_CASE("literal reading of the complementary matchings breaks P_01 at p = 7") {
  for (int p : {3, 5}) CHECK(literal_matchings(p) == q_matchings(p));
  Fixture f(7);
  const BaseSet base(7, 3);
  const auto lit = lift_Q(base, R0Blocks(f.plane), literal_matchings(7), block_partition(base));
  const auto rep = verify_family(lit, times_T(base, f.rels.R[0]));
  REQUIRE(rep.find("transposition_pairs") != nullptr);
  CHECK_FALSE(rep.find("transposition_pairs")->passed);
  CHECK(rep.find("big")->passed);
}

TEST_CASE("verify_family catches a moved triple") {
  Fixture f(3);
  auto q = build_Q_alpha3(f.plane);
  const auto t = q.parts[0].bits().first();
  q.parts[0].bits().reset(t);
  q.parts[1].insert(t);
  CHECK_FALSE(verify_family(q, times_T(BaseSet(3, 3), f.rels.R[0])).passed());
}

TEST_CASE("walecki coloring") {
  using E = std::pair<int, int>;
  const auto c4 = walecki_coloring(4);
  REQUIRE(c4.size() == 3);
  CHECK(c4[0] == std::vector<E>{{1, 2}, {3, 0}});
  CHECK(c4[1] == std::vector<E>{{2, 0}, {3, 1}});
  CHECK(c4[2] == std::vector<E>{{0, 1}, {3, 2}});
  const auto c2 = walecki_coloring(2);
  REQUIRE(c2.size() == 1);
  CHECK(c2[0] == std::vector<E>{{1, 0}});
  CHECK_THROWS_AS(walecki_coloring(5), OddOrder);

  for (int m : {6, 8, 10}) {
    const auto c = walecki_coloring(m);
    CHECK(c.size() == static_cast<std::size_t>(m - 1));
    std::set<std::pair<int, int>> seen;
    for (const auto& cls : c) {
      CHECK(cls.size() == static_cast<std::size_t>(m / 2));
      std::set<int> verts;
      for (auto [a, b] : cls) {
        CHECK(a != b);
        verts.insert(a);
        verts.insert(b);
        seen.insert({std::min(a, b), std::max(a, b)});
      }
      CHECK(verts.size() == static_cast<std::size_t>(m));
    }
    CHECK(seen.size() == static_cast<std::size_t>(m * (m - 1) / 2));
  }
}

TEST_CASE("K family") {
  for (int p : {3, 5, 7}) {
    Fixture f(p);
    for (int alpha : {3, 4}) {
      if (p == 7 && alpha == 4) continue;
      const BaseSet base(p, alpha);
      const auto k = build_K(base, f.plane);
      const auto target = times_T(base, f.rels.R[0]);
      CAPTURE(p);
      CAPTURE(alpha);
      CHECK(k.parts.size() == static_cast<std::size_t>(p - 2));
      CHECK(verify_family(k, target).passed());
      if (p == 3) CHECK(k.parts[0] == target);
    }
  }
}

TEST_CASE("cylinder-free H family") {
  Fixture f(3);
  const BaseSet base(3, 3);
  const auto h = build_H_cylfree(base, f.plane);
  REQUIRE(h.parts.size() == 2);
  // Per block: S_0 has 2 pairs, S_1 the other 4; times |U_1| = 2, times 3 blocks.
  CHECK(h.parts[0].size() == 12);
  CHECK(h.parts[1].size() == 24);
  for (const auto& line : f.plane.classes[0])
    for (auto z : {base.element(1, 0), base.element(1, 1)}) {
      CHECK(h.parts[0].contains(std::vector<std::size_t>{line[0], line[1], z}));
      CHECK(h.parts[0].contains(std::vector<std::size_t>{line[1], line[0], z}));
      CHECK(h.parts[1].contains(std::vector<std::size_t>{line[0], line[2], z}));
      CHECK(h.parts[1].contains(std::vector<std::size_t>{line[1], line[2], z}));
    }
  for (int p : {3, 5, 7}) {
    Fixture g(p);
    const BaseSet b(p, 3);
    CHECK(verify_family(build_H_cylfree(b, g.plane), times_T(b, g.rels.R[0])).passed());
  }
}

TEST_CASE("diagonal-free H family over the doubled base") {
  for (int p : {3, 5}) {
    Fixture f(p);
    const BaseSet base(p, 3);
    const Doubling dbl{base.size()};
    const auto q = build_Q(base, f.plane);
    const auto h = build_H_diagfree(q, dbl);
    CHECK(h.parts.size() == static_cast<std::size_t>(p - 1));
    CHECK(h.parts[0].space().n == 2 * base.size());
    const auto target = dbl.lift(times_T(base, f.rels.R[0]));
    CHECK(verify_family(h, target).passed());
    for (std::size_t i = 0; i < h.parts.size(); ++i)
      CHECK(((h.parts[i] | h.parts[h.parts.size() - 1 - i]) ==
             dbl.lift(q.parts[i] | q.parts[h.parts.size() - 1 - i])));
  }
}

TEST_CASE("splitting by the copy parity of (s_0, s_1) alone is not big") {
  Fixture f(3);
  const BaseSet base(3, 3);
  const Doubling dbl{base.size()};
  const auto q = build_Q(base, f.plane);
  const auto k0 = dbl.lift(q.parts[0] | q.parts[1]);
  const auto ds = dbl.doubled_space(3);
  const auto cross = ConcreteRelation::from_predicate(
      ds, [&](std::span<const std::size_t> s) { return dbl.is_copy(s[0]) != dbl.is_copy(s[1]); });
  const auto k01 = k0 & cross;
  CHECK(transp(0, 1, k01) == k01);
  CHECK(cyl(0, k01) == cyl(0, k0));
  CHECK_FALSE(cyl(2, k01) == cyl(2, k0));
}
