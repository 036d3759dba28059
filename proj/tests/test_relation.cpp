#include <doctest.h>

#include <random>

#include "pealab/error.hpp"
#include "pealab/field_geometry.hpp"
#include "pealab/partitions.hpp"
#include "pealab/relation.hpp"

using namespace pealab;

namespace {

ConcreteRelation random_relation(const Space& s, std::mt19937_64& rng) {
  ConcreteRelation r(s);
  std::bernoulli_distribution coin(0.3);
  for (std::size_t t = 0; t < s.tuple_count(); ++t)
    if (coin(rng)) r.insert(t);
  return r;
}

// Oracle straight from the definition of C_i.
ConcreteRelation cyl_oracle(int i, const ConcreteRelation& x) {
  const Space& s = x.space();
  ConcreteRelation out(s);
  for (std::size_t t = 0; t < s.tuple_count(); ++t) {
    auto c = s.decode(t);
    for (std::size_t v = 0; v < s.n; ++v) {
      c[static_cast<std::size_t>(i)] = v;
      if (x.contains(c)) {
        out.insert(t);
        break;
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("space encoding round-trips with coordinate 0 most significant") {
  const Space s(4, 3);
  CHECK(s.tuple_count() == 64);
  const std::vector<std::size_t> c{1, 2, 3};
  CHECK(s.encode(c) == 1 * 16 + 2 * 4 + 3);
  for (std::size_t t = 0; t < s.tuple_count(); ++t) CHECK(s.encode(s.decode(t)) == t);
  CHECK(s.coord(27, 0) == 1);
}

TEST_CASE("base set blocks") {
  const BaseSet b(3, 4);
  CHECK(b.size() == 9 + 2 * 2);
  CHECK(b.block_of(8) == 0);
  CHECK(b.block_of(9) == 1);
  CHECK(b.block_of(11) == 2);
  CHECK(b.label(12) == 1);
  CHECK(b.element(2, 1) == 12);
  CHECK_THROWS_AS(BaseSet(3, 2), InvalidArgument);
}

TEST_CASE("operation examples") {
  const Space s(3, 3);
  const auto d01 = diag(s, 0, 1);
  CHECK(transp(0, 1, d01) == d01);
  std::mt19937_64 rng(7);
  const auto x = random_relation(s, rng);
  CHECK(s_tau(Perm::identity(3), x) == x);
  CHECK_THROWS_AS(cyl(3, x), IndexOutOfRange);
  CHECK_THROWS_AS(diag(s, 0, 5), IndexOutOfRange);
}

TEST_CASE("cyl of R_0 x U_1 along coordinate 2") {
  const BaseSet base(3, 3);
  const auto rels = lyndon_relations(build_plane(PrimeField(3)));
  const auto r0t = times_T(base, rels.R[0]);
  CHECK(r0t.size() == 36);
  const auto expect = ConcreteRelation::from_predicate(
      base.space(), [&](std::span<const std::size_t> c) { return c[0] < 9 && c[1] < 9 && rels.R[0].contains(c[0], c[1]); });
  CHECK(cyl(2, r0t) == expect);
}

TEST_CASE("cyl agrees with the definition") {
  std::mt19937_64 rng(11);
  for (int alpha : {3, 4}) {
    const Space s(3, alpha);
    for (int rep = 0; rep < 3; ++rep) {
      const auto x = random_relation(s, rng);
      for (int i = 0; i < alpha; ++i) CHECK(cyl(i, x) == cyl_oracle(i, x));
    }
  }
}

TEST_CASE("S_[i,j] is P_ij and S_tau S_sigma = S_{tau o sigma}") {
  std::mt19937_64 rng(3);
  for (int alpha : {3, 4}) {
    const Space s(3, alpha);
    const auto x = random_relation(s, rng);
    const auto perms = all_perms(alpha);
    for (const auto& tau : perms)
      for (const auto& sigma : perms) CHECK(s_tau(tau, s_tau(sigma, x)) == s_tau(tau * sigma, x));
    for (int i = 0; i < alpha; ++i)
      for (int j = 0; j < alpha; ++j) {
        const auto px = transp(i, j, x);
        for (std::size_t t = 0; t < s.tuple_count(); ++t) {
          auto c = s.decode(t);
          std::swap(c[static_cast<std::size_t>(i)], c[static_cast<std::size_t>(j)]);
          CHECK(px.contains(t) == x.contains(c));
        }
      }
  }
}

TEST_CASE("boolean laws") {
  std::mt19937_64 rng(5);
  const Space s(3, 3);
  const auto a = random_relation(s, rng), b = random_relation(s, rng);
  CHECK((a | b).complement() == (a.complement() & b.complement()));
  CHECK((a & b).complement() == (a.complement() | b.complement()));
  CHECK(a.complement().complement() == a);
  CHECK((a - b) == (a & b.complement()));
}

TEST_CASE("doubling respects cylindrifications but not diagonals") {
  std::mt19937_64 rng(9);
  const Space s(3, 3);
  const Doubling dbl{3};
  const auto a = random_relation(s, rng);
  for (int i = 0; i < 3; ++i) CHECK(dbl.lift(cyl(i, a)) == cyl(i, dbl.lift(a)));
  const Space ds = dbl.doubled_space(3);
  const auto fd = dbl.lift(diag(s, 0, 1));
  const std::vector<std::size_t> w{0, dbl.image(0), 0};
  CHECK(fd.contains(w));
  CHECK_FALSE(diag(ds, 0, 1).contains(w));
}
