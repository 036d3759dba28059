#include <doctest.h>

#include <set>

#include "pealab/error.hpp"
#include "pealab/perm.hpp"

using namespace pealab;

TEST_CASE("perm_word small cases") {
  CHECK(perm_word(Perm::identity(3)).empty());
  const auto w = perm_word(Perm::transposition(3, 0, 1));
  REQUIRE(w.size() == 1);
  CHECK(std::set<int>{w[0].first, w[0].second} == std::set<int>{0, 1});
  const Perm cycle({1, 2, 0});
  const auto cw = perm_word(cycle);
  CHECK(cw.size() == 2);
  CHECK(compose_word(3, cw) == cycle);
}

TEST_CASE("perm_word composes back for every permutation") {
  for (int alpha = 2; alpha <= 5; ++alpha)
    for (const auto& tau : all_perms(alpha)) CHECK(compose_word(alpha, perm_word(tau)) == tau);
}

TEST_CASE("plus normal form") {
  CHECK(Perm::transposition(3, 0, 1).plus() == Perm::identity(3));
  CHECK(Perm::identity(3).plus() == Perm::identity(3));
  CHECK(Perm({2, 0, 1}).plus() == Perm({0, 2, 1}));
  for (const auto& tau : all_perms(4)) {
    const auto tp = tau.plus();
    CHECK(tp.is_plus_normal());
    CHECK((tp == tau || tp == tau * Perm::transposition(4, 0, 1)));
  }
  CHECK(plus_perms(3).size() == 3);
  CHECK(plus_perms(4).size() == 12);
}

TEST_CASE("composition is function order and associative") {
  const Perm a({1, 2, 0}), b({0, 2, 1});
  const auto ab = a * b;
  for (int x = 0; x < 3; ++x) CHECK(ab(x) == a(b(x)));
  const auto perms = all_perms(3);
  for (const auto& x : perms)
    for (const auto& y : perms) {
      CHECK((x * y).inverse() == y.inverse() * x.inverse());
      for (const auto& z : perms) CHECK((x * y) * z == x * (y * z));
    }
}

TEST_CASE("invalid permutations") {
  CHECK_THROWS_AS(Perm({0, 0, 1}), InvalidArgument);
  CHECK_THROWS_AS(Perm({0, 3, 1}), InvalidArgument);
  CHECK_THROWS_AS(Perm::transposition(3, 0, 3), IndexOutOfRange);
}
