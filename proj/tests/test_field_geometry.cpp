#include <doctest.h>

#include <set>

#include "pealab/error.hpp"
#include "pealab/field_geometry.hpp"

using namespace pealab;

namespace {

// Independent oracle: lines of AG(2,p) as solution sets of ux + vy = w.
std::set<std::set<std::size_t>> brute_lines(int p) {
  std::set<std::set<std::size_t>> lines;
  for (int u = 0; u < p; ++u)
    for (int v = 0; v < p; ++v) {
      if (!u && !v) continue;
      for (int w = 0; w < p; ++w) {
        std::set<std::size_t> line;
        for (int x = 0; x < p; ++x)
          for (int y = 0; y < p; ++y)
            if ((u * x + v * y) % p == w) line.insert(static_cast<std::size_t>(x * p + y));
        lines.insert(line);
      }
    }
  return lines;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  PrimeField f(5);
  CHECK(f.mul(3, 4) == 2);
  CHECK(f.inv(2) == 3);
  CHECK(f.neg(2) == 3);
  CHECK(f.sub(1, 3) == 3);
  for (int a = 1; a < 5; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
  CHECK_THROWS_AS(PrimeField(9), NotPrime);
  CHECK_THROWS_AS(PrimeField(4), NotPrime);
  CHECK_THROWS_AS(PrimeField(2), InvalidArgument);
  CHECK_THROWS_AS(f.inv(0), InvalidArgument);
}

TEST_CASE("affine plane matches brute-force line enumeration") {
  for (int p : {3, 5, 7}) {
    const auto plane = build_plane(PrimeField(p));
    CHECK(plane.classes.size() == static_cast<std::size_t>(p + 1));
    std::set<std::set<std::size_t>> mine;
    for (const auto& cls : plane.classes) {
      CHECK(cls.size() == static_cast<std::size_t>(p));
      std::vector<int> cover(plane.point_count(), 0);
      for (const auto& line : cls) {
        CHECK(line.size() == static_cast<std::size_t>(p));
        for (auto pt : line) ++cover[pt];
        mine.insert(std::set<std::size_t>(line.begin(), line.end()));
      }
      for (int c : cover) CHECK(c == 1);
    }
    CHECK(mine == brute_lines(p));
  }
}

TEST_CASE("each pair of distinct points lies on exactly one line") {
  const auto plane = build_plane(PrimeField(3));
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < 9; ++a)
    for (std::size_t b = 0; b < 9; ++b) {
      if (a == b) continue;
      int on = 0;
      for (const auto& cls : plane.classes)
        for (const auto& line : cls) {
          std::set<std::size_t> s(line.begin(), line.end());
          on += s.count(a) && s.count(b);
        }
      CHECK(on == 1);
      ++pairs;
    }
  CHECK(pairs == 72);
}

TEST_CASE("slope classes follow b = i*a + c") {
  const auto plane = build_plane(PrimeField(5));
  for (int i = 0; i < 5; ++i)
    for (int c = 0; c < 5; ++c)
      for (auto pt : plane.classes[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]) {
        auto [a, b] = plane.coordinates(pt);
        CHECK(b == (i * a + c) % 5);
      }
  for (int c = 0; c < 5; ++c)
    for (auto pt : plane.classes[5][static_cast<std::size_t>(c)]) CHECK(plane.coordinates(pt).first == c);
}

TEST_CASE("lyndon relations at p = 3") {
  const auto rels = lyndon_relations(build_plane(PrimeField(3)));
  std::size_t total = 0;
  for (const auto& r : rels.R) {
    CHECK(r.size() == 18);
    total += r.size();
  }
  CHECK(total == 72);
  const auto full = BinaryRelation::full(9);
  auto expect = full;
  expect.subtract(rels.R[0] | rels.R[1] | BinaryRelation::identity(9));
  CHECK(rels.R[0].compose(rels.R[1]) == expect);
}

TEST_CASE("lyndon relations are symmetric and E_i classes have p elements") {
  for (int p : {3, 5, 7}) {
    const auto rels = lyndon_relations(build_plane(PrimeField(p)));
    for (std::size_t i = 0; i < rels.R.size(); ++i) {
      CHECK(rels.R[i] == rels.R[i].converse());
      for (const auto& cls : rels.equivalence(i).classes()) CHECK(cls.size() == static_cast<std::size_t>(p));
    }
  }
}

TEST_CASE("verify_lyndon") {
  for (int p : {3, 5}) {
    const auto rep = verify_lyndon(lyndon_relations(build_plane(PrimeField(p))));
    CHECK(rep.passed());
  }
  auto rels = lyndon_relations(build_plane(PrimeField(3)));
  auto [a, b] = rels.R[0].pairs().front();
  rels.R[0].erase(a, b);
  rels.R[1].insert(a, b);
  const auto rep = verify_lyndon(rels);
  CHECK_FALSE(rep.passed());
  REQUIRE(rep.first_failure() != nullptr);
  CHECK_FALSE(rep.first_failure()->witness.is_null());
}
