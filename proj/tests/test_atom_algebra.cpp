#include <doctest.h>

#include <functional>
#include <map>

#include "pealab/atom_algebra.hpp"
#include "pealab/error.hpp"

using namespace pealab;

namespace {

struct Built {
  SetAlgebraBuild b;
  AtomAlgebra ap;
  explicit Built(int p, int alpha = 3) : b(p, alpha), ap(build_Ap(b)) {}
};

const Built& a3() {
  static const Built x(3);
  return x;
}

const Built& a5() {
  static const Built x(5);
  return x;
}

// Every transposition word over alpha of length <= len, grouped by composition.
void for_each_word(int alpha, int len, const std::function<void(const std::vector<Transposition>&)>& f) {
  std::vector<Transposition> all;
  for (int i = 0; i < alpha; ++i)
    for (int j = i + 1; j < alpha; ++j) all.emplace_back(i, j);
  std::vector<Transposition> word;
  std::function<void()> rec = [&] {
    f(word);
    if (static_cast<int>(word.size()) == len) return;
    for (auto t : all) {
      word.push_back(t);
      rec();
      word.pop_back();
    }
  };
  rec();
}

}  // namespace

TEST_CASE("P*_01 fixes every Q_k") {
  const auto& ap = a3().ap;
  for (int k = 0; k < 2; ++k) {
    const auto q = ap.q_atom(Perm::identity(3), k);
    REQUIRE(q.has_value());
    CHECK(ap.transp_of(0, 1, ap.atom(*q)) == ap.atom(*q));
    // The set operation swaps Q_0 and Q_1 instead.
    CHECK(ap.transp[0][1][*q] == *ap.q_atom(Perm::identity(3), 1 - k));
  }
}

TEST_CASE("P*_12 on S_Id Q_0") {
  const auto& ap = a3().ap;
  const auto q0 = *ap.q_atom(Perm::identity(3), 0);
  const auto target = ap.q_atom(Perm::transposition(3, 1, 2), 0);
  REQUIRE(target.has_value());
  CHECK((*ap.transp_star)[1][2][q0] == *target);
}

TEST_CASE("P* agrees with P away from Q atoms and is an involutive bijection") {
  for (const Built* x : {&a3(), &a5()}) {
    const auto& ap = x->ap;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const auto& star = (*ap.transp_star)[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        const auto& set = ap.transp[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        Bitset hit(ap.size());
        for (std::size_t a = 0; a < ap.size(); ++a) {
          if (ap.labels[a].kind == AtomLabel::Kind::B) CHECK(star[a] == set[a]);
          CHECK(star[star[a]] == a);
          hit.set(star[a]);
        }
        CHECK(hit.count() == ap.size());
      }
  }
}

TEST_CASE("s_star on Q atoms follows (sigma o tau+)+") {
  const auto& ap = a5().ap;
  for (const auto& sigma : all_perms(3))
    for (const auto& tau : plus_perms(3))
      for (int k = 0; k < 4; ++k) {
        const auto a = *ap.q_atom(tau, k);
        const auto want = *ap.q_atom((sigma * tau).plus(), k);
        CHECK(s_star(sigma, ap.atom(a), ap) == ap.atom(want));
      }
  const auto x = ap.lyndon[2] | ap.atom(0);
  CHECK(s_star(Perm::identity(3), x, ap) == x);
}

TEST_CASE("s_star does not depend on the transposition word") {
  for (const Built* x : {&a3(), &a5()}) {
    const auto& ap = x->ap;
    std::map<std::vector<int>, std::vector<Bitset>> by_perm;
    for_each_word(3, 4, [&](const std::vector<Transposition>& w) {
      const auto sigma = compose_word(3, w);
      std::vector<Bitset> images;
      for (std::size_t a = 0; a < ap.size(); ++a) images.push_back(s_star_word(w, ap.atom(a), ap));
      auto [it, fresh] = by_perm.try_emplace(sigma.images(), images);
      if (!fresh) CHECK(it->second == images);
    });
    CHECK(by_perm.size() == 6);
  }
}

TEST_CASE("s_star word independence at alpha = 4") {
  const Built x(3, 4);
  const auto& ap = x.ap;
  std::vector<std::size_t> qs;
  for (std::size_t a = 0; a < ap.size(); ++a)
    if (ap.labels[a].kind == AtomLabel::Kind::Q) qs.push_back(a);
  std::map<std::vector<int>, std::vector<Bitset>> by_perm;
  for_each_word(4, 3, [&](const std::vector<Transposition>& w) {
    std::vector<Bitset> images;
    for (auto a : qs) images.push_back(s_star_word(w, ap.atom(a), ap));
    auto [it, fresh] = by_perm.try_emplace(compose_word(4, w).images(), images);
    if (!fresh) CHECK(it->second == images);
  });
}

TEST_CASE("transposition-free reducts coincide and the identity map breaks at P") {
  for (const Built* x : {&a3(), &a5()}) {
    const auto rep = nonrepresentability_certificate(x->ap, x->b);
    CHECK(rep.passed());
  }
}

TEST_CASE("cylindrification-free representation") {
  for (const Built* x : {&a3(), &a5()}) {
    const auto iso = reduct_rep_cylfree(x->ap, x->b);
    CHECK(iso.report.passed());
    // H_k is symmetric, so P_01 fixes h(Q_k) just as P*_01 fixes Q_k.
    for (int k = 0; k < x->b.p - 1; ++k) {
      const auto a = *x->ap.q_atom(Perm::identity(3), k);
      CHECK(transp(0, 1, iso.target.atoms[a]) == iso.target.atoms[a]);
    }
  }
}

TEST_CASE("diagonal-free representation over the doubled base") {
  const auto iso = reduct_rep_diagfree(a3().ap, a3().b);
  CHECK(iso.target.space.n == 22);
  CHECK(iso.report.passed());
  CHECK(iso.report.find("excluded_operation_fails")->passed);
}

TEST_CASE("merge construction at p = 5") {
  const auto res = merge_construction(a5().ap, a5().b, 0, 3);
  CHECK(res.report.passed());
  std::size_t merged = 0;
  for (const auto& m : res.members) merged += m.count() == 2;
  CHECK(merged == 3);
  CHECK_THROWS_AS(merge_construction(a5().ap, a5().b, 0, 2), UnsupportedCase);
  CHECK_THROWS_AS(merge_construction(a5().ap, a5().b, 1, 1), InvalidArgument);
}

TEST_CASE("merge construction at p = 7 and k = 1") {
  const Built x(7);
  CHECK(merge_construction(x.ap, x.b, 1, 4, IsoOptions{50, 3}).report.passed());
}

TEST_CASE("algebra json round trip") {
  const auto& ap = a3().ap;
  const auto j = algebra_to_json(ap, &a3().b.table.atoms);
  const auto back = algebra_from_json(j);
  CHECK(back.labels == ap.labels);
  CHECK(back.cyl == ap.cyl);
  CHECK(back.diag == ap.diag);
  CHECK(back.transp == ap.transp);
  CHECK(back.transp_star == ap.transp_star);
  CHECK(back.lyndon == ap.lyndon);
  CHECK(algebra_to_json(back, &a3().b.table.atoms) == j);
  CHECK_THROWS_AS(algebra_from_json(json{{"p", 3}}), InvalidArgument);
}
