#include <doctest.h>

#include <random>

#include "pealab/equations.hpp"
#include "pealab/error.hpp"
#include "pealab/term.hpp"
#include "random_terms.hpp"

using namespace pealab;

namespace {

const Term x0 = Term::var(0);
const Term x1 = Term::var(1);

}  // namespace

TEST_CASE("parse: P1 instance equals the suite entry") {
  Equation e = parse_equation("p[0,1](x[0] + x[1]) = p[0,1](x[0]) + p[0,1](x[1])", 3);
  bool found = false;
  for (const auto& s : suite_P(3))
    if (s.origin == "P1[0,1]") found = s == e;
  CHECK(found);
}

TEST_CASE("parse: s[i,j] lowers to c_i(d_ij * t)") {
  CHECK(parse_term("s[0,1](x[0])", 3) == parse_term("c[0](d[0,1] * x[0])", 3));
  CHECK(to_string(parse_term("s[0,1](x[0])", 3)) == "c[0](d[0,1] * x[0])");
  CHECK(parse_term("s[2,2](x[0])", 3) == x0);
}

TEST_CASE("parse: index and syntax errors") {
  CHECK_THROWS_AS(parse_term("c[7](x[0])", 3), IndexError);
  CHECK_THROWS_AS(parse_term("d[0,3]", 3), IndexError);
  CHECK_NOTHROW(parse_term("d[0,3]", 4));
  CHECK_THROWS_AS(parse_term("x[0] +", 3), SyntaxError);
  CHECK_THROWS_AS(parse_term("c[0](x[0]", 3), SyntaxError);
  CHECK_THROWS_AS(parse_term("x[0] x[1]", 3), SyntaxError);
  CHECK_THROWS_AS(parse_term("12", 3), SyntaxError);
  CHECK_THROWS_AS(parse_equation("x[0]", 3), SyntaxError);
  try {
    parse_term("x[0] + $", 3);
    FAIL("no throw");
  } catch (const SyntaxError& e) {
    CHECK(e.position == 7);
  }
}

TEST_CASE("parse: precedence, whitespace, <=") {
  CHECK(parse_term("x[0]+x[1]*x[0]", 3) == x0 + x1 * x0);
  CHECK(parse_term("  - x[0] * x[1] ", 3) == (-x0) * x1);
  CHECK(parse_term("x[0] + x[1] + 1", 3) == (x0 + x1) + Term::one());
  CHECK(parse_term("(x[0] + x[1]) * 0", 3) == (x0 + x1) * Term::zero());
  Equation e = parse_equation("x[0] <= c[0](x[0])", 3);
  CHECK(e == le(x0, Term::cyl(0, x0)));
  CHECK(std::holds_alternative<Term>(parse("x[0]", 3)));
  CHECK(std::holds_alternative<Equation>(parse("x[0] = x[0]", 3)));
}

TEST_CASE("printer round-trips suite and witness terms") {
  std::vector<Equation> all = suite_P(3);
  for (auto& e : suite_F(3)) all.push_back(e);
  for (auto& e : gen_Ep(3, 3)) all.push_back(e);
  for (auto& e : gen_Ep(5, 4)) all.push_back(e);
  all.push_back(gen_ep(3, 3));
  int alpha = 4;
  for (const auto& e : all) {
    CHECK(parse_term(to_string(e.lhs), alpha) == e.lhs);
    CHECK(parse_term(to_string(e.rhs), alpha) == e.rhs);
    CHECK(parse_equation(to_string(e), alpha) == e);
  }
}

TEST_CASE("printer round-trips random terms") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 2000; ++k) {
    Term t = testing::random_term(rng, 4, 3, 6);
    REQUIRE(parse_term(to_string(t), 4) == t);
  }
  CHECK(to_string(x0 + (x1 + x0)) == "x[0] + (x[1] + x[0])");
  CHECK(to_string(x0 * (x1 * x0)) == "x[0] * (x[1] * x[0])");
  CHECK(to_string(-(x0 + x1)) == "-(x[0] + x[1])");
  CHECK(to_string(- -x0) == "--x[0]");
}

TEST_CASE("derived forms") {
  CHECK(converse(x0) == parse_term("s[2,0](s[0,1](s[1,2](x[0])))", 3));
  CHECK(relprod(x0, x1) == parse_term("c[2](s[1,2](x[0]) * s[0,2](x[1]))", 3));
  CHECK(symdiff(x0, x1) == parse_term("x[0] * -x[1] + -x[0] * x[1]", 3));
  CHECK(product({}) == Term::one());
  CHECK(sum({}) == Term::zero());
  CHECK(cyl_chain({1, 2}, x0) == Term::cyl(1, Term::cyl(2, x0)));
  CHECK(le(x0, x1).lhs == x0 + x1);
}

TEST_CASE("normalize examples") {
  CHECK(to_string(normalize(parse_term("p[0,1](c[0](x[0]))", 3), 3)) == "c[1](p[0,1](x[0]))");
  CHECK(to_string(normalize(parse_term("p[0,1](d[0,2])", 3), 3)) == "d[1,2]");
  CHECK(normalize(parse_term("p[0,1](p[0,1](x[0]))", 3), 3) == x0);
  CHECK(normalize(parse_term("p[1,1](x[0])", 3), 3) == x0);
  // [0,1][1,2] is a single adjacent queue already
  Term t = parse_term("p[0,1](p[1,2](x[0]))", 3);
  CHECK(normalize(t, 3) == t);
  CHECK_THROWS_AS(normalize(parse_term("d[0,3]", 4), 3), IndexError);
}

TEST_CASE("normal form: transpositions sit only directly above variables") {
  std::mt19937_64 rng(11);
  std::function<bool(const Term&, bool)> ok = [&](const Term& t, bool in_queue) {
    switch (t.op()) {
      case Term::Op::Var: return true;
      case Term::Op::Transp: return (t.left().op() == Term::Op::Var || t.left().op() == Term::Op::Transp) && ok(t.left(), true);
      case Term::Op::Not:
      case Term::Op::Cyl: return !in_queue && ok(t.left(), false);
      case Term::Op::Or:
      case Term::Op::And: return !in_queue && ok(t.left(), false) && ok(t.right(), false);
      default: return !in_queue;
    }
  };
  for (int k = 0; k < 500; ++k) {
    Term n = normalize(testing::random_term(rng, 3, 2, 6), 3);
    REQUIRE(ok(n, false));
    CHECK(normalize(n, 3) == n);
  }
}
