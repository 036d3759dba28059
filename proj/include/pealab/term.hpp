#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pealab {

/// Immutable term over {0, 1, +, *, -, c_i, d_ij, p_ij} with variables x[k].
///
/// s^i_j is not a node: it is lowered to c_i(d_ij * t) (identity for i = j)
/// as soon as it is built, and the other derived forms below expand the same way.
class Term {
public:
  enum class Op { Zero, One, Var, Diag, Not, Or, And, Cyl, Transp };

  Term();  // 0

  static Term zero();
  static Term one();
  static Term var(std::size_t k);
  static Term diag(int i, int j);
  static Term cyl(int i, Term t);
  static Term transp(int i, int j, Term t);
  static Term subst(int i, int j, Term t);

  friend Term operator-(Term t);
  friend Term operator+(Term a, Term b);
  friend Term operator*(Term a, Term b);

  Op op() const { return node_->op; }
  int i() const { return node_->i; }
  int j() const { return node_->j; }
  std::size_t var_index() const { return node_->var; }
  /// Operand of Not/Cyl/Transp, left operand of Or/And.
  const Term& left() const { return *node_->a; }
  const Term& right() const { return *node_->b; }

  /// Largest coordinate index used, or -1.
  int max_index() const;
  std::set<std::size_t> variables() const;
  std::size_t node_count() const;

  friend bool operator==(const Term& a, const Term& b);

private:
  struct Node {
    Op op = Op::Zero;
    int i = 0;
    int j = 0;
    std::size_t var = 0;
    std::shared_ptr<const Term> a;
    std::shared_ptr<const Term> b;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Term make(Node n);

  std::shared_ptr<const Node> node_;
};

/// a - b as a * -b.
Term minus(Term a, Term b);
/// Symmetric difference (a * -b) + (-a * b).
Term symdiff(Term a, Term b);
/// Left-nested product; the empty product is 1.
Term product(const std::vector<Term>& factors);
/// Left-nested sum; the empty sum is 0.
Term sum(const std::vector<Term>& terms);
/// c_{i1}(c_{i2}(... t)) for the listed coordinates, first one outermost.
Term cyl_chain(const std::vector<int>& coords, Term t);
/// ks(i,j) t = s^k_i s^i_j s^j_k t.
Term swap_term(int k, int i, int j, Term t);
/// 2s(0,1) t, the converse of a binary element.
Term converse(Term t);
/// x;y = c_2(s^1_2 x * s^0_2 y).
Term relprod(Term x, Term y);

struct Equation {
  Term lhs;
  Term rhs;
  std::string origin;

  std::set<std::size_t> variables() const;
  friend bool operator==(const Equation& a, const Equation& b) { return a.lhs == b.lhs && a.rhs == b.rhs; }
};

/// a <= b as a + b = b.
Equation le(Term a, Term b, std::string origin = {});

/// Precedence-aware printer; parse(to_string(t), alpha) == t.
std::string to_string(const Term& t);
std::string to_string(const Equation& e);

/// Grammar:
///   term := sum ; sum := prod ("+" prod)* ; prod := unary ("*" unary)*
///   unary := "-" unary | "c[" n "](" term ")" | "p[" n "," n "](" term ")"
///          | "s[" n "," n "](" term ")" | atom
///   atom := "0" | "1" | "d[" n "," n "]" | "x[" n "]" | "(" term ")"
///   eq := term "=" term | term "<=" term
/// Throws SyntaxError(position) and IndexError for a coordinate >= alpha.
Term parse_term(std::string_view text, int alpha);
Equation parse_equation(std::string_view text, int alpha, std::string origin = {});
/// An equation when the text has "=" or "<=" at the top level, else a term.
std::variant<Term, Equation> parse(std::string_view text, int alpha);

/// Pushes every p_ij down to the variables (P1)-(P4) and replaces each queue
/// of transpositions above a variable by perm_word of its composition.
/// Needs alpha to form permutations; throws IndexError if t uses a larger index.
Term normalize(const Term& t, int alpha);

}  // namespace pealab
