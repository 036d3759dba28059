#include "pealab/term.hpp"

#include <cctype>
#include <limits>

#include "pealab/error.hpp"
#include "pealab/perm.hpp"

namespace pealab {

Term Term::make(Node n) { return Term(std::make_shared<const Node>(std::move(n))); }

Term::Term() : Term(zero()) {}

Term Term::zero() {
  static const Term z(std::make_shared<const Node>(Node{}));
  return z;
}

Term Term::one() {
  static const Term o(std::make_shared<const Node>(Node{Op::One, 0, 0, 0, nullptr, nullptr}));
  return o;
}

Term Term::var(std::size_t k) { return make(Node{Op::Var, 0, 0, k, nullptr, nullptr}); }

Term Term::diag(int i, int j) { return make(Node{Op::Diag, i, j, 0, nullptr, nullptr}); }

Term Term::cyl(int i, Term t) { return make(Node{Op::Cyl, i, 0, 0, std::make_shared<const Term>(std::move(t)), nullptr}); }

Term Term::transp(int i, int j, Term t) {
  return make(Node{Op::Transp, i, j, 0, std::make_shared<const Term>(std::move(t)), nullptr});
}

Term Term::subst(int i, int j, Term t) {
  if (i == j) return t;
  return cyl(i, diag(i, j) * std::move(t));
}

Term operator-(Term t) {
  return Term::make(Term::Node{Term::Op::Not, 0, 0, 0, std::make_shared<const Term>(std::move(t)), nullptr});
}

Term operator+(Term a, Term b) {
  return Term::make(Term::Node{Term::Op::Or, 0, 0, 0, std::make_shared<const Term>(std::move(a)),
                               std::make_shared<const Term>(std::move(b))});
}

Term operator*(Term a, Term b) {
  return Term::make(Term::Node{Term::Op::And, 0, 0, 0, std::make_shared<const Term>(std::move(a)),
                               std::make_shared<const Term>(std::move(b))});
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.op != y.op) return false;
  switch (x.op) {
    case Term::Op::Zero:
    case Term::Op::One: return true;
    case Term::Op::Var: return x.var == y.var;
    case Term::Op::Diag: return x.i == y.i && x.j == y.j;
    case Term::Op::Not: return *x.a == *y.a;
    case Term::Op::Or:
    case Term::Op::And: return *x.a == *y.a && *x.b == *y.b;
    case Term::Op::Cyl: return x.i == y.i && *x.a == *y.a;
    case Term::Op::Transp: return x.i == y.i && x.j == y.j && *x.a == *y.a;
  }
  return false;
}

int Term::max_index() const {
  switch (op()) {
    case Op::Zero:
    case Op::One:
    case Op::Var: return -1;
    case Op::Diag: return std::max(i(), j());
    case Op::Not: return left().max_index();
    case Op::Or:
    case Op::And: return std::max(left().max_index(), right().max_index());
    case Op::Cyl: return std::max(i(), left().max_index());
    case Op::Transp: return std::max({i(), j(), left().max_index()});
  }
  return -1;
}

namespace {

void collect_vars(const Term& t, std::set<std::size_t>& out) {
  switch (t.op()) {
    case Term::Op::Var: out.insert(t.var_index()); break;
    case Term::Op::Not:
    case Term::Op::Cyl:
    case Term::Op::Transp: collect_vars(t.left(), out); break;
    case Term::Op::Or:
    case Term::Op::And:
      collect_vars(t.left(), out);
      collect_vars(t.right(), out);
      break;
    default: break;
  }
}

}  // namespace

std::set<std::size_t> Term::variables() const {
  std::set<std::size_t> out;
  collect_vars(*this, out);
  return out;
}

std::size_t Term::node_count() const {
  switch (op()) {
    case Op::Not:
    case Op::Cyl:
    case Op::Transp: return 1 + left().node_count();
    case Op::Or:
    case Op::And: return 1 + left().node_count() + right().node_count();
    default: return 1;
  }
}

Term minus(Term a, Term b) { return std::move(a) * -std::move(b); }

Term symdiff(Term a, Term b) { return (a * -b) + (-a * b); }

Term product(const std::vector<Term>& factors) {
  if (factors.empty()) return Term::one();
  Term out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = out * factors[k];
  return out;
}

Term sum(const std::vector<Term>& terms) {
  if (terms.empty()) return Term::zero();
  Term out = terms.front();
  for (std::size_t k = 1; k < terms.size(); ++k) out = out + terms[k];
  return out;
}

Term cyl_chain(const std::vector<int>& coords, Term t) {
  for (auto it = coords.rbegin(); it != coords.rend(); ++it) t = Term::cyl(*it, std::move(t));
  return t;
}

Term swap_term(int k, int i, int j, Term t) {
  return Term::subst(k, i, Term::subst(i, j, Term::subst(j, k, std::move(t))));
}

Term converse(Term t) { return swap_term(2, 0, 1, std::move(t)); }

Term relprod(Term x, Term y) { return Term::cyl(2, Term::subst(1, 2, std::move(x)) * Term::subst(0, 2, std::move(y))); }

std::set<std::size_t> Equation::variables() const {
  auto v = lhs.variables();
  auto r = rhs.variables();
  v.insert(r.begin(), r.end());
  return v;
}

Equation le(Term a, Term b, std::string origin) { return Equation{a + b, b, std::move(origin)}; }

// ---------------------------------------------------------------- printing

namespace {

int level(const Term& t) {
  switch (t.op()) {
    case Term::Op::Or: return 0;
    case Term::Op::And: return 1;
    default: return 2;
  }
}

void print(const Term& t, int need, std::string& out) {
  bool paren = level(t) < need;
  if (paren) out += '(';
  switch (t.op()) {
    case Term::Op::Zero: out += '0'; break;
    case Term::Op::One: out += '1'; break;
    case Term::Op::Var: out += "x[" + std::to_string(t.var_index()) + "]"; break;
    case Term::Op::Diag: out += "d[" + std::to_string(t.i()) + "," + std::to_string(t.j()) + "]"; break;
    case Term::Op::Not:
      out += '-';
      print(t.left(), 2, out);
      break;
    case Term::Op::Or:
      print(t.left(), 0, out);
      out += " + ";
      print(t.right(), 1, out);
      break;
    case Term::Op::And:
      print(t.left(), 1, out);
      out += " * ";
      print(t.right(), 2, out);
      break;
    case Term::Op::Cyl:
      out += "c[" + std::to_string(t.i()) + "](";
      print(t.left(), 0, out);
      out += ')';
      break;
    case Term::Op::Transp:
      out += "p[" + std::to_string(t.i()) + "," + std::to_string(t.j()) + "](";
      print(t.left(), 0, out);
      out += ')';
      break;
  }
  if (paren) out += ')';
}

}  // namespace

std::string to_string(const Term& t) {
  std::string out;
  print(t, 0, out);
  return out;
}

std::string to_string(const Equation& e) { return to_string(e.lhs) + " = " + to_string(e.rhs); }

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
public:
  Parser(std::string_view s, int alpha) : s_(s), alpha_(alpha) {}

  Term term() { return sum_(); }

  void ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() {
    ws();
    return pos_ >= s_.size();
  }
  bool peek(std::string_view tok) {
    ws();
    return s_.substr(pos_, tok.size()) == tok;
  }
  bool accept(std::string_view tok) {
    if (!peek(tok)) return false;
    pos_ += tok.size();
    return true;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(pos_, msg); }
  std::size_t pos() const { return pos_; }

private:
  Term sum_() {
    Term t = prod_();
    while (accept("+")) t = t + prod_();
    return t;
  }

  Term prod_() {
    Term t = unary_();
    while (accept("*")) t = t * unary_();
    return t;
  }

  Term unary_() {
    ws();
    if (accept("-")) return -unary_();
    if (accept("c[")) {
      int i = index_();
      expect("]");
      return Term::cyl(i, paren_term_());
    }
    if (accept("p[")) {
      auto [i, j] = pair_();
      return Term::transp(i, j, paren_term_());
    }
    if (accept("s[")) {
      auto [i, j] = pair_();
      return Term::subst(i, j, paren_term_());
    }
    return atom_();
  }

  Term atom_() {
    ws();
    if (accept("d[")) {
      auto [i, j] = pair_();
      return Term::diag(i, j);
    }
    if (accept("x[")) {
      std::size_t k = nat_();
      expect("]");
      return Term::var(k);
    }
    if (accept("(")) {
      Term t = sum_();
      expect(")");
      return t;
    }
    // "0"/"1" must not be the prefix of a longer number
    if (pos_ < s_.size() && (s_[pos_] == '0' || s_[pos_] == '1') &&
        (pos_ + 1 >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))) {
      return s_[pos_++] == '0' ? Term::zero() : Term::one();
    }
    fail(pos_ >= s_.size() ? "unexpected end of input" : "unexpected character");
  }

  Term paren_term_() {
    expect("(");
    Term t = sum_();
    expect(")");
    return t;
  }

  std::pair<int, int> pair_() {
    int i = index_();
    expect(",");
    int j = index_();
    expect("]");
    return {i, j};
  }

  std::size_t nat_() {
    ws();
    std::size_t start = pos_;
    std::size_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t d = static_cast<std::size_t>(s_[pos_] - '0');
      if (v > (std::numeric_limits<std::size_t>::max() - d) / 10) throw SyntaxError(start, "number too large");
      v = v * 10 + d;
      ++pos_;
    }
    if (pos_ == start) fail("expected a number");
    return v;
  }

  int index_() {
    std::size_t at = pos_;
    std::size_t v = nat_();
    if (v >= static_cast<std::size_t>(alpha_))
      throw IndexError("index " + std::to_string(v) + " at position " + std::to_string(at) + " is not below alpha=" +
                       std::to_string(alpha_));
    return static_cast<int>(v);
  }

  std::string_view s_;
  int alpha_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text, int alpha) {
  Parser ps(text, alpha);
  Term t = ps.term();
  if (!ps.at_end()) ps.fail("trailing input");
  return t;
}

Equation parse_equation(std::string_view text, int alpha, std::string origin) {
  auto v = parse(text, alpha);
  if (auto* e = std::get_if<Equation>(&v)) {
    e->origin = std::move(origin);
    return *e;
  }
  throw SyntaxError(text.size(), "expected '=' or '<='");
}

std::variant<Term, Equation> parse(std::string_view text, int alpha) {
  Parser ps(text, alpha);
  Term lhs = ps.term();
  if (ps.at_end()) return lhs;
  bool ineq = ps.accept("<=");
  if (!ineq) ps.expect("=");
  Term rhs = ps.term();
  if (!ps.at_end()) ps.fail("trailing input");
  if (ineq) return le(lhs, rhs);
  return Equation{lhs, rhs, {}};
}

// ---------------------------------------------------------------- normal form

namespace {

Term push(const Term& t, const Perm& sigma) {
  switch (t.op()) {
    case Term::Op::Zero:
    case Term::Op::One: return t;
    case Term::Op::Var: {
      Term out = t;
      auto word = perm_word(sigma);
      for (auto it = word.rbegin(); it != word.rend(); ++it) out = Term::transp(it->first, it->second, out);
      return out;
    }
    case Term::Op::Diag: return Term::diag(sigma(t.i()), sigma(t.j()));
    case Term::Op::Not: return -push(t.left(), sigma);
    case Term::Op::Or: return push(t.left(), sigma) + push(t.right(), sigma);
    case Term::Op::And: return push(t.left(), sigma) * push(t.right(), sigma);
    case Term::Op::Cyl: return Term::cyl(sigma(t.i()), push(t.left(), sigma));
    case Term::Op::Transp:
      return push(t.left(), sigma * Perm::transposition(sigma.degree(), t.i(), t.j()));
  }
  return t;
}

}  // namespace

Term normalize(const Term& t, int alpha) {
  if (t.max_index() >= alpha) throw IndexError("term uses an index not below alpha=" + std::to_string(alpha));
  return push(t, Perm::identity(alpha));
}

}  // namespace pealab
