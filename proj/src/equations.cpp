#include "pealab/equations.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <random>
#include <thread>
#include <unordered_map>

#include "pealab/error.hpp"
#include "pealab/field_geometry.hpp"
#include "pealab/perm.hpp"

namespace pealab {

std::size_t search_budget() {
  if (const char* env = std::getenv("PEALAB_BUDGET")) {
    try {
      const auto v = std::stoull(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return std::size_t{1} << 24;
}

Bitset eval(const AtomAlgebra& a, const Term& t, const Evaluation& e) {
  switch (t.op()) {
    case Term::Op::Zero: return a.zero();
    case Term::Op::One: return a.one();
    case Term::Op::Var: {
      auto it = e.find(t.var_index());
      if (it == e.end()) throw UnboundVariable(t.var_index());
      return it->second;
    }
    case Term::Op::Diag: return a.diag_of(t.i(), t.j());
    case Term::Op::Not: return eval(a, t.left(), e).complement();
    case Term::Op::Or: return eval(a, t.left(), e) | eval(a, t.right(), e);
    case Term::Op::And: return eval(a, t.left(), e) & eval(a, t.right(), e);
    case Term::Op::Cyl: return a.cyl_of(t.i(), eval(a, t.left(), e));
    case Term::Op::Transp: return a.transp_of(t.i(), t.j(), eval(a, t.left(), e));
  }
  return a.zero();
}

AtomAlgebra full_set_algebra(int n, int alpha) {
  if (n < 1) throw InvalidArgument("full_set_algebra needs a nonempty base");
  if (alpha < 1) throw InvalidArgument("full_set_algebra needs alpha >= 1");
  Space sp(static_cast<std::size_t>(n), alpha);
  const std::size_t N = sp.tuple_count();
  const auto A = static_cast<std::size_t>(alpha);
  AtomAlgebra a;
  a.p = 0;
  a.alpha = alpha;
  a.labels.resize(N);
  for (std::size_t t = 0; t < N; ++t) a.labels[t].b = static_cast<int>(t);
  a.cyl.assign(A, std::vector<Bitset>(N, Bitset(N)));
  a.diag.assign(A, std::vector<Bitset>(A, Bitset(N)));
  a.transp.assign(A, std::vector<std::vector<std::size_t>>(A, std::vector<std::size_t>(N)));
  for (std::size_t t = 0; t < N; ++t) {
    auto c = sp.decode(t);
    for (int i = 0; i < alpha; ++i) {
      auto d = c;
      for (std::size_t v = 0; v < sp.n; ++v) {
        d[static_cast<std::size_t>(i)] = v;
        a.cyl[static_cast<std::size_t>(i)][t].set(sp.encode(d));
      }
      for (int j = 0; j < alpha; ++j) {
        if (c[static_cast<std::size_t>(i)] == c[static_cast<std::size_t>(j)])
          a.diag[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].set(t);
        auto s = c;
        std::swap(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(j)]);
        a.transp[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][t] = sp.encode(s);
      }
    }
  }
  a.index();
  return a;
}

std::string to_string(CheckModeKind k) {
  switch (k) {
    case CheckModeKind::Exhaustive: return "exhaustive";
    case CheckModeKind::AtomLevel: return "atom";
    case CheckModeKind::AtomEnumeration: return "atoms";
    case CheckModeKind::Sampled: return "sampled";
    case CheckModeKind::Auto: return "auto";
  }
  return "auto";
}

CheckModeKind mode_from_string(const std::string& s) {
  for (auto k : {CheckModeKind::Exhaustive, CheckModeKind::AtomLevel, CheckModeKind::AtomEnumeration,
                 CheckModeKind::Sampled, CheckModeKind::Auto})
    if (to_string(k) == s) return k;
  throw InvalidArgument("unknown mode '" + s + "' (exhaustive, atom, atoms, sampled, auto)");
}

namespace {

// Returns false if t is not join-preserving in its variables; fills vars.
bool join_preserving(const Term& t, std::set<std::size_t>& vars) {
  switch (t.op()) {
    case Term::Op::Zero:
    case Term::Op::One:
    case Term::Op::Diag: return true;
    case Term::Op::Var: vars.insert(t.var_index()); return true;
    case Term::Op::Not: {
      std::set<std::size_t> inner;
      bool ok = join_preserving(t.left(), inner);
      vars.insert(inner.begin(), inner.end());
      return ok && inner.empty();
    }
    case Term::Op::Cyl:
    case Term::Op::Transp: return join_preserving(t.left(), vars);
    case Term::Op::Or: return join_preserving(t.left(), vars) && join_preserving(t.right(), vars);
    case Term::Op::And: {
      std::set<std::size_t> l, r;
      if (!join_preserving(t.left(), l) || !join_preserving(t.right(), r)) return false;
      for (auto v : l)
        if (r.count(v)) return false;
      vars.insert(l.begin(), l.end());
      vars.insert(r.begin(), r.end());
      return true;
    }
  }
  return false;
}

json atoms_json(const Bitset& b) { return json(b.indices()); }

// First atom where the two sides differ, evaluated under e.
std::optional<std::size_t> differs(const AtomAlgebra& a, const Equation& eq, const Evaluation& e) {
  Bitset l = eval(a, eq.lhs, e);
  Bitset r = eval(a, eq.rhs, e);
  if (l == r) return std::nullopt;
  return (l ^ r).first();
}

json failure_witness(const Evaluation& e, std::size_t atom, const AtomAlgebra& a, const Equation& eq) {
  return {{"evaluation", evaluation_json(e)},
          {"atom", atom},
          {"in_lhs", eval(a, eq.lhs, e).test(atom)}};
}

std::size_t saturating_pow(std::size_t base, std::size_t exp, std::size_t cap) {
  std::size_t r = 1;
  for (std::size_t k = 0; k < exp; ++k) {
    if (base != 0 && r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

void run_atom_scan(const AtomAlgebra& a, const Equation& eq, const std::vector<std::size_t>& vars,
                   std::size_t budget, const std::string& name, CheckReport& rep) {
  Stopwatch sw;
  const std::size_t n = a.size();
  std::size_t combos = saturating_pow(n + 1, vars.size(), budget);
  if (combos > budget) throw BudgetExceeded(budget, name + " evaluations");
  std::vector<std::size_t> digit(vars.size(), 0);
  Evaluation e;
  for (std::size_t c = 0; c < combos; ++c) {
    for (std::size_t k = 0; k < vars.size(); ++k) e[vars[k]] = digit[k] == n ? a.zero() : a.atom(digit[k]);
    if (auto at = differs(a, eq, e)) {
      rep.add(name, false, failure_witness(e, *at, a, eq), {{"evaluations", c + 1}}, sw.millis());
      return;
    }
    for (std::size_t k = 0; k < digit.size(); ++k) {
      if (++digit[k] <= n) break;
      digit[k] = 0;
    }
  }
  rep.add(name, true, nullptr, {{"evaluations", combos}}, sw.millis());
}

void run_exhaustive(const AtomAlgebra& a, const Equation& eq, const std::vector<std::size_t>& vars,
                    std::size_t budget, CheckReport& rep) {
  Stopwatch sw;
  const std::size_t n = a.size();
  const std::size_t bits = n * vars.size();
  if (bits >= 63 || (std::size_t{1} << bits) > budget) throw BudgetExceeded(budget, "exhaustive evaluations");
  const std::size_t total = std::size_t{1} << bits;
  Evaluation e;
  for (std::size_t c = 0; c < total; ++c) {
    for (std::size_t k = 0; k < vars.size(); ++k) {
      Bitset b(n);
      for (std::size_t i = 0; i < n; ++i)
        if ((c >> (k * n + i)) & 1u) b.set(i);
      e[vars[k]] = std::move(b);
    }
    if (auto at = differs(a, eq, e)) {
      rep.add("exhaustive", false, failure_witness(e, *at, a, eq), {{"evaluations", c + 1}}, sw.millis());
      return;
    }
  }
  rep.add("exhaustive", true, nullptr, {{"evaluations", total}}, sw.millis());
}

void run_sampled(const AtomAlgebra& a, const Equation& eq, const std::vector<std::size_t>& vars, const CheckMode& m,
                 json note, CheckReport& rep) {
  Stopwatch sw;
  std::mt19937_64 rng(m.seed);
  const Bitset unit = a.one();
  Evaluation e;
  json detail = {{"seed", m.seed}, {"samples", m.samples}};
  if (!note.is_null()) detail["atom_level"] = std::move(note);
  for (std::size_t s = 0; s < m.samples; ++s) {
    for (auto v : vars) {
      Bitset b(a.size());
      for (auto& w : b.words()) w = rng();
      b &= unit;
      e[v] = std::move(b);
    }
    if (auto at = differs(a, eq, e)) {
      detail["sample"] = s;
      rep.add("sampled", false, failure_witness(e, *at, a, eq), detail, sw.millis());
      return;
    }
  }
  rep.add("sampled", true, nullptr, detail, sw.millis());
}

}  // namespace

bool atom_level_applicable(const Equation& eq) {
  std::set<std::size_t> l, r;
  return join_preserving(eq.lhs, l) && join_preserving(eq.rhs, r);
}

json evaluation_json(const Evaluation& e) {
  json j = json::object();
  for (const auto& [k, v] : e) j["x[" + std::to_string(k) + "]"] = atoms_json(v);
  return j;
}

CheckReport check(const AtomAlgebra& a, const Equation& eq, const CheckMode& mode) {
  CheckReport rep;
  rep.command = "check";
  rep.parameters = {{"equation", to_string(eq)}, {"mode", to_string(mode.kind)}};
  auto vs = eq.variables();
  std::vector<std::size_t> vars(vs.begin(), vs.end());
  switch (mode.kind) {
    case CheckModeKind::Exhaustive: run_exhaustive(a, eq, vars, mode.budget, rep); break;
    case CheckModeKind::AtomLevel:
      if (!atom_level_applicable(eq)) throw ModeInapplicable("atom-level check needs join-preserving sides: " + to_string(eq));
      run_atom_scan(a, eq, vars, mode.budget, "atom_level", rep);
      break;
    case CheckModeKind::AtomEnumeration: run_atom_scan(a, eq, vars, mode.budget, "atom_enumeration", rep); break;
    case CheckModeKind::Sampled: run_sampled(a, eq, vars, mode, nullptr, rep); break;
    case CheckModeKind::Auto: {
      json note;
      if (!atom_level_applicable(eq)) {
        note = "inapplicable";
      } else if (saturating_pow(a.size() + 1, vars.size(), mode.budget) > mode.budget) {
        note = "over budget";
      } else {
        note = "run";
        run_atom_scan(a, eq, vars, mode.budget, "atom_level", rep);
      }
      run_sampled(a, eq, vars, mode, note, rep);
      break;
    }
  }
  return rep;
}

CheckReport check_all(const AtomAlgebra& a, const std::vector<Equation>& eqs, const CheckMode& mode,
                      unsigned threads) {
  std::vector<CheckReport> parts(eqs.size());
  std::vector<std::string> errors(eqs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < eqs.size();) {
      try {
        parts[k] = check(a, eqs[k], mode);
      } catch (const Error& ex) {
        errors[k] = ex.what();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(eqs.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  CheckReport rep;
  rep.command = "check_all";
  rep.parameters = {{"mode", to_string(mode.kind)}, {"seed", mode.seed}, {"samples", mode.samples}};
  for (std::size_t k = 0; k < eqs.size(); ++k) {
    std::string tag = eqs[k].origin.empty() ? "eq" + std::to_string(k) : eqs[k].origin;
    if (!errors[k].empty()) {
      // the same error would be raised on every attempt, so it is part of the verdict
      rep.add(tag + ".error", false, errors[k], {{"equation", to_string(eqs[k])}});
      continue;
    }
    for (auto& r : parts[k].records) r.detail["equation"] = to_string(eqs[k]);
    rep.append(parts[k], tag + ".");
  }
  return rep;
}

// ---------------------------------------------------------------- suites

namespace {

std::string idx(std::initializer_list<int> xs) {
  std::string s = "[";
  bool first = true;
  for (int x : xs) {
    if (!first) s += ",";
    s += std::to_string(x);
    first = false;
  }
  return s + "]";
}

}  // namespace

std::vector<Equation> suite_P(int alpha) {
  if (alpha < 3) throw InvalidArgument("suite_P needs alpha >= 3");
  const Term x = Term::var(0), y = Term::var(1);
  std::vector<Equation> out;
  auto tau = [&](int i, int j) { return Perm::transposition(alpha, i, j); };
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j)
      out.push_back({Term::transp(i, j, x + y), Term::transp(i, j, x) + Term::transp(i, j, y), "P1" + idx({i, j})});
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j)
      out.push_back({Term::transp(i, j, -x), -Term::transp(i, j, x), "P2" + idx({i, j})});
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j)
      for (int k = 0; k < alpha; ++k)
        out.push_back({Term::transp(i, j, Term::cyl(k, x)), Term::cyl(tau(i, j)(k), Term::transp(i, j, x)),
                       "P3" + idx({i, j, k})});
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j)
      for (int k = 0; k < alpha; ++k)
        for (int l = 0; l < alpha; ++l) {
          auto t = tau(i, j);
          out.push_back({Term::transp(i, j, Term::diag(k, l)), Term::diag(t(k), t(l)), "P4" + idx({i, j, k, l})});
        }
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j)
      for (int k = 0; k < alpha; ++k)
        for (int l = 0; l < alpha; ++l) {
          auto t = tau(i, j);
          out.push_back({Term::transp(i, j, Term::transp(k, l, x)), Term::transp(t(k), t(l), Term::transp(i, j, x)),
                         "P5" + idx({i, j, k, l})});
        }
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j)
      out.push_back({Term::transp(i, j, Term::transp(i, j, x)), x, "P6" + idx({i, j})});
  for (int i = 0; i < alpha; ++i) out.push_back({Term::transp(i, i, x), x, "P7" + idx({i})});
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j)
      out.push_back({Term::transp(i, j, x * Term::diag(i, j)), x * Term::diag(i, j), "P8" + idx({i, j})});
  return out;
}

std::vector<Equation> suite_F(int alpha) {
  if (alpha < 3) throw InvalidArgument("suite_F needs alpha >= 3");
  const Term x = Term::var(0), y = Term::var(1), z = Term::var(2);
  auto s = [](int i, int j, Term t) { return Term::subst(i, j, std::move(t)); };
  auto p = [](int i, int j, Term t) { return Term::transp(i, j, std::move(t)); };
  auto c = [](int i, Term t) { return Term::cyl(i, std::move(t)); };
  std::vector<Equation> out;

  out.push_back({x + y, y + x, "F0.comm"});
  out.push_back({x + (y + z), (x + y) + z, "F0.assoc"});
  out.push_back({-(-x + y) + -(-x + -y), x, "F0.huntington"});
  out.push_back({x * y, -(-x + -y), "F0.meet"});
  out.push_back({x + -x, Term::one(), "F0.unit"});
  out.push_back({Term::zero(), -Term::one(), "F0.zero"});
  for (int i = 0; i < alpha; ++i) out.push_back({s(i, i, x), x, "F0.s" + idx({i})});
  for (int i = 0; i < alpha; ++i) out.push_back({p(i, i, x), x, "F0.p" + idx({i})});
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j) out.push_back({p(i, j, x), p(j, i, x), "F0.psym" + idx({i, j})});

  for (int i = 0; i < alpha; ++i) out.push_back(le(x, c(i, x), "F1" + idx({i})));
  for (int i = 0; i < alpha; ++i) out.push_back({c(i, x + y), c(i, x) + c(i, y), "F2" + idx({i})});
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j) out.push_back({s(i, j, c(i, x)), c(i, x), "F3" + idx({i, j})});
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j)
      if (i != j) out.push_back({c(i, s(i, j, x)), s(i, j, x), "F4" + idx({i, j})});
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j)
      for (int k = 0; k < alpha; ++k)
        if (k != i && k != j) out.push_back({s(i, j, c(k, x)), c(k, s(i, j, x)), "F5" + idx({i, j, k})});
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j) {
      out.push_back({s(i, j, -x), -s(i, j, x), "F6.s.not" + idx({i, j})});
      out.push_back({s(i, j, x + y), s(i, j, x) + s(i, j, y), "F6.s.sum" + idx({i, j})});
      out.push_back({p(i, j, -x), -p(i, j, x), "F6.p.not" + idx({i, j})});
      out.push_back({p(i, j, x + y), p(i, j, x) + p(i, j, y), "F6.p.sum" + idx({i, j})});
    }
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j) out.push_back({p(i, j, p(i, j, x)), x, "F7" + idx({i, j})});
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j)
      for (int k = 0; k < alpha; ++k)
        if (i != j && j != k && i != k)
          out.push_back({p(i, j, p(i, k, x)), p(j, k, p(i, j, x)), "F8" + idx({i, j, k})});
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j) out.push_back({p(i, j, s(j, i, x)), s(i, j, x), "F9" + idx({i, j})});
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j) out.push_back({s(i, j, Term::diag(i, j)), Term::one(), "F10" + idx({i, j})});
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j) out.push_back(le(x * Term::diag(i, j), s(i, j, x), "F11" + idx({i, j})));
  return out;
}

// ---------------------------------------------------------------- witness equations

std::size_t var_x(int, int i) { return static_cast<std::size_t>(i); }
std::size_t var_y(int p, int k) { return static_cast<std::size_t>(p + 1 + k); }

namespace {

std::vector<int> coords_from(int first, int alpha) {
  std::vector<int> v;
  for (int i = first; i < alpha; ++i) v.push_back(i);
  return v;
}

void check_witness_params(int p, int alpha) {
  if (!is_prime(p)) throw NotPrime(p);
  if (p == 2) throw InvalidArgument("p must be odd");
  if (alpha < 3) throw InvalidArgument("alpha >= 3 required");
}

std::vector<Equation> build_E(int p, int alpha, bool with_y) {
  check_witness_params(p, alpha);
  const std::string tag = "E" + std::to_string(p) + ".";
  auto x = [&](int i) { return Term::var(var_x(p, i)); };
  auto yv = [&](int k) { return Term::var(var_y(p, k)); };
  const Term d01 = Term::diag(0, 1);
  std::vector<Equation> out;

  std::vector<Term> xs;
  for (int i = 0; i <= p; ++i) xs.push_back(x(i));
  out.push_back({sum(xs), minus(Term::cyl(1, x(0)) * Term::cyl(0, x(0)), d01), tag + "sum"});
  for (int i = 0; i <= p; ++i)
    for (int j = i + 1; j <= p; ++j) out.push_back({x(i) * x(j), Term::zero(), tag + "disjoint" + idx({i, j})});
  for (int i = 0; i <= p; ++i) {
    out.push_back({x(i), cyl_chain(coords_from(2, alpha), x(i)), tag + "binary" + idx({i})});
    out.push_back({x(i), converse(x(i)), tag + "symmetric" + idx({i})});
    out.push_back(le(relprod(x(i), x(i)), x(i) + d01, tag + "transitive" + idx({i})));
    out.push_back({Term::cyl(1, x(i)), Term::cyl(1, x(0)), tag + "domain" + idx({i})});
    out.push_back({Term::cyl(0, Term::cyl(1, x(i))), Term::one(), tag + "nonzero" + idx({i})});
  }
  for (int i = 0; i <= p; ++i)
    for (int j = 0; j <= p; ++j) {
      if (i == j) continue;
      std::vector<Term> rest;
      for (int k = 0; k <= p; ++k)
        if (k != i && k != j) rest.push_back(x(k));
      out.push_back({relprod(x(i), x(j)), sum(rest), tag + "compose" + idx({i, j})});
    }
  if (!with_y) return out;

  out.push_back({cyl_chain(coords_from(1, alpha), yv(0)), Term::cyl(1, x(0)), tag + "y.domain"});
  for (int i = 0; i < p - 1; ++i) out.push_back(le(yv(i), x(0), tag + "y.below" + idx({i})));
  for (int i = 0; i < p - 1; ++i)
    for (int j = i + 1; j < p - 1; ++j)
      out.push_back({yv(i) * yv(j), Term::zero(), tag + "y.disjoint" + idx({i, j})});
  for (int i = 0; i < p - 1; ++i) out.push_back({Term::cyl(0, yv(i)), Term::cyl(0, yv(0)), tag + "y.c0" + idx({i})});
  for (int i = 0; i < p - 1; ++i) out.push_back({Term::cyl(1, yv(i)), Term::cyl(1, yv(0)), tag + "y.c1" + idx({i})});
  out.push_back({Term::transp(0, 1, yv(0)), yv(0), tag + "y.symmetric"});
  return out;
}

}  // namespace

std::vector<Equation> gen_Ep(int p, int alpha) { return build_E(p, alpha, true); }

std::vector<Equation> gen_Eq0(int q, int alpha) { return build_E(q, alpha, false); }

Equation gen_ep(int p, int alpha) {
  std::vector<Term> factors;
  const auto all = coords_from(0, alpha);
  for (const auto& eq : gen_Ep(p, alpha)) factors.push_back(-cyl_chain(all, symdiff(eq.lhs, eq.rhs)));
  return {product(factors), Term::zero(), "e" + std::to_string(p)};
}

Evaluation distinguished_eval(const AtomAlgebra& ap) {
  const int p = ap.p;
  if (p < 3 || ap.lyndon.size() != static_cast<std::size_t>(p + 1))
    throw InvalidArgument("distinguished evaluation needs the R_i x T atom sets");
  Evaluation e;
  for (int i = 0; i <= p; ++i) {
    Bitset v = ap.lyndon[static_cast<std::size_t>(i)];
    for (int c = ap.alpha - 1; c >= 2; --c) v = ap.cyl_of(c, v);
    e[var_x(p, i)] = std::move(v);
  }
  const Perm id = Perm::identity(ap.alpha);
  for (int k = 0; k < p - 1; ++k) {
    auto at = ap.q_atom(id, k);
    if (!at) throw InvalidArgument("no atom labelled (Id, " + std::to_string(k) + ")");
    e[var_y(p, k)] = ap.atom(*at);
  }
  return e;
}

// ---------------------------------------------------------------- E_q^0 search

json Eq0Result::to_json() const {
  json j = {{"sat", sat},
            {"solutions", solutions},
            {"binary_atoms", binary_atoms},
            {"orbits", orbits},
            {"nodes", nodes},
            {"leaves", leaves},
            {"recovers_lyndon", recovers_lyndon}};
  if (sat) {
    json a = json::array();
    for (const auto& b : assignment) a.push_back(atoms_json(b));
    j["assignment"] = std::move(a);
  }
  return j;
}

namespace {

struct Eq0Search {
  const AtomAlgebra& ap;
  int classes;
  std::size_t budget;
  std::vector<Equation> eqs;
  std::vector<Bitset> orbits;
  std::vector<int> assign;
  std::vector<std::set<Bitset, bool (*)(const Bitset&, const Bitset&)>> found;
  Eq0Result res;

  static bool less(const Bitset& a, const Bitset& b) { return a.words() < b.words(); }

  void leaf() {
    ++res.leaves;
    Evaluation e;
    for (int c = 0; c < classes; ++c) e[static_cast<std::size_t>(c)] = ap.zero();
    for (std::size_t o = 0; o < orbits.size(); ++o)
      if (assign[o] >= 0) e[static_cast<std::size_t>(assign[o])] |= orbits[o];
    for (const auto& eq : eqs)
      if (!(eval(ap, eq.lhs, e) == eval(ap, eq.rhs, e))) return;
    if (res.solutions++ == 0) {
      res.sat = true;
      for (int c = 0; c < classes; ++c) res.assignment.push_back(e[static_cast<std::size_t>(c)]);
    }
    std::set<Bitset, bool (*)(const Bitset&, const Bitset&)> s(&less);
    for (auto& [k, v] : e) s.insert(v);
    found.push_back(std::move(s));
  }

  void dfs(std::size_t o, int used) {
    if (++res.nodes > budget) throw BudgetExceeded(budget, "E_q^0 search nodes");
    if (static_cast<int>(orbits.size() - o) < classes - used) return;
    if (o == orbits.size()) {
      leaf();
      return;
    }
    for (int c = -1; c <= std::min(used, classes - 1); ++c) {
      assign[o] = c;
      dfs(o + 1, c == used ? used + 1 : used);
    }
    assign[o] = -1;
  }
};

}  // namespace

Eq0Result solve_Eq0(const AtomAlgebra& ap, int q, std::size_t budget) {
  check_witness_params(q, ap.alpha);
  const std::size_t n = ap.size();
  Eq0Search s{ap, q + 1, budget, gen_Eq0(q, ap.alpha), {}, {}, {}, {}};

  // binary atoms: the distinct c_2...c_{alpha-1} images of atoms
  std::vector<Bitset> bin;
  std::unordered_map<Bitset, std::size_t, BitsetHash> seen;
  for (std::size_t a = 0; a < n; ++a) {
    Bitset v = ap.atom(a);
    for (int c = ap.alpha - 1; c >= 2; --c) v = ap.cyl_of(c, v);
    if (seen.emplace(v, bin.size()).second) bin.push_back(std::move(v));
  }
  s.res.binary_atoms = bin.size();

  // converse orbits; an orbit touching d_01 cannot lie below -d_01
  const std::size_t B = bin.size();
  std::vector<std::size_t> parent(B);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  const Term conv = converse(Term::var(0));
  for (std::size_t b = 0; b < B; ++b) {
    Bitset cb = eval(ap, conv, {{0, bin[b]}});
    for (std::size_t d = 0; d < B; ++d)
      if (cb.intersects(bin[d])) parent[find(d)] = find(b);
  }
  const Bitset& d01 = ap.diag_of(0, 1);
  std::vector<bool> dead(B, false);
  for (std::size_t b = 0; b < B; ++b)
    if (bin[b].intersects(d01)) dead[find(b)] = true;
  std::map<std::size_t, Bitset> by_root;
  for (std::size_t b = 0; b < B; ++b) {
    std::size_t r = find(b);
    if (dead[r]) continue;
    auto it = by_root.try_emplace(r, Bitset(n)).first;
    it->second |= bin[b];
  }
  for (auto& [r, v] : by_root) s.orbits.push_back(v);
  std::sort(s.orbits.begin(), s.orbits.end(), [](const Bitset& a, const Bitset& b) { return a.first() < b.first(); });
  s.res.orbits = s.orbits.size();

  s.assign.assign(s.orbits.size(), -1);
  s.found.clear();
  s.dfs(0, 0);

  if (s.res.sat && q == ap.p && ap.lyndon.size() == static_cast<std::size_t>(q + 1)) {
    auto dist = distinguished_eval(ap);
    std::set<Bitset, bool (*)(const Bitset&, const Bitset&)> want(&Eq0Search::less);
    for (int i = 0; i <= q; ++i) want.insert(dist.at(var_x(q, i)));
    s.res.recovers_lyndon = std::all_of(s.found.begin(), s.found.end(), [&](const auto& f) { return f == want; });
  }
  return s.res;
}

CheckReport witness_report(const AtomAlgebra& ap, const std::vector<int>& against) {
  const int p = ap.p;
  const std::string P = std::to_string(p);
  CheckReport rep;
  rep.command = "witness";
  rep.parameters = {{"p", p}, {"alpha", ap.alpha}, {"against", against}};

  Stopwatch sw;
  const auto dist = distinguished_eval(ap);
  const auto E = gen_Ep(p, ap.alpha);
  json failed = json::array();
  for (const auto& eq : E)
    if (!(eval(ap, eq.lhs, dist) == eval(ap, eq.rhs, dist))) failed.push_back(eq.origin);
  rep.add("E" + P + ".passes_under_distinguished", failed.empty(), failed.empty() ? json(nullptr) : failed,
          {{"equations", E.size()}}, sw.millis());

  sw = Stopwatch();
  std::vector<int> coords;
  for (int i = 0; i < ap.alpha; ++i) coords.push_back(i);
  json not_one = json::array();
  for (const auto& eq : E) {
    Bitset f = eval(ap, -cyl_chain(coords, symdiff(eq.lhs, eq.rhs)), dist);
    if (!(f == ap.one())) not_one.push_back(eq.origin);
  }
  rep.add("e" + P + ".factors_evaluate_to_1", not_one.empty(), not_one.empty() ? json(nullptr) : not_one,
          {{"factors", E.size()}}, sw.millis());

  sw = Stopwatch();
  const Equation ep = gen_ep(p, ap.alpha);
  Bitset lhs = eval(ap, ep.lhs, dist);
  bool is_one = lhs == ap.one();
  rep.add("e" + P + ".fails_in_A" + P, is_one, is_one ? json(nullptr) : json{{"lhs", atoms_json(lhs)}},
          {{"lhs_is_1", is_one}, {"evaluation", "distinguished"}}, sw.millis());

  for (int q : against) {
    sw = Stopwatch();
    Eq0Result r = solve_Eq0(ap, q);
    const std::string Q = std::to_string(q);
    if (q == p) {
      rep.add("E" + Q + "^0.sat_recovers_lyndon", r.sat && r.recovers_lyndon, r.sat ? json(nullptr) : json("unsat"),
              r.to_json(), sw.millis());
    } else {
      json w = nullptr;
      if (r.sat) w = r.to_json()["assignment"];
      rep.add("e" + Q + ".holds_in_A" + P + "_via_Eq0_unsat", !r.sat, w, r.to_json(), sw.millis());
    }
  }
  return rep;
}

}  // namespace pealab
