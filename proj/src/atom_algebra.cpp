#include "pealab/atom_algebra.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <unordered_map>

#include "pealab/error.hpp"

namespace pealab {

Bitset AtomAlgebra::one() const {
  Bitset b(size());
  b.fill();
  return b;
}

Bitset AtomAlgebra::atom(std::size_t a) const {
  Bitset b(size());
  b.set(a);
  return b;
}

namespace {

void check_coord(int alpha, int i) {
  if (i < 0 || i >= alpha) throw IndexOutOfRange("coordinate " + std::to_string(i) + " out of range");
}

}  // namespace

void AtomAlgebra::index() {
  groups_.assign(static_cast<std::size_t>(alpha), {});
  for (std::size_t i = 0; i < static_cast<std::size_t>(alpha); ++i) {
    std::unordered_map<Bitset, std::size_t, BitsetHash> seen;
    for (std::size_t a = 0; a < size(); ++a) {
      auto [it, fresh] = seen.try_emplace(cyl[i][a], groups_[i].size());
      if (fresh) groups_[i].push_back(CylGroup{Bitset(size()), cyl[i][a]});
      groups_[i][it->second].members.set(a);
    }
  }
}

Bitset AtomAlgebra::cyl_of(int i, const Bitset& x) const {
  check_coord(alpha, i);
  Bitset out(size());
  if (groups_.size() == static_cast<std::size_t>(alpha)) {
    for (const auto& g : groups_[static_cast<std::size_t>(i)])
      if (g.members.intersects(x)) out |= g.image;
    return out;
  }
  x.for_each([&](std::size_t a) { out |= cyl[static_cast<std::size_t>(i)][a]; });
  return out;
}

const Bitset& AtomAlgebra::diag_of(int i, int j) const {
  check_coord(alpha, i);
  check_coord(alpha, j);
  return diag[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

Bitset AtomAlgebra::transp_of(int i, int j, const Bitset& x) const {
  check_coord(alpha, i);
  check_coord(alpha, j);
  const auto& row = effective_transp()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  Bitset out(size());
  x.for_each([&](std::size_t a) { out.set(row[a]); });
  return out;
}

std::optional<std::size_t> AtomAlgebra::q_atom(const Perm& tau_plus, int k) const {
  for (std::size_t a = 0; a < size(); ++a)
    if (labels[a].kind == AtomLabel::Kind::Q && labels[a].k == k && labels[a].tau_plus == tau_plus) return a;
  return std::nullopt;
}

AtomAlgebra algebra_from_table(const AtomTable& table, const std::vector<ConcreteRelation>& lyndon) {
  AtomAlgebra a;
  a.p = table.p;
  a.alpha = table.alpha;
  a.labels = table.labels;
  a.cyl = table.cyl;
  a.diag = table.diag;
  a.transp = table.transp;
  for (const auto& r : lyndon) {
    Bitset set(table.size());
    r.bits().for_each([&](std::size_t t) { set.set(table.atom_of[t]); });
    a.lyndon.push_back(std::move(set));
  }
  a.index();
  return a;
}

AtomAlgebra build_Ap(const AtomTable& table, const std::vector<ConcreteRelation>& lyndon) {
  AtomAlgebra a = algebra_from_table(table, lyndon);
  std::map<std::pair<Perm, int>, std::size_t> by_label;
  for (std::size_t x = 0; x < a.size(); ++x) {
    const auto& l = a.labels[x];
    if (l.kind != AtomLabel::Kind::Q) continue;
    if (!by_label.emplace(std::make_pair(l.tau_plus, l.k), x).second)
      throw LabelAmbiguity("label (" + l.tau_plus.to_string() + "," + std::to_string(l.k) + ") used twice");
  }
  TranspTable star = a.transp;
  for (int i = 0; i < a.alpha; ++i)
    for (int j = 0; j < a.alpha; ++j) {
      const Perm t = Perm::transposition(a.alpha, i, j);
      for (std::size_t x = 0; x < a.size(); ++x) {
        const auto& l = a.labels[x];
        if (l.kind != AtomLabel::Kind::Q) continue;
        const auto it = by_label.find({(t * l.tau_plus).plus(), l.k});
        if (it == by_label.end()) throw LabelAmbiguity("no atom for the P* image of atom " + std::to_string(x));
        star[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][x] = it->second;
      }
    }
  a.transp_star = std::move(star);
  return a;
}

AtomAlgebra build_Ap(const SetAlgebraBuild& b) { return build_Ap(b.table, b.r_times_T); }

Bitset s_star_word(const std::vector<Transposition>& word, const Bitset& x, const AtomAlgebra& a) {
  Bitset cur = x;
  for (auto it = word.rbegin(); it != word.rend(); ++it) cur = a.transp_of(it->first, it->second, cur);
  return cur;
}

Bitset s_star(const Perm& sigma, const Bitset& x, const AtomAlgebra& a) { return s_star_word(perm_word(sigma), x, a); }

ConcreteRelation ConcreteAtomSystem::element(const Bitset& set) const {
  ConcreteRelation r(space);
  set.for_each([&](std::size_t a) { r |= atoms[a]; });
  return r;
}

namespace {

Bitset map_set(const Bitset& x, const std::vector<std::size_t>& h, std::size_t target_size) {
  Bitset out(target_size);
  x.for_each([&](std::size_t a) { out.set(h[a]); });
  return out;
}

json label_json(const AtomAlgebra& a, std::size_t x) { return {{"atom", x}, {"label", a.labels[x].to_json()}}; }

}  // namespace

CheckReport verify_iso(const AtomAlgebra& src, const ConcreteAtomSystem& dst, const std::vector<std::size_t>& h,
                       Signature sig, const IsoOptions& opt) {
  CheckReport rep;
  rep.command = "verify_iso";
  rep.parameters = {{"p", src.p}, {"alpha", src.alpha}, {"signature", to_json(sig)}, {"samples", opt.samples},
                    {"seed", opt.seed}};
  const Space& s = dst.space;
  const std::size_t n = src.size();
  const std::size_t none = s.tuple_count();

  json w = nullptr;
  if (h.size() != n || dst.atoms.size() != n) w = {{"issue", "size mismatch"}, {"source", n}, {"target", dst.atoms.size()}};
  std::vector<bool> hit(dst.atoms.size(), false);
  for (std::size_t a = 0; a < h.size() && w.is_null(); ++a) {
    if (h[a] >= dst.atoms.size() || hit[h[a]]) w = {{"issue", "not injective"}, {"atom", a}};
    else hit[h[a]] = true;
  }
  rep.add("bijective", w.is_null(), w);
  if (!w.is_null()) return rep;

  ConcreteRelation uni(s);
  w = nullptr;
  for (std::size_t a = 0; a < n && w.is_null(); ++a) {
    if (dst.atoms[a].empty()) w = {{"target_atom", a}, {"issue", "empty"}};
    else if (uni.intersects(dst.atoms[a])) w = {{"target_atom", a}, {"issue", "overlap"}};
    uni |= dst.atoms[a];
  }
  if (w.is_null() && !(uni == ConcreteRelation::unit(s))) w = {{"issue", "no cover"}, {"tuple", tuple_json(s, first_difference(uni, ConcreteRelation::unit(s)))}};
  rep.add("target_partition", w.is_null(), w);

  auto img = [&](const Bitset& x) { return dst.element(map_set(x, h, n)); };

  if (sig.cyl) {
    Stopwatch sw;
    w = nullptr;
    for (std::size_t a = 0; a < n && w.is_null(); ++a)
      for (int i = 0; i < src.alpha && w.is_null(); ++i) {
        const auto d = first_difference(img(src.cyl[static_cast<std::size_t>(i)][a]), cyl(i, dst.atoms[h[a]]));
        if (d != none) {
          w = label_json(src, a);
          w["op"] = "C" + std::to_string(i);
          w["tuple"] = tuple_json(s, d);
        }
      }
    rep.add("cyl", w.is_null(), w, nullptr, sw.millis());
  }
  if (sig.diag) {
    Stopwatch sw;
    w = nullptr;
    for (int i = 0; i < src.alpha && w.is_null(); ++i)
      for (int j = 0; j < src.alpha && w.is_null(); ++j) {
        const auto d = first_difference(img(src.diag_of(i, j)), diag(s, i, j));
        if (d != none) w = {{"op", "D" + std::to_string(i) + std::to_string(j)}, {"tuple", tuple_json(s, d)}};
      }
    rep.add("diag", w.is_null(), w, nullptr, sw.millis());
  }
  if (sig.transp) {
    Stopwatch sw;
    w = nullptr;
    const auto& table = src.effective_transp();
    for (int i = 0; i < src.alpha && w.is_null(); ++i)
      for (int j = i + 1; j < src.alpha && w.is_null(); ++j)
        for (std::size_t a = 0; a < n && w.is_null(); ++a) {
          const std::size_t want = h[table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][a]];
          const auto d = first_difference(dst.atoms[want], transp(i, j, dst.atoms[h[a]]));
          if (d != none) {
            w = label_json(src, a);
            w["op"] = "P" + std::to_string(i) + std::to_string(j);
            w["tuple"] = tuple_json(s, d);
          }
        }
    rep.add("transp", w.is_null(), w, nullptr, sw.millis());
  }

  // Element spot checks: random atom sets against one random operation each.
  struct Op {
    char kind;
    int i, j;
  };
  std::vector<Op> ops;
  for (int i = 0; i < src.alpha; ++i) {
    if (sig.cyl) ops.push_back({'C', i, i});
    for (int j = i + 1; j < src.alpha; ++j) {
      if (sig.transp) ops.push_back({'P', i, j});
      if (sig.diag) ops.push_back({'D', i, j});
    }
  }
  if (!ops.empty() && opt.samples > 0) {
    Stopwatch sw;
    std::mt19937_64 rng(opt.seed);
    std::bernoulli_distribution coin(0.5);
    std::uniform_int_distribution<std::size_t> pick(0, ops.size() - 1);
    w = nullptr;
    for (std::size_t k = 0; k < opt.samples && w.is_null(); ++k) {
      Bitset x(n);
      for (std::size_t a = 0; a < n; ++a)
        if (coin(rng)) x.set(a);
      const Op op = ops[pick(rng)];
      const auto hx = img(x);
      ConcreteRelation lhs(s), rhs(s);
      switch (op.kind) {
        case 'C':
          lhs = img(src.cyl_of(op.i, x));
          rhs = cyl(op.i, hx);
          break;
        case 'P':
          lhs = img(src.transp_of(op.i, op.j, x));
          rhs = transp(op.i, op.j, hx);
          break;
        default:
          lhs = img(x & src.diag_of(op.i, op.j));
          rhs = hx & diag(s, op.i, op.j);
      }
      if (!(lhs == rhs) || !(img(x.complement()) == hx.complement()))
        w = {{"sample", k}, {"op", std::string(1, op.kind) + std::to_string(op.i) + std::to_string(op.j)},
             {"atoms", x.indices()}};
    }
    rep.add("sampled_elements", w.is_null(), w, {{"samples", opt.samples}}, sw.millis());
  }
  return rep;
}

CheckReport nonrepresentability_certificate(const AtomAlgebra& ap, const SetAlgebraBuild& b) {
  CheckReport rep;
  rep.command = "nonrepresentability";
  rep.parameters = {{"p", b.p}, {"alpha", b.alpha}};
  rep.add("cyl_tables_equal", ap.cyl == b.table.cyl);
  rep.add("diag_tables_equal", ap.diag == b.table.diag);
  rep.add("atoms_equal", ap.size() == b.table.size() && ap.labels == b.table.labels);

  std::vector<std::size_t> id(ap.size());
  for (std::size_t a = 0; a < id.size(); ++a) id[a] = a;
  const ConcreteAtomSystem as{b.base.space(), b.table.atoms};
  const auto full = verify_iso(ap, as, id, Signature{}, IsoOptions{0, 0});
  const auto* t = full.find("transp");
  const bool fails_on_transp = t && !t->passed;
  bool at_q = false;
  if (fails_on_transp && t->witness.contains("label")) at_q = t->witness["label"]["type"] == "Q";
  rep.add("identity_fails_on_transp_at_Q_atom", fails_on_transp && at_q, fails_on_transp ? t->witness : json(nullptr));
  rep.add("identity_passes_transposition_free_reduct",
          verify_iso(ap, as, id, Signature{true, true, false}, IsoOptions{100, 1}).passed());
  return rep;
}

namespace {

std::vector<std::size_t> identity_map(std::size_t n) {
  std::vector<std::size_t> id(n);
  for (std::size_t a = 0; a < n; ++a) id[a] = a;
  return id;
}

// Runs the signature check and the excluded-operation sanity check.
void finish_reduct(IsoWitness& out, const AtomAlgebra& ap, Signature sig, Signature excluded, const IsoOptions& opt) {
  out.h = identity_map(ap.size());
  out.report = verify_iso(ap, out.target, out.h, sig, opt);
  const auto neg = verify_iso(ap, out.target, out.h, excluded, IsoOptions{0, 0});
  const CheckRecord* bad = nullptr;
  for (const auto& r : neg.records)
    if (!r.passed) bad = &r;
  out.report.add("excluded_operation_fails", bad != nullptr, bad ? bad->witness : json(nullptr));
}

}  // namespace

IsoWitness reduct_rep_cylfree(const AtomAlgebra& ap, const SetAlgebraBuild& b, const IsoOptions& opt) {
  IsoWitness out;
  const auto hf = build_H_cylfree(b.base, b.plane);
  out.target.space = b.base.space();
  for (std::size_t a = 0; a < ap.size(); ++a) {
    const auto& l = ap.labels[a];
    out.target.atoms.push_back(l.kind == AtomLabel::Kind::Q ? s_tau(l.tau_plus, hf.parts[static_cast<std::size_t>(l.k)])
                                                            : b.table.atoms[a]);
  }
  finish_reduct(out, ap, Signature{false, true, true}, Signature{true, false, false}, opt);
  out.report.command = "reduct_cylfree";
  return out;
}

IsoWitness reduct_rep_diagfree(const AtomAlgebra& ap, const SetAlgebraBuild& b, const IsoOptions& opt) {
  IsoWitness out;
  const Doubling dbl{b.base.size()};
  const auto hd = build_H_diagfree(b.q, dbl);
  out.target.space = dbl.doubled_space(b.alpha);
  for (std::size_t a = 0; a < ap.size(); ++a) {
    const auto& l = ap.labels[a];
    out.target.atoms.push_back(l.kind == AtomLabel::Kind::Q ? s_tau(l.tau_plus, hd.parts[static_cast<std::size_t>(l.k)])
                                                            : dbl.lift(b.table.atoms[a]));
  }
  finish_reduct(out, ap, Signature{true, false, true}, Signature{false, true, false}, opt);
  out.report.command = "reduct_diagfree";

  std::vector<std::size_t> w(static_cast<std::size_t>(b.alpha), 0);
  w[1] = dbl.image(0);
  const auto fd = dbl.lift(diag(b.base.space(), 0, 1));
  const bool breaks = fd.contains(w) && !diag(out.target.space, 0, 1).contains(w);
  out.report.add("doubling_breaks_diagonal", breaks, json(w));
  return out;
}

MergeResult merge_construction(const AtomAlgebra& ap, const SetAlgebraBuild& b, int k, int m, const IsoOptions& opt) {
  const int p = b.p;
  if (k < 0 || m < 0 || k >= p - 1 || m >= p - 1 || k == m) throw InvalidArgument("need distinct k, m < p-1");
  if (m != p - 2 - k) throw UnsupportedCase("only m = p-2-k is implemented");
  if (!ap.transp_star) throw InvalidArgument("A_p required");
  const int lo = std::min(k, m), hi = std::max(k, m);

  // Merged class index: classes of {0..p-2} with lo ~ hi, numbered by minimum.
  std::vector<int> merged_index(static_cast<std::size_t>(p - 1));
  for (int q = 0, next = 0; q < p - 1; ++q) merged_index[static_cast<std::size_t>(q)] = q == hi ? -1 : next++;
  merged_index[static_cast<std::size_t>(hi)] = merged_index[static_cast<std::size_t>(lo)];

  MergeResult res;
  const std::size_t n = ap.size();
  std::vector<std::size_t> c_of(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    if (c_of[a] != n) continue;
    Bitset mem(n);
    mem.set(a);
    const auto& l = ap.labels[a];
    if (l.kind == AtomLabel::Kind::Q && (l.k == lo || l.k == hi)) {
      const auto partner = ap.q_atom(l.tau_plus, l.k == lo ? hi : lo);
      if (!partner) throw InvalidArgument("missing Q partner atom");
      mem.set(*partner);
    }
    mem.for_each([&](std::size_t x) { c_of[x] = res.members.size(); });
    res.members.push_back(std::move(mem));
  }
  const std::size_t nc = res.members.size();

  AtomAlgebra& c = res.c;
  c.p = p;
  c.alpha = ap.alpha;
  for (std::size_t x = 0; x < nc; ++x) {
    const auto& l = ap.labels[res.members[x].first()];
    AtomLabel cl = l;
    if (l.kind == AtomLabel::Kind::Q) cl.k = merged_index[static_cast<std::size_t>(l.k)];
    c.labels.push_back(cl);
  }
  int b_id = 0;
  for (auto& l : c.labels)
    if (l.kind == AtomLabel::Kind::B) l.b = b_id++;

  // Atom set of an A_p element in C, if it is a union of C atoms.
  auto to_c = [&](const Bitset& x, bool& exact) {
    Bitset out(nc);
    x.for_each([&](std::size_t a) { out.set(c_of[a]); });
    Bitset back(n);
    out.for_each([&](std::size_t y) { back |= res.members[y]; });
    exact = back == x;
    return out;
  };

  const auto alpha = static_cast<std::size_t>(ap.alpha);
  json w_cyl = nullptr, w_diag = nullptr, w_tr = nullptr;
  c.cyl.assign(alpha, std::vector<Bitset>(nc, Bitset(nc)));
  for (std::size_t i = 0; i < alpha; ++i)
    for (std::size_t x = 0; x < nc; ++x) {
      bool exact = true;
      c.cyl[i][x] = to_c(ap.cyl_of(static_cast<int>(i), res.members[x]), exact);
      if (!exact && w_cyl.is_null()) w_cyl = {{"c_atom", x}, {"coord", i}};
    }
  c.diag.assign(alpha, std::vector<Bitset>(alpha, Bitset(nc)));
  for (std::size_t i = 0; i < alpha; ++i)
    for (std::size_t j = 0; j < alpha; ++j) {
      bool exact = true;
      c.diag[i][j] = to_c(ap.diag[i][j], exact);
      if (!exact && w_diag.is_null()) w_diag = {{"diag", {i, j}}};
    }
  c.transp.assign(alpha, std::vector<std::vector<std::size_t>>(alpha, std::vector<std::size_t>(nc)));
  for (std::size_t i = 0; i < alpha; ++i)
    for (std::size_t j = 0; j < alpha; ++j)
      for (std::size_t x = 0; x < nc; ++x) {
        bool exact = true;
        const auto img = to_c(ap.transp_of(static_cast<int>(i), static_cast<int>(j), res.members[x]), exact);
        if ((!exact || img.count() != 1) && w_tr.is_null()) w_tr = {{"c_atom", x}, {"transp", {i, j}}};
        c.transp[i][j][x] = img.first();
      }
  c.transp_star = c.transp;
  for (const auto& l : ap.lyndon) {
    bool exact = true;
    c.lyndon.push_back(to_c(l, exact));
  }
  c.index();
  res.report.command = "merge";
  res.report.parameters = {{"p", p}, {"alpha", ap.alpha}, {"k", k}, {"m", m}};
  res.report.add("C_closed_cyl", w_cyl.is_null(), w_cyl);
  res.report.add("C_closed_diag", w_diag.is_null(), w_diag);
  res.report.add("C_closed_transp_star", w_tr.is_null(), w_tr);
  res.report.add("merged_class_count", nc == n - plus_perms(ap.alpha).size(), nullptr,
                 {{"C_atoms", nc}, {"A_atoms", n}});

  const auto kf = build_K(b.base, b.plane);
  res.iso.target.space = b.base.space();
  for (std::size_t x = 0; x < nc; ++x) {
    const auto& l = c.labels[x];
    res.iso.target.atoms.push_back(l.kind == AtomLabel::Kind::Q
                                       ? s_tau(l.tau_plus, kf.parts[static_cast<std::size_t>(l.k)])
                                       : b.table.atoms[res.members[x].first()]);
  }
  res.iso.h = identity_map(nc);
  res.iso.report = verify_iso(c, res.iso.target, res.iso.h, Signature{}, opt);
  res.report.append(res.iso.report, "iso.");
  return res;
}

namespace {

json set_json(const Bitset& b) { return b.indices(); }

Bitset set_from(const json& j, std::size_t n) {
  Bitset b(n);
  for (const auto& v : j) b.set(v.get<std::size_t>());
  return b;
}

json transp_json(const TranspTable& t) {
  json out = json::array();
  for (const auto& row : t) {
    json r = json::array();
    for (const auto& col : row) r.push_back(col);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

json algebra_to_json(const AtomAlgebra& a, const std::vector<ConcreteRelation>* concrete) {
  json j;
  j["schema"] = kReportSchema;
  j["p"] = a.p;
  j["alpha"] = a.alpha;
  json atoms = json::array();
  for (std::size_t x = 0; x < a.size(); ++x) {
    json at = {{"id", x}, {"label", a.labels[x].to_json()}};
    if (concrete) at["tuples"] = (*concrete)[x].bits().indices();
    atoms.push_back(std::move(at));
  }
  j["atoms"] = std::move(atoms);
  json cyl = json::array();
  for (const auto& row : a.cyl) {
    json r = json::array();
    for (const auto& s : row) r.push_back(set_json(s));
    cyl.push_back(std::move(r));
  }
  j["cyl"] = std::move(cyl);
  json diag = json::array();
  for (const auto& row : a.diag) {
    json r = json::array();
    for (const auto& s : row) r.push_back(set_json(s));
    diag.push_back(std::move(r));
  }
  j["diag"] = std::move(diag);
  j["transp"] = transp_json(a.transp);
  if (a.transp_star) j["transpStar"] = transp_json(*a.transp_star);
  json ly = json::array();
  for (const auto& l : a.lyndon) ly.push_back(set_json(l));
  j["lyndon"] = std::move(ly);
  return j;
}

AtomAlgebra algebra_from_json(const json& j) {
  try {
    AtomAlgebra a;
    a.p = j.at("p").get<int>();
    a.alpha = j.at("alpha").get<int>();
    const auto& atoms = j.at("atoms");
    const std::size_t n = atoms.size();
    for (const auto& at : atoms) {
      const auto& l = at.at("label");
      AtomLabel lab;
      if (l.at("type") == "Q") {
        lab.kind = AtomLabel::Kind::Q;
        lab.tau_plus = Perm(l.at("tauPlus").get<std::vector<int>>());
        lab.k = l.at("k").get<int>();
      } else {
        lab.b = l.at("id").get<int>();
      }
      a.labels.push_back(std::move(lab));
    }
    for (const auto& row : j.at("cyl")) {
      std::vector<Bitset> r;
      for (const auto& s : row) r.push_back(set_from(s, n));
      a.cyl.push_back(std::move(r));
    }
    for (const auto& row : j.at("diag")) {
      std::vector<Bitset> r;
      for (const auto& s : row) r.push_back(set_from(s, n));
      a.diag.push_back(std::move(r));
    }
    a.transp = j.at("transp").get<TranspTable>();
    if (j.contains("transpStar")) a.transp_star = j.at("transpStar").get<TranspTable>();
    if (j.contains("lyndon"))
      for (const auto& s : j.at("lyndon")) a.lyndon.push_back(set_from(s, n));
    if (a.cyl.size() != static_cast<std::size_t>(a.alpha) || a.transp.size() != static_cast<std::size_t>(a.alpha))
      throw InvalidArgument("table dimensions do not match alpha");
    a.index();
    return a;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed algebra file: ") + e.what());
  }
}

}  // namespace pealab
