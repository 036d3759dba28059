#include "pealab/set_algebra.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "pealab/error.hpp"

namespace pealab {

json to_json(const Signature& s) {
  json ops = json::array({"+", "-"});
  if (s.cyl) ops.push_back("C");
  if (s.diag) ops.push_back("D");
  if (s.transp) ops.push_back("P");
  return ops;
}

std::size_t closure_budget() {
  if (const char* env = std::getenv("PEALAB_BUDGET")) {
    try {
      const auto v = std::stoull(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return std::size_t{1} << 20;
}

ConcreteRelation ClosedFamily::element(const Bitset& atom_set) const {
  ConcreteRelation r(space);
  atom_set.for_each([&](std::size_t a) { r |= atoms[a]; });
  return r;
}

std::optional<Bitset> ClosedFamily::decompose(const ConcreteRelation& x) const {
  if (!(x.space() == space)) return std::nullopt;
  Bitset set(atoms.size());
  x.bits().for_each([&](std::size_t t) { set.set(atom_of[t]); });
  if (!(element(set) == x)) return std::nullopt;
  return set;
}

std::vector<ConcreteRelation> ClosedFamily::elements(std::size_t cap) const {
  const std::size_t n = atoms.size();
  if (n >= 63 || (std::size_t{1} << n) > cap) throw BudgetExceeded(cap, "element count");
  std::vector<ConcreteRelation> out;
  out.reserve(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    ConcreteRelation r(space);
    for (std::size_t a = 0; a < n; ++a)
      if (mask >> a & 1) r |= atoms[a];
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const {
    std::size_t h = v.size();
    for (auto x : v) h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

class Interner {
public:
  std::uint32_t id(const std::vector<std::uint32_t>& key) {
    auto [it, fresh] = ids_.try_emplace(key, static_cast<std::uint32_t>(ids_.size()));
    return it->second;
  }
  std::size_t size() const { return ids_.size(); }

private:
  std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VecHash> ids_;
};

// Tuple index of s o [i,j] for every tuple s.
std::vector<std::uint32_t> transposed_index(const Space& s, int i, int j) {
  std::vector<std::uint32_t> out(s.tuple_count());
  const std::size_t si = s.stride(i), sj = s.stride(j);
  for (std::size_t t = 0; t < s.tuple_count(); ++t) {
    const std::size_t ci = s.coord(t, i), cj = s.coord(t, j);
    out[t] = static_cast<std::uint32_t>(t - ci * si - cj * sj + cj * si + ci * sj);
  }
  return out;
}

// Calls f(tuples of one i-line) for every i-line.
template <typename F>
void for_each_line(const Space& s, int i, F&& f) {
  const std::size_t stride = s.stride(i);
  const std::size_t block = stride * s.n;
  std::vector<std::size_t> line(s.n);
  for (std::size_t outer = 0; outer < s.tuple_count(); outer += block)
    for (std::size_t inner = 0; inner < stride; ++inner) {
      for (std::size_t v = 0; v < s.n; ++v) line[v] = outer + inner + v * stride;
      f(line);
    }
}

}  // namespace

ClosedFamily generate_subalgebra(const Space& space, const std::vector<ConcreteRelation>& gens, Signature signature,
                                 std::size_t cap) {
  for (const auto& g : gens)
    if (!(g.space() == space)) throw InvalidArgument("generator over a different space");

  ClosedFamily fam;
  fam.space = space;
  fam.generators = gens;
  fam.signature = signature;
  const std::size_t n_tuples = space.tuple_count();
  const int alpha = space.alpha;

  std::vector<ConcreteRelation> diags;
  if (signature.diag)
    for (int i = 0; i < alpha; ++i)
      for (int j = i + 1; j < alpha; ++j) diags.push_back(diag(space, i, j));

  std::vector<std::uint32_t> label(n_tuples);
  std::size_t count = 0;
  {
    Interner in;
    std::vector<std::uint32_t> key(gens.size() + diags.size());
    for (std::size_t t = 0; t < n_tuples; ++t) {
      for (std::size_t g = 0; g < gens.size(); ++g) key[g] = gens[g].contains(t);
      for (std::size_t d = 0; d < diags.size(); ++d) key[gens.size() + d] = diags[d].contains(t);
      label[t] = in.id(key);
    }
    count = in.size();
  }

  std::vector<std::vector<std::uint32_t>> swaps;
  if (signature.transp)
    for (int i = 0; i < alpha; ++i)
      for (int j = i + 1; j < alpha; ++j) swaps.push_back(transposed_index(space, i, j));

  const std::size_t width = 1 + (signature.cyl ? static_cast<std::size_t>(alpha) : 0) + swaps.size();
  std::vector<std::uint32_t> keys(n_tuples * width);
  while (true) {
    if (count > cap) throw BudgetExceeded(cap, "atom count");
    ++fam.rounds;
    for (std::size_t t = 0; t < n_tuples; ++t) keys[t * width] = label[t];
    std::size_t col = 1;
    if (signature.cyl)
      for (int i = 0; i < alpha; ++i, ++col) {
        Interner lines;
        std::vector<std::uint32_t> seen;
        for_each_line(space, i, [&](const std::vector<std::size_t>& line) {
          seen.clear();
          for (auto t : line) seen.push_back(label[t]);
          std::sort(seen.begin(), seen.end());
          seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
          const auto id = lines.id(seen);
          for (auto t : line) keys[t * width + col] = id;
        });
      }
    for (const auto& sw : swaps) {
      for (std::size_t t = 0; t < n_tuples; ++t) keys[t * width + col] = label[sw[t]];
      ++col;
    }
    Interner in;
    std::vector<std::uint32_t> key(width);
    std::vector<std::uint32_t> next(n_tuples);
    for (std::size_t t = 0; t < n_tuples; ++t) {
      std::copy_n(keys.begin() + static_cast<std::ptrdiff_t>(t * width), width, key.begin());
      next[t] = in.id(key);
    }
    const bool stable = in.size() == count;
    label.swap(next);
    count = in.size();
    if (stable) break;
  }

  fam.atom_of = std::move(label);
  fam.atoms.assign(count, ConcreteRelation(space));
  for (std::size_t t = 0; t < n_tuples; ++t) fam.atoms[fam.atom_of[t]].insert(t);
  return fam;
}

json AtomLabel::to_json() const {
  if (kind == Kind::Q) return {{"type", "Q"}, {"tauPlus", tau_plus.images()}, {"k", k}};
  return {{"type", "B"}, {"id", b}};
}

std::optional<std::size_t> AtomTable::find(const ConcreteRelation& r) const {
  if (r.empty() || !(r.space() == space)) return std::nullopt;
  const std::size_t a = atom_of[r.bits().first()];
  if (atoms[a] == r) return a;
  return std::nullopt;
}

AtomTable atoms_of(const ClosedFamily& fam) {
  AtomTable table;
  const Space& s = fam.space;
  const auto alpha = static_cast<std::size_t>(s.alpha);
  const std::size_t n = fam.atoms.size();
  table.alpha = s.alpha;
  table.space = s;
  table.atoms = fam.atoms;
  table.atom_of = fam.atom_of;
  table.labels.resize(n);
  for (std::size_t a = 0; a < n; ++a) table.labels[a].b = static_cast<int>(a);

  table.cyl.assign(alpha, std::vector<Bitset>(n, Bitset(n)));
  for (std::size_t i = 0; i < alpha; ++i) {
    Bitset seen(n);
    for_each_line(s, static_cast<int>(i), [&](const std::vector<std::size_t>& line) {
      seen.clear();
      for (auto t : line) seen.set(fam.atom_of[t]);
      seen.for_each([&](std::size_t a) { table.cyl[i][a] |= seen; });
    });
  }
  table.diag.assign(alpha, std::vector<Bitset>(alpha, Bitset(n)));
  for (std::size_t i = 0; i < alpha; ++i)
    for (std::size_t j = 0; j < alpha; ++j)
      diag(s, static_cast<int>(i), static_cast<int>(j)).bits().for_each([&](std::size_t t) {
        table.diag[i][j].set(fam.atom_of[t]);
      });
  table.transp.assign(alpha, std::vector<std::vector<std::size_t>>(alpha, std::vector<std::size_t>(n)));
  for (std::size_t i = 0; i < alpha; ++i)
    for (std::size_t j = 0; j < alpha; ++j) {
      const auto sw = transposed_index(s, static_cast<int>(i), static_cast<int>(j));
      for (std::size_t a = 0; a < n; ++a) table.transp[i][j][a] = fam.atom_of[sw[fam.atoms[a].bits().first()]];
    }
  return table;
}

void label_q_atoms(AtomTable& table, const RelationFamily& q) {
  table.p = q.p;
  for (auto& l : table.labels) l = AtomLabel{};
  for (const auto& tau : plus_perms(table.alpha))
    for (std::size_t k = 0; k < q.parts.size(); ++k) {
      const auto rel = s_tau(tau, q.parts[k]);
      const auto a = table.find(rel);
      if (!a) throw InvalidArgument("S_" + tau.to_string() + " Q_" + std::to_string(k) + " is not an atom");
      auto& l = table.labels[*a];
      if (l.kind == AtomLabel::Kind::Q)
        throw LabelAmbiguity("atom " + std::to_string(*a) + " labelled (" + l.tau_plus.to_string() + "," +
                             std::to_string(l.k) + ") and (" + tau.to_string() + "," + std::to_string(k) + ")");
      l.kind = AtomLabel::Kind::Q;
      l.tau_plus = tau;
      l.k = static_cast<int>(k);
    }
  int b = 0;
  for (auto& l : table.labels)
    if (l.kind == AtomLabel::Kind::B) l.b = b++;
}

CheckReport verify_atom_table(const AtomTable& table) {
  CheckReport rep;
  rep.command = "verify_atom_table";
  rep.parameters = {{"p", table.p}, {"alpha", table.alpha}, {"atoms", table.size()}};
  const Space& s = table.space;
  const std::size_t n = table.size();

  ConcreteRelation uni(s);
  json w = nullptr;
  for (std::size_t a = 0; a < n && w.is_null(); ++a) {
    if (table.atoms[a].empty()) w = {{"atom", a}, {"issue", "empty"}};
    if (uni.intersects(table.atoms[a])) w = {{"atom", a}, {"issue", "overlap"}};
    uni |= table.atoms[a];
  }
  rep.add("atoms_disjoint_nonempty", w.is_null(), w);
  rep.add("atoms_cover_unit", uni == ConcreteRelation::unit(s));

  auto union_of = [&](const Bitset& set) {
    ConcreteRelation r(s);
    set.for_each([&](std::size_t a) { r |= table.atoms[a]; });
    return r;
  };

  w = nullptr;
  for (int i = 0; i < s.alpha && w.is_null(); ++i)
    for (std::size_t a = 0; a < n && w.is_null(); ++a) {
      const auto want = cyl(i, table.atoms[a]);
      const auto got = union_of(table.cyl[static_cast<std::size_t>(i)][a]);
      const auto d = first_difference(want, got);
      if (d != s.tuple_count()) w = {{"atom", a}, {"coord", i}, {"tuple", tuple_json(s, d)}};
    }
  rep.add("cyl_table", w.is_null(), w);

  w = nullptr;
  for (int i = 0; i < s.alpha && w.is_null(); ++i)
    for (int j = 0; j < s.alpha && w.is_null(); ++j) {
      const auto d = first_difference(diag(s, i, j), union_of(table.diag[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
      if (d != s.tuple_count()) w = {{"diag", {i, j}}, {"tuple", tuple_json(s, d)}};
    }
  rep.add("diag_table", w.is_null(), w);

  w = nullptr;
  for (int i = 0; i < s.alpha && w.is_null(); ++i)
    for (int j = 0; j < s.alpha && w.is_null(); ++j) {
      const auto& row = table.transp[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      Bitset hit(n);
      for (std::size_t a = 0; a < n && w.is_null(); ++a) {
        hit.set(row[a]);
        if (!(transp(i, j, table.atoms[a]) == table.atoms[row[a]])) w = {{"atom", a}, {"transp", {i, j}}};
      }
      if (w.is_null() && hit.count() != n) w = {{"transp", {i, j}}, {"issue", "not a bijection"}};
    }
  rep.add("transp_table", w.is_null(), w);
  return rep;
}

SetAlgebraBuild::SetAlgebraBuild(int p_, int alpha_)
    : p(p_),
      alpha(alpha_),
      base(p_, alpha_),
      plane(build_plane(PrimeField(p_))),
      rels(lyndon_relations(plane)),
      q(build_Q(base, plane)) {
  for (const auto& r : rels.R) r_times_T.push_back(times_T(base, r));
  closure = generate_subalgebra(base.space(), generators(*this));
  table = atoms_of(closure);
  label_q_atoms(table, q);
}

std::vector<ConcreteRelation> generators(const SetAlgebraBuild& b) {
  std::vector<ConcreteRelation> g = b.q.parts;
  for (std::size_t i = 1; i < b.r_times_T.size(); ++i) g.push_back(b.r_times_T[i]);
  return g;
}

CheckReport atom_formula_check(const SetAlgebraBuild& b) {
  CheckReport rep;
  rep.command = "atom_formula";
  rep.parameters = {{"p", b.p}, {"alpha", b.alpha}};
  const Space s = b.base.space();
  const auto fam_b = generate_subalgebra(s, b.r_times_T);

  std::unordered_set<ConcreteRelation, ConcreteRelationHash> omitted, formula;
  for (const auto& tau : all_perms(b.alpha)) {
    omitted.insert(s_tau(tau, b.r_times_T[0]));
    for (const auto& qk : b.q.parts) formula.insert(s_tau(tau, qk));
  }
  std::size_t b_kept = 0;
  for (const auto& a : fam_b.atoms)
    if (!omitted.count(a)) {
      formula.insert(a);
      ++b_kept;
    }
  std::unordered_set<ConcreteRelation, ConcreteRelationHash> closure(b.closure.atoms.begin(), b.closure.atoms.end());

  json w = nullptr;
  for (const auto& a : closure)
    if (!formula.count(a)) {
      w = {{"side", "closure_only"}, {"tuple", tuple_json(s, a.bits().first())}};
      break;
    }
  if (w.is_null())
    for (const auto& a : formula)
      if (!closure.count(a)) {
        w = {{"side", "formula_only"}, {"tuple", tuple_json(s, a.bits().first())}};
        break;
      }
  rep.add("atoms_equal_formula", w.is_null(), w,
          {{"closure_atoms", closure.size()},
           {"formula_atoms", formula.size()},
           {"b_atoms", fam_b.atoms.size()},
           {"b_atoms_kept", b_kept}});

  w = nullptr;
  for (std::size_t i = 0; i < b.r_times_T.size() && w.is_null(); ++i)
    if (!std::count(fam_b.atoms.begin(), fam_b.atoms.end(), b.r_times_T[i])) w = {{"R", i}};
  rep.add("lyndon_products_are_B_atoms", w.is_null(), w);
  return rep;
}

CheckReport q_label_uniqueness_check(const SetAlgebraBuild& b) {
  CheckReport rep;
  rep.command = "q_label_uniqueness";
  rep.parameters = {{"p", b.p}, {"alpha", b.alpha}};
  const auto perms = all_perms(b.alpha);
  const int n = static_cast<int>(b.q.parts.size());
  const Perm swap01 = Perm::transposition(b.alpha, 0, 1);
  std::unordered_map<ConcreteRelation, std::vector<std::pair<Perm, int>>, ConcreteRelationHash> groups;
  for (const auto& tau : perms)
    for (int k = 0; k < n; ++k) groups[s_tau(tau, b.q.parts[static_cast<std::size_t>(k)])].emplace_back(tau, k);
  json w = nullptr;
  for (const auto& [rel, members] : groups) {
    for (const auto& [tau, k] : members)
      for (const auto& [sigma, j] : members) {
        const bool ok = (sigma == tau && j == k) || (sigma == tau * swap01 && j == n - 1 - k);
        if (!ok && w.is_null()) w = {{"tau", tau.images()}, {"k", k}, {"sigma", sigma.images()}, {"j", j}};
      }
  }
  rep.add("coincidences_only_via_01", w.is_null(), w,
          {{"distinct", groups.size()}, {"expected", plus_perms(b.alpha).size() * static_cast<std::size_t>(n)}});
  rep.add("distinct_count", groups.size() == plus_perms(b.alpha).size() * static_cast<std::size_t>(n));
  return rep;
}

}  // namespace pealab
