#include "pealab/lemmas.hpp"

#include <string>

#include "pealab/error.hpp"
#include "pealab/partitions.hpp"

namespace pealab {

namespace {

json pair_json(std::size_t a, std::size_t b) { return json::array({a, b}); }

// A pair in `have` missing from `want`, if any.
std::optional<std::pair<std::size_t, std::size_t>> outside(const BinaryRelation& have, const BinaryRelation& want) {
  const std::size_t n = have.universe();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (have.contains(a, b) && !want.contains(a, b)) return std::pair{a, b};
  return std::nullopt;
}

std::string rel_name(std::size_t i) { return "S_" + std::to_string(i); }

}  // namespace

CheckReport lemma_x_check(const std::vector<BinaryRelation>& s) {
  CheckReport rep;
  rep.command = "lemma_x";
  if (s.size() < 2) throw HypothesisFailed("count", "need q >= 1, i.e. at least two relations");
  const std::size_t n = s.front().universe();
  const std::size_t q = s.size() - 1;
  rep.parameters = {{"n", n}, {"q", q}};
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i].universe() != n) throw HypothesisFailed("universe", rel_name(i) + " lives on a different set");
  rep.add("hypothesis.count", true);

  const auto id = BinaryRelation::identity(n);
  const auto full = BinaryRelation::full(n);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (auto w = outside(id, s[i]))
      throw HypothesisFailed("equivalence", rel_name(i) + " not reflexive at " + std::to_string(w->first));
    if (auto w = outside(s[i].converse(), s[i]))
      throw HypothesisFailed("equivalence", rel_name(i) + " not symmetric at (" + std::to_string(w->second) + "," +
                                                std::to_string(w->first) + ")");
    if (auto w = outside(s[i].compose(s[i]), s[i]))
      throw HypothesisFailed("equivalence", rel_name(i) + " not transitive at (" + std::to_string(w->first) + "," +
                                                std::to_string(w->second) + ")");
    if (s[i] == id) throw HypothesisFailed("nontrivial", rel_name(i) + " is the identity");
  }
  rep.add("hypothesis.equivalences", true);
  rep.add("hypothesis.nontrivial", true);

  BinaryRelation uni(n);
  for (const auto& r : s) uni |= r;
  if (auto w = outside(full, uni))
    throw HypothesisFailed("union", "(" + std::to_string(w->first) + "," + std::to_string(w->second) + ") uncovered");
  rep.add("hypothesis.union", true);

  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (i == j) continue;
      if (i < j)
        if (auto w = outside(s[i] & s[j], id))
          throw HypothesisFailed("meet", rel_name(i) + " and " + rel_name(j) + " share (" + std::to_string(w->first) +
                                             "," + std::to_string(w->second) + ")");
      if (auto w = outside(full, s[i].compose(s[j])))
        throw HypothesisFailed("compose", rel_name(i) + " o " + rel_name(j) + " misses (" + std::to_string(w->first) +
                                              "," + std::to_string(w->second) + ")");
    }
  rep.add("hypothesis.meet", true);
  rep.add("hypothesis.compose", true);

  json sizes = json::array();
  bool all_q = true;
  for (const auto& c : s.front().classes()) {
    sizes.push_back(c.size());
    all_q = all_q && c.size() == q;
  }
  rep.add("class_sizes_equal_q", all_q, all_q ? json(nullptr) : sizes, {{"sizes", sizes}, {"q", q}});
  return rep;
}

std::vector<BinaryRelation> plane_equivalences(int p) {
  auto rels = lyndon_relations(build_plane(PrimeField(p)));
  std::vector<BinaryRelation> out;
  for (std::size_t i = 0; i < rels.R.size(); ++i) out.push_back(rels.equivalence(i));
  return out;
}

json YSearchResult::to_json() const {
  json j = {{"exists", exists()}, {"nodes", nodes}};
  if (system) {
    json rels = json::array();
    for (const auto& r : system->relations) {
      json ps = json::array();
      for (auto [a, b] : r.pairs())
        if (a < b) ps.push_back(pair_json(a, b));
      rels.push_back(std::move(ps));
    }
    j["relations"] = std::move(rels);
  }
  return j;
}

YSearchResult lemma_y_search(int n, std::size_t budget) {
  if (n < 2) throw InvalidArgument("lemma_y_search needs n >= 2");
  if (n > 64) throw InvalidArgument("lemma_y_search supports n <= 64");
  const int colors = n - 1;
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) edges.emplace_back(a, b);
  std::vector<std::uint64_t> used(static_cast<std::size_t>(n), 0);  // colour masks per vertex
  std::vector<int> colour(edges.size(), -1);
  YSearchResult res;

  auto dfs = [&](auto&& self, std::size_t e, int top) -> bool {
    if (++res.nodes > budget) throw BudgetExceeded(budget, "lemma_y search nodes");
    if (e == edges.size()) return true;
    auto [a, b] = edges[e];
    auto& ua = used[static_cast<std::size_t>(a)];
    auto& ub = used[static_cast<std::size_t>(b)];
    for (int c = 0; c < colors && c <= top + 1; ++c) {
      std::uint64_t bit = std::uint64_t{1} << c;
      if ((ua | ub) & bit) continue;
      ua |= bit;
      ub |= bit;
      colour[e] = c;
      if (self(self, e + 1, std::max(top, c))) return true;
      ua &= ~bit;
      ub &= ~bit;
    }
    return false;
  };
  if (dfs(dfs, 0, -1)) {
    FactorSystem f;
    f.relations.assign(static_cast<std::size_t>(colors), BinaryRelation(static_cast<std::size_t>(n)));
    for (std::size_t e = 0; e < edges.size(); ++e) {
      auto [a, b] = edges[e];
      auto& r = f.relations[static_cast<std::size_t>(colour[e])];
      r.insert(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
      r.insert(static_cast<std::size_t>(b), static_cast<std::size_t>(a));
    }
    res.system = std::move(f);
  }
  return res;
}

CheckReport verify_factor_system(int n, const FactorSystem& f) {
  CheckReport rep;
  rep.command = "verify_factor_system";
  rep.parameters = {{"n", n}};
  const auto N = static_cast<std::size_t>(n);
  rep.add("count", f.relations.size() + 1 == N, nullptr, {{"relations", f.relations.size()}});
  const auto id = BinaryRelation::identity(N);
  BinaryRelation uni(N);
  bool disjoint = true, symmetric = true, irreflexive = true, domain = true;
  for (const auto& r : f.relations) {
    disjoint = disjoint && !uni.bits().intersects(r.bits());
    uni |= r;
    symmetric = symmetric && r == r.converse();
    irreflexive = irreflexive && !r.bits().intersects(id.bits());
    for (std::size_t a = 0; a < N; ++a) {
      bool any = false;
      for (std::size_t b = 0; b < N; ++b) any = any || r.contains(a, b);
      domain = domain && any;
    }
  }
  rep.add("disjoint", disjoint);
  rep.add("symmetric", symmetric);
  rep.add("irreflexive", irreflexive);
  rep.add("full_domain", domain);
  rep.add("cover", (uni | id) == BinaryRelation::full(N) && !uni.bits().intersects(id.bits()));
  return rep;
}

CheckReport walecki_check(int m) {
  auto col = walecki_coloring(m);
  FactorSystem f;
  const auto N = static_cast<std::size_t>(m);
  for (const auto& cls : col) {
    BinaryRelation r(N);
    for (auto [a, b] : cls) {
      r.insert(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
      r.insert(static_cast<std::size_t>(b), static_cast<std::size_t>(a));
    }
    f.relations.push_back(std::move(r));
  }
  CheckReport rep = verify_factor_system(m, f);
  rep.command = "walecki";
  bool sizes = true;
  for (const auto& cls : col) sizes = sizes && cls.size() * 2 == N;
  rep.add("perfect_matchings", sizes);
  return rep;
}

}  // namespace pealab
