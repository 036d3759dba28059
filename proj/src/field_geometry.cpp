#include "pealab/field_geometry.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "pealab/error.hpp"

namespace pealab {

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(int p) : p_(p) {
  if (p < 3) throw InvalidArgument("field order must be >= 3, got " + std::to_string(p));
  if (!is_prime(p)) throw NotPrime(p);
}

int PrimeField::pow(int a, long long e) const {
  long long result = 1, base = a % p_;
  while (e > 0) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<int>(result);
}

int PrimeField::inv(int a) const {
  if (a % p_ == 0) throw InvalidArgument("zero has no inverse");
  return pow(a, p_ - 2);
}

BinaryRelation BinaryRelation::identity(std::size_t n) {
  BinaryRelation r(n);
  for (std::size_t a = 0; a < n; ++a) r.insert(a, a);
  return r;
}

BinaryRelation BinaryRelation::full(std::size_t n) {
  BinaryRelation r(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) r.insert(a, b);
  return r;
}

BinaryRelation BinaryRelation::converse() const {
  BinaryRelation r(n_);
  for (auto [a, b] : pairs()) r.insert(b, a);
  return r;
}

BinaryRelation BinaryRelation::compose(const BinaryRelation& s) const {
  BinaryRelation out(n_);
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t c = 0; c < n_; ++c) {
      if (!s.contains(a, c)) continue;
      for (std::size_t b = 0; b < n_; ++b)
        if (contains(c, b)) out.insert(a, b);
    }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> BinaryRelation::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  bits_.for_each([&](std::size_t i) { out.emplace_back(i / n_, i % n_); });
  return out;
}

std::vector<std::vector<std::size_t>> BinaryRelation::classes() const {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(n_, false);
  for (std::size_t a = 0; a < n_; ++a) {
    if (seen[a]) continue;
    std::vector<std::size_t> cls;
    for (std::size_t b = 0; b < n_; ++b)
      if (b == a || contains(a, b)) {
        cls.push_back(b);
        seen[b] = true;
      }
    out.push_back(std::move(cls));
  }
  return out;
}

AffinePlane build_plane(const PrimeField& f) {
  AffinePlane plane{f, f.order(), {}};
  const int p = f.order();
  plane.classes.resize(p + 1);
  for (int slope = 0; slope < p; ++slope)
    for (int c = 0; c < p; ++c) {
      std::vector<std::size_t> line;
      for (int a = 0; a < p; ++a) line.push_back(plane.point_index(a, f.add(f.mul(slope, a), c)));
      std::sort(line.begin(), line.end());
      plane.classes[slope].push_back(std::move(line));
    }
  for (int c = 0; c < p; ++c) {
    std::vector<std::size_t> line;
    for (int b = 0; b < p; ++b) line.push_back(plane.point_index(c, b));
    plane.classes[p].push_back(std::move(line));
  }
  return plane;
}

BinaryRelation LyndonRelations::equivalence(std::size_t i) const {
  return R.at(i) | BinaryRelation::identity(point_count());
}

LyndonRelations lyndon_relations(const AffinePlane& plane) {
  LyndonRelations rels{plane.p, {}};
  for (const auto& cls : plane.classes) {
    BinaryRelation r(plane.point_count());
    for (const auto& line : cls)
      for (auto u : line)
        for (auto v : line)
          if (u != v) r.insert(u, v);
    rels.R.push_back(std::move(r));
  }
  return rels;
}

namespace {

json pair_witness(std::size_t a, std::size_t b) { return json::array({a, b}); }

// First pair in `a` that is not in `b`, if any.
std::optional<std::pair<std::size_t, std::size_t>> first_difference(const BinaryRelation& a, const BinaryRelation& b) {
  Bitset diff = a.bits();
  diff.subtract(b.bits());
  auto i = diff.first();
  if (i == diff.size()) return std::nullopt;
  return std::make_pair(i / a.universe(), i % a.universe());
}

}  // namespace

CheckReport verify_lyndon(const LyndonRelations& rels) {
  CheckReport report;
  report.command = "verify_lyndon";
  report.parameters = {{"p", rels.p}, {"relations", rels.R.size()}};
  const std::size_t n = rels.point_count();
  const std::size_t m = rels.R.size();
  const auto id = BinaryRelation::identity(n);

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      auto meet = rels.R[i] & rels.R[j];
      auto w = first_difference(meet, BinaryRelation(n));
      report.add("disjoint R" + std::to_string(i) + " R" + std::to_string(j), !w,
                 w ? pair_witness(w->first, w->second) : json(nullptr));
    }

  BinaryRelation uni(n);
  for (const auto& r : rels.R) uni |= r;
  auto target = BinaryRelation::full(n).subtract(id);
  {
    auto w1 = first_difference(target, uni);
    auto w2 = first_difference(uni, target);
    auto w = w1 ? w1 : w2;
    report.add("union equals U0^2 - Id", !w, w ? pair_witness(w->first, w->second) : json(nullptr));
  }

  for (std::size_t i = 0; i < m; ++i) {
    const auto& r = rels.R[i];
    auto ws = first_difference(r, r.converse());
    report.add("symmetric R" + std::to_string(i), !ws, ws ? pair_witness(ws->first, ws->second) : json(nullptr));
    auto wi = first_difference(r & id, BinaryRelation(n));
    report.add("irreflexive R" + std::to_string(i), !wi, wi ? pair_witness(wi->first, wi->second) : json(nullptr));
    auto e = rels.equivalence(i);
    auto wt = first_difference(e.compose(e), e);
    report.add("transitive E" + std::to_string(i), !wt, wt ? pair_witness(wt->first, wt->second) : json(nullptr));
  }

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      auto comp = rels.R[i].compose(rels.R[j]);
      auto expect = target;
      expect.subtract(rels.R[i]).subtract(rels.R[j]);
      auto w1 = first_difference(comp, expect);
      auto w2 = first_difference(expect, comp);
      auto w = w1 ? w1 : w2;
      report.add("composition R" + std::to_string(i) + " o R" + std::to_string(j), !w,
                 w ? pair_witness(w->first, w->second) : json(nullptr));
    }
  return report;
}

}  // namespace pealab
