#include "pealab/perm.hpp"

#include <algorithm>
#include <numeric>

#include "pealab/error.hpp"

namespace pealab {

Perm::Perm(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 0 || static_cast<std::size_t>(v) >= images_.size() || seen[static_cast<std::size_t>(v)])
      throw InvalidArgument("not a permutation: " + to_string());
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Perm Perm::identity(int alpha) {
  std::vector<int> im(static_cast<std::size_t>(alpha));
  std::iota(im.begin(), im.end(), 0);
  return Perm(std::move(im));
}

Perm Perm::transposition(int alpha, int i, int j) {
  if (i < 0 || j < 0 || i >= alpha || j >= alpha) throw IndexOutOfRange("transposition index out of range");
  auto im = identity(alpha).images_;
  std::swap(im[static_cast<std::size_t>(i)], im[static_cast<std::size_t>(j)]);
  return Perm(std::move(im));
}

Perm Perm::inverse() const {
  std::vector<int> im(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) im[static_cast<std::size_t>(images_[x])] = static_cast<int>(x);
  return Perm(std::move(im));
}

bool Perm::is_identity() const {
  for (std::size_t x = 0; x < images_.size(); ++x)
    if (images_[x] != static_cast<int>(x)) return false;
  return true;
}

Perm Perm::plus() const {
  if (is_plus_normal()) return *this;
  return *this * transposition(degree(), 0, 1);
}

std::string Perm::to_string() const {
  std::string s = "[";
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (x) s += ",";
    s += std::to_string(images_[x]);
  }
  return s + "]";
}

Perm operator*(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) throw InvalidArgument("degree mismatch in composition");
  std::vector<int> im(b.images_.size());
  for (std::size_t x = 0; x < im.size(); ++x) im[x] = a.images_[static_cast<std::size_t>(b.images_[x])];
  return Perm(std::move(im));
}

std::vector<Transposition> perm_word(const Perm& tau) {
  // Sorting the image sequence by adjacent swaps: swapping positions k,k+1
  // replaces pi by pi o [k,k+1]. With swaps s1..sm reaching the identity,
  // tau = sm o ... o s1.
  auto im = tau.images();
  std::vector<Transposition> swaps;
  for (std::size_t pass = 0; pass < im.size(); ++pass)
    for (std::size_t k = 0; k + 1 < im.size(); ++k)
      if (im[k] > im[k + 1]) {
        std::swap(im[k], im[k + 1]);
        swaps.emplace_back(static_cast<int>(k), static_cast<int>(k + 1));
      }
  std::reverse(swaps.begin(), swaps.end());
  return swaps;
}

Perm compose_word(int alpha, const std::vector<Transposition>& word) {
  Perm out = Perm::identity(alpha);
  for (auto [i, j] : word) out = out * Perm::transposition(alpha, i, j);
  return out;
}

std::vector<Perm> all_perms(int alpha) {
  std::vector<Perm> out;
  auto im = Perm::identity(alpha).images();
  do {
    out.emplace_back(im);
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

std::vector<Perm> plus_perms(int alpha) {
  std::vector<Perm> out;
  for (auto& t : all_perms(alpha))
    if (t.is_plus_normal()) out.push_back(t);
  return out;
}

}  // namespace pealab
