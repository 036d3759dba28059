#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace pealab {

/// A permutation of {0..alpha-1}, stored by its images.
///
/// Composition follows function order: (a * b)(x) = a(b(x)).
class Perm {
public:
  Perm() = default;
  /// Throws InvalidArgument unless `images` is a bijection of {0..n-1}.
  explicit Perm(std::vector<int> images);

  static Perm identity(int alpha);
  /// The transposition [i,j]; [i,i] is the identity.
  static Perm transposition(int alpha, int i, int j);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int x) const { return images_[static_cast<std::size_t>(x)]; }
  const std::vector<int>& images() const { return images_; }

  Perm inverse() const;
  bool is_identity() const;

  /// tau+ : tau itself when tau(0) < tau(1), otherwise tau o [0,1].
  Perm plus() const;
  bool is_plus_normal() const { return images_[0] < images_[1]; }

  std::string to_string() const;

  friend Perm operator*(const Perm& a, const Perm& b);
  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm& a, const Perm& b) { return a.images_ <=> b.images_; }

private:
  std::vector<int> images_;
};

using Transposition = std::pair<int, int>;

/// A word of transpositions [i1,j1],...,[ir,jr] whose composition
/// [i1,j1] o ... o [ir,jr] equals tau. Adjacent transpositions only, from a
/// bubble sort of the image sequence, so the word length is the inversion count.
std::vector<Transposition> perm_word(const Perm& tau);

/// Composition of a transposition word over degree alpha.
Perm compose_word(int alpha, const std::vector<Transposition>& word);

/// All permutations of {0..alpha-1} in lexicographic order of images.
std::vector<Perm> all_perms(int alpha);

/// The permutations with tau(0) < tau(1), in lexicographic order.
std::vector<Perm> plus_perms(int alpha);

}  // namespace pealab
