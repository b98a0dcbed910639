#pragma once

#include <compare>
#include <string>
#include <vector>

#include "wpa/quiver.hpp"

namespace wpa {

/// Permutation of the slots 0..n-1, stored as the image list.
/// Composition is functional: (a * b)(x) = a(b(x)).
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<int> images);

  static Perm identity(int n);
  /// The transposition swapping slots i and j (0-based).
  static Perm transposition(int n, int i, int j);
  /// All permutations of n slots in lexicographic order of their image lists.
  static std::vector<Perm> all(int n);

  int n() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return img_; }

  Perm operator*(const Perm& o) const;
  Perm inverse() const;
  bool is_identity() const;
  int sign() const;
  /// Moves the entry at slot p to slot sigma(p).
  Labels act(const Labels& labels) const;
  /// Cycle notation with 1-based slots, "id" for the identity.
  std::string str() const;

  friend auto operator<=>(const Perm&, const Perm&) = default;
  friend bool operator==(const Perm&, const Perm&) = default;

 private:
  std::vector<int> img_;
};

}  // namespace wpa
