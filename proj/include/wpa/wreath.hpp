#pragma once

// The smash product T_B E # S_n: paths in the n-fold product of a doubled
// quiver, each followed by a permutation of the slots.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "wpa/lincomb.hpp"
#include "wpa/linalg.hpp"
#include "wpa/perm.hpp"
#include "wpa/quiver.hpp"

namespace wpa {

/// An edge of the doubled quiver placed at one slot of the product quiver.
struct Letter {
  int slot = 0;
  int edge = 0;
  friend auto operator<=>(const Letter&, const Letter&) = default;
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// path * perm. Letters are in product order: letters.back() is traversed
/// first, starting at tail. An empty path is the idempotent at tail == head.
struct WreathMonomial {
  Labels tail;
  Labels head;
  std::vector<Letter> letters;
  Perm perm;

  int degree() const { return static_cast<int>(letters.size()); }
  friend bool operator<(const WreathMonomial& a, const WreathMonomial& b);
  friend bool operator==(const WreathMonomial&, const WreathMonomial&) = default;
};

using WreathElement = LinComb<WreathMonomial>;

/// A tuple of plain paths, one per slot: the basis of (T_B E)^{⊗n}.
struct TensorMonomial {
  Labels tail;
  std::vector<std::vector<int>> paths;  // per slot, product order
  friend auto operator<=>(const TensorMonomial&, const TensorMonomial&) = default;
  friend bool operator==(const TensorMonomial&, const TensorMonomial&) = default;
};

using TensorElement = LinComb<TensorMonomial>;

/// A basis element of E_l: an edge at slot l together with idle labels on the
/// other slots. The entry labels[slot] is ignored.
struct SlotEdge {
  int slot = 0;
  int edge = 0;
  Labels labels;
};

enum class RelationKind { Moment, Bracket };

/// One defining relation: leading - lower, with leading homogeneous of degree
/// 2 (identity permutation) and lower of degree 0.
struct Relation {
  RelationKind kind = RelationKind::Moment;
  WreathElement leading;
  WreathElement lower;
  // Moment: labels and slot of the factor r_i. Bracket: slot < slot2 and the
  // two edges a (at slot) and b (at slot2); labels are the head labels.
  Labels labels;
  int slot = 0;
  int slot2 = -1;
  int edge_a = -1;
  int edge_b = -1;

  WreathElement element() const { return leading - lower; }
};

using RelationSet = std::vector<Relation>;

class WreathAlgebra {
 public:
  WreathAlgebra(DoubledQuiver q, int n);

  const DoubledQuiver& quiver() const { return pq_.factor(); }
  int n() const { return pq_.n(); }
  const ProductQuiver& product() const { return pq_; }
  const std::vector<Perm>& perms() const { return perms_; }

  /// Path monomial starting at tail; throws if the letters do not compose.
  WreathMonomial path(const Labels& tail, const std::vector<Letter>& letters,
                      const Perm& perm) const;
  WreathMonomial path(const Labels& tail, const std::vector<Letter>& letters) const;
  WreathElement anchor(const Labels& v) const;
  WreathElement anchor(const Labels& v, const Perm& p) const;
  /// Degree-1 element: edge at slot starting from the given labels.
  WreathElement letter(int slot, int edge, const Labels& tail) const;

  /// sigma(q): the path with every slot moved by sigma.
  WreathMonomial act(const Perm& sigma, const WreathMonomial& m) const;
  /// tau m tau^-1.
  WreathMonomial conjugate(const Perm& tau, const WreathMonomial& m) const;
  WreathElement conjugate(const Perm& tau, const WreathElement& x) const;

  /// Zero-product monomials yield false.
  bool multiply(const WreathMonomial& a, const WreathMonomial& b, WreathMonomial& out) const;
  WreathElement multiply(const WreathElement& a, const WreathElement& b) const;

  /// The two-term commutator of eps in E_l and eps2 in E_m (l != m).
  WreathElement bracket(const SlotEdge& eps, const SlotEdge& eps2) const;

  /// Splits each path into its n slot-wise plain paths.
  TensorElement upsilon(const WreathElement& x) const;
  TensorElement tensor_multiply(const TensorElement& a, const TensorElement& b) const;

  /// Generators of the ideal. For n == 1 only moment relations are produced.
  RelationSet relations(const std::vector<Scalar>& lambda, const Scalar& nu) const;

  /// All paths of the given length with identity permutation, sorted.
  std::vector<WreathMonomial> paths_of_length(int k) const;

  /// Dimensions of the degree 0..d pieces of the quotient by a homogeneous
  /// relation set (closed under S_n conjugation internally).
  std::vector<std::size_t> graded_dimension(const RelationSet& rels, int d) const;

 private:
  ProductQuiver pq_;
  std::vector<Perm> perms_;
};

/// Assigns consecutive coordinates to monomials on first sight.
class MonomialIndex {
 public:
  std::size_t index(const WreathMonomial& m);
  std::size_t size() const { return list_.size(); }
  const WreathMonomial& monomial(std::size_t i) const { return list_.at(i); }
  SparseVec vectorize(const WreathElement& x);

 private:
  std::map<WreathMonomial, std::size_t> ids_;
  std::vector<WreathMonomial> list_;
};

/// Applies the sign-twist a -> a*, a* -> -a for every flipped edge to the
/// relations of Q and checks that they span the same space as the relations of
/// reorient(Q, flip) (both inclusions).
bool orientation_iso_check(const Quiver& q, const std::set<int>& flip, int n,
                           const std::vector<Scalar>& lambda, const Scalar& nu);

std::string to_string(const DoubledQuiver& q, const WreathMonomial& m);
std::string to_string(const DoubledQuiver& q, const WreathElement& x);

}  // namespace wpa
