#pragma once

// Symplectic reflection algebras H_{t,c} of S_n ⋉ Γ^n: reflections, the forms
// omega_s, the commutator map kappa, the explicit relations, and a rewriting
// normal form.
//
// V = L^n has basis letters 0..2n-1 with x_i = 2i and y_i = 2i+1. A monomial
// is a word in letters followed by a group element on the right.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "wpa/groups.hpp"
#include "wpa/lincomb.hpp"

namespace wpa {

using VecV = std::vector<Scalar>;

inline int x_letter(int slot) { return 2 * slot; }
inline int y_letter(int slot) { return 2 * slot + 1; }

struct SraParams {
  Scalar t;
  Scalar k;
  std::vector<Scalar> cprime;  // indexed by group element; the identity entry is 0
};

/// cprime lists the values on the non-identity elements in index order.
/// Throws unless they are constant on conjugacy classes.
SraParams make_params(const FiniteGroup& G, const Scalar& t, const Scalar& k,
                      const std::vector<Scalar>& cprime);

enum class ReflectionKind { S, Gamma };

struct SymplecticReflection {
  ReflectionKind kind = ReflectionKind::S;
  int i = 0;
  int j = -1;           // kind S only, i < j
  std::size_t gamma = 0;
  std::size_t element = 0;  // index in GammaN
  Matrix matrix;        // 2n x 2n action on V
};

/// Action of an element of S_n ⋉ Γ^n on V.
Matrix action_matrix(const GammaN& gn, std::size_t element);

/// All symplectic reflections, found by an exhaustive rank scan and checked
/// against the two families s_ij g_i g_j^-1 and g_i. Also checks the
/// conjugacy-class partition. Throws std::logic_error on any discrepancy.
std::vector<SymplecticReflection> enumerate_reflections(const GammaN& gn);

Scalar omega_V(const VecV& u, const VecV& v);
/// Projection onto im(Id - s) along ker(Id - s), then omega.
Scalar omega_s(const SymplecticReflection& s, const VecV& u, const VecV& v);
/// (omega(u,v) - omega(u,sv))/2 for kind S, omega_L on slot i for kind Gamma.
Scalar omega_s_closed(const SymplecticReflection& s, const VecV& u, const VecV& v);

struct SraMonomial {
  std::vector<int> word;
  std::size_t group = 0;
  friend auto operator<=>(const SraMonomial&, const SraMonomial&) = default;
  friend bool operator==(const SraMonomial&, const SraMonomial&) = default;
};

using SraElement = LinComb<SraMonomial>;

/// [u, v] = rhs for basis letters u, v.
struct SraRelation {
  int u = 0;
  int v = 0;
  GroupAlgebraElement rhs;
};

class SraAlgebra {
 public:
  SraAlgebra(const GammaN& gn, SraParams params);

  const GammaN& gamma_n() const { return *gn_; }
  const SraParams& params() const { return params_; }
  int n() const { return gn_->n(); }
  int num_letters() const { return 2 * gn_->n(); }
  const std::vector<SymplecticReflection>& reflections() const { return refl_; }

  /// t omega(u,v) + sum_s c_s omega_s(u,v) s.
  GroupAlgebraElement kappa(const VecV& u, const VecV& v) const;
  const GroupAlgebraElement& kappa_letters(int a, int b) const;

  /// The explicit commutator relations: one per site for [x_i, y_i] and four
  /// per ordered pair of distinct sites. Certified against kappa; throws on a
  /// mismatch.
  std::vector<SraRelation> relations() const;

  SraElement letter(int a) const;
  SraElement group_element(std::size_t g) const;
  SraElement from_group_algebra(const GroupAlgebraElement& x) const;
  /// The word in the free algebra TV # Γ_n.
  SraElement word(const std::vector<int>& letters, std::size_t g = 0) const;

  /// g acting on a word, letter by letter.
  LinComb<std::vector<int>> act(std::size_t g, const std::vector<int>& w) const;
  /// Product in TV # Γ_n (no rewriting).
  SraElement multiply(const SraElement& x, const SraElement& y) const;
  /// Letters sorted ascending, group element on the right.
  SraElement normal_form(const SraElement& x) const;
  SraElement nf_product(const SraElement& x, const SraElement& y) const {
    return normal_form(multiply(x, y));
  }

  /// Parses words such as "y1 x1 s12 g1@2" with 1-based sites: x<i>, y<i>,
  /// s<i><j> for a transposition and g<k>@<i> for group element k at site i.
  SraElement parse_word(std::string_view text) const;
  std::string str(const SraElement& x) const;

 private:
  const SraElement& nf_word(const std::vector<int>& w) const;

  const GammaN* gn_;
  SraParams params_;
  std::vector<SymplecticReflection> refl_;
  std::vector<Matrix> actions_;
  std::vector<GroupAlgebraElement> kappa_;  // [a * 2n + b]
  mutable std::map<std::vector<int>, SraElement> cache_;
};

struct SraPbwReport {
  int degree = 0;
  std::size_t free_dim = 0;         // words of degree <= d times |Γ_n|
  std::size_t ideal_rank = 0;       // span of a r b in that filtered piece
  std::size_t quotient_dim = 0;
  std::size_t normal_form_rank = 0; // span of normal forms of all monomials
  std::size_t expected = 0;         // C(d + 2n, 2n) |Γ_n|
  bool ideal_killed = false;        // normal form vanishes on every a r b
  bool pass = false;
};

/// Filtered PBW check through degree d.
SraPbwReport sra_pbw_check(const SraAlgebra& H, int d);

}  // namespace wpa
