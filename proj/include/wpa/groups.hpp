#pragma once

// Finite subgroups of SL_2 with explicit irreducible representations, the
// McKay quiver, matrix units of the group algebra, and arithmetic in the
// group algebra of the wreath product S_n ⋉ Γ^n.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "wpa/lincomb.hpp"
#include "wpa/perm.hpp"
#include "wpa/quiver.hpp"
#include "wpa/scalar.hpp"

namespace wpa {

/// Small dense matrix, row major.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<Scalar> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r * c)) {}
  Matrix(int r, int c, std::vector<Scalar> entries);
  static Matrix identity(int d);

  Scalar& operator()(int i, int j) { return a[static_cast<std::size_t>(i * cols + j)]; }
  const Scalar& operator()(int i, int j) const {
    return a[static_cast<std::size_t>(i * cols + j)];
  }
  Scalar trace() const;
  Scalar det2() const;
  Matrix operator*(const Matrix& o) const;
  friend bool operator==(const Matrix&, const Matrix&) = default;
};

/// A vector of L = C^2 in the basis x = (1,0), y = (0,1).
using Vec2 = std::vector<Scalar>;

/// omega_L(u, v) = u_1 v_2 - u_2 v_1, so omega_L(x, y) = 1.
Scalar omega_L(const Vec2& u, const Vec2& v);
Vec2 act_on(const Matrix& g, const Vec2& u);

struct Irrep {
  int dim = 1;
  std::vector<Matrix> images;  // indexed by group element
  std::vector<Scalar> character;
};

/// Group algebra element; keys are element indices of the owning group.
using GroupAlgebraElement = LinComb<std::size_t>;

class FiniteGroup {
 public:
  /// Closes the generators under products and assigns irrep images along the
  /// way. Verifies det = 1, preservation of omega_L, that every irrep is a
  /// homomorphism, the sum of squared dimensions and orthonormality of the
  /// characters. Throws std::logic_error on failure.
  FiniteGroup(std::string name, int conductor, std::vector<Matrix> generators,
              std::vector<std::vector<Matrix>> irrep_generators);

  const std::string& name() const { return name_; }
  std::size_t order() const { return elements_.size(); }
  int conductor() const { return conductor_; }
  const Matrix& element(std::size_t g) const { return elements_.at(g); }
  const std::vector<Matrix>& elements() const { return elements_; }
  std::size_t identity() const { return 0; }
  std::size_t mul(std::size_t g, std::size_t h) const { return table_[g * order() + h]; }
  std::size_t inv(std::size_t g) const { return inverse_.at(g); }
  std::size_t index_of(const Matrix& m) const;

  const std::vector<Irrep>& irreps() const { return irreps_; }
  std::size_t num_irreps() const { return irreps_.size(); }
  int delta(std::size_t i) const { return irreps_.at(i).dim; }
  /// Trace of the defining two-dimensional representation L.
  Scalar chi_L(std::size_t g) const { return elements_.at(g).trace(); }

  GroupAlgebraElement multiply(const GroupAlgebraElement& x,
                               const GroupAlgebraElement& y) const;
  GroupAlgebraElement unit() const { return GroupAlgebraElement(identity()); }

 private:
  std::string name_;
  int conductor_;
  std::vector<Matrix> elements_;
  std::vector<std::size_t> table_;
  std::vector<std::size_t> inverse_;
  std::vector<Irrep> irreps_;
};

/// Generated by diag(z, z^-1), z = exp(2 pi i / l); irrep i sends it to z^i.
FiniteGroup cyclic_group(int l);
/// Order 4l, generated by diag(w, w^-1) with w = exp(pi i / l) and
/// [[0,1],[-1,0]]. Four one-dimensional irreps first, then l-1 of dimension 2.
FiniteGroup binary_dihedral(int l);
/// "cyclic:<l>" or "bindihedral:<l>".
FiniteGroup parse_group_spec(std::string_view spec);

struct McKayData {
  Quiver quiver;
  std::vector<int> delta;
  std::vector<std::vector<int>> multiplicity;  // [i][j]: N_i in L ⊗ N_j
};

/// Multiplicities from characters; edges i -> j for i < j, and m_ii / 2 loops.
McKayData mckay_quiver(const FiniteGroup& G);

class MatrixUnits {
 public:
  /// E^i_{p,q} = (delta_i / |G|) sum_g rho_i(g^-1)_{q,p} g. Verifies the full
  /// multiplication law and the resolution of the identity.
  explicit MatrixUnits(const FiniteGroup& G);

  const FiniteGroup& group() const { return *G_; }
  const GroupAlgebraElement& E(std::size_t i, int p, int q) const;
  const GroupAlgebraElement& f(std::size_t i) const { return E(i, 0, 0); }
  GroupAlgebraElement f_sum() const;

 private:
  const FiniteGroup* G_;
  std::vector<std::vector<GroupAlgebraElement>> units_;  // [i][p * delta + q]
};

/// Element of S_n ⋉ Γ^n written gammas * perm.
struct GammaNKey {
  std::vector<std::size_t> gammas;
  Perm perm;
  friend auto operator<=>(const GammaNKey&, const GammaNKey&) = default;
  friend bool operator==(const GammaNKey&, const GammaNKey&) = default;
};

/// S_n ⋉ Γ^n with (g, s)(h, t) = (g · s(h), s t), where s(h) moves the entry
/// in slot p to slot s(p). Hence s (g_1..g_n) s^-1 = (g_{s^-1(1)}, ..., g_{s^-1(n)}).
class GammaN {
 public:
  GammaN(const FiniteGroup& G, int n);

  const FiniteGroup& group() const { return *G_; }
  int n() const { return n_; }
  std::size_t order() const { return count_; }
  std::size_t identity() const { return 0; }
  std::size_t index(const GammaNKey& k) const;
  GammaNKey key(std::size_t idx) const;
  std::size_t mul(std::size_t a, std::size_t b) const;
  std::size_t inv(std::size_t a) const;

  /// g placed at one slot.
  std::size_t gamma_at(int slot, std::size_t g) const;
  std::size_t perm(const Perm& p) const;

  GroupAlgebraElement multiply(const GroupAlgebraElement& x,
                               const GroupAlgebraElement& y) const;
  GroupAlgebraElement unit() const { return GroupAlgebraElement(identity()); }
  /// x_1 ⊗ ... ⊗ x_n in C[Γ^n].
  GroupAlgebraElement tensor(const std::vector<GroupAlgebraElement>& factors) const;
  /// sum_g s_ij g_i g_j^-1.
  GroupAlgebraElement reflection_class_sum(int i, int j) const;

  std::string str(std::size_t idx) const;

 private:
  std::size_t compute_mul(std::size_t a, std::size_t b) const;

  const FiniteGroup* G_;
  int n_;
  std::size_t power_;  // |Γ|^n
  std::size_t count_;
  std::vector<Perm> perms_;
  std::vector<std::size_t> table_;  // empty when too large
};

/// Sum over tuples (i_k, p_k) of (E_{p,1} ⊗ ...) f^{⊗n} (E_{1,p} ⊗ ...),
/// evaluated in C[Γ^n]. Equals the unit when the matrix units are correct.
GroupAlgebraElement idempotent_resolution(const MatrixUnits& mu, const GammaN& gn);

/// c with (f_a ⊗ f_b) s_12 (sum_g g_1 g_2^-1) (f_a ⊗ f_b) = c s_12 (f_b ⊗ f_a)
/// computed in C[Γ_2]; |G| / delta_a when a == b and 0 otherwise.
Scalar slot_swap_projection(const MatrixUnits& mu, std::size_t a, std::size_t b);

/// c with sum_g omega_L(g u, v) (f_j g f_j) ⊗ (f_i x g^-1 y f_i) = c f_j ⊗ f_i,
/// computed in C[Γ^2]. Throws if the sum is not proportional to f_j ⊗ f_i.
Scalar matrix_coefficient_sum(const MatrixUnits& mu, std::size_t i, std::size_t j,
                              std::size_t x, std::size_t y, const Vec2& u, const Vec2& v);

}  // namespace wpa
