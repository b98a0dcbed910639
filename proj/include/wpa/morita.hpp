#pragma once

// The corner f^{⊗n} H f^{⊗n} of a symplectic reflection algebra compared with
// the wreath-product deformation over the McKay quiver: intertwiners θ_a, φ_a,
// the generator embedding, the parameter dictionary and the certificates.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wpa/groups.hpp"
#include "wpa/sra.hpp"
#include "wpa/wreath.hpp"

namespace wpa {

/// Kronecker product; row (i, k) of the result is i * B.rows + k.
Matrix kron(const Matrix& A, const Matrix& B);

/// Basis of Hom_Γ(N_src, L ⊗ N_dst) as (2 δ_dst) x δ_src matrices. Rows of
/// L ⊗ N are indexed c * δ + q with c = 0 for x and c = 1 for y.
std::vector<Matrix> hom_basis(const FiniteGroup& G, std::size_t src, std::size_t dst);

/// Per edge a of the McKay quiver: θ_a : N_{t(a)} -> L ⊗ N_{h(a)} and
/// φ_a : N_{h(a)} -> L ⊗ N_{t(a)}.
struct ThetaPhi {
  std::vector<Matrix> theta;
  std::vector<Matrix> phi;
};

struct ThetaPhiChecks {
  bool equivariant = false;       // every group element, θ and φ
  bool pairing_theta = false;     // (ω⊗Id)(Id⊗φ_a)θ_a = -δ_{h(a)} Id
  bool pairing_phi = false;       // (ω⊗Id)(Id⊗θ_a)φ_a = δ_{t(a)} Id
  bool mesh = false;              // at every vertex
  bool spans_hom = false;         // θ's and φ's give bases of the Hom-spaces
  bool all() const { return equivariant && pairing_theta && pairing_phi && mesh && spans_hom; }
};

/// θ_a is fixed to a basis vector of its Hom-space (distinct vectors for
/// parallel edges); the φ_a then solve the pairing and mesh conditions, which
/// are linear in φ. Throws std::logic_error when the system is inconsistent or
/// a check fails.
ThetaPhi solve_theta_phi(const FiniteGroup& G, const McKayData& mk);
ThetaPhiChecks check_theta_phi(const FiniteGroup& G, const McKayData& mk, const ThetaPhi& tp);

/// λ_i = t δ_i + sum_{g ≠ 1} c'_g χ_i(g), ν = k |Γ| / 2.
std::pair<std::vector<Scalar>, Scalar> parameter_map(const FiniteGroup& G, const SraParams& p);

/// Images of the generators of T_B E # S_n inside TV # Γ_n.
class MoritaEmbedding {
 public:
  MoritaEmbedding(const WreathAlgebra& A, const SraAlgebra& H, const MatrixUnits& mu,
                  const ThetaPhi& tp);

  /// Same data, products and normal forms taken in another copy of H.
  void rebind(const SraAlgebra& H) { H_ = &H; }

  /// f_{i_1} ⊗ ... ⊗ f_{i_n}.
  GroupAlgebraElement idempotent(const Labels& labels) const;
  GroupAlgebraElement unit_idempotent() const;  // f^{⊗n}
  SraElement anchor(const Labels& labels, const Perm& p) const;
  SraElement letter(int slot, int edge, const Labels& tail) const;
  /// Normal form of the image.
  SraElement image(const WreathMonomial& m) const;
  SraElement image(const WreathElement& x) const;
  /// f^{⊗n} x f^{⊗n}, in normal form.
  SraElement corner(const SraElement& x) const;

 private:
  const WreathAlgebra* A_;
  const SraAlgebra* H_;
  const MatrixUnits* mu_;
  const ThetaPhi* tp_;
};

struct CornerIdentification {
  std::size_t group_algebra_dim = 0;       // f^{⊗n} C[Γ^n] f^{⊗n}
  std::size_t expected_group_algebra_dim = 0;
  std::size_t degree_one_dim = 0;          // f^{⊗n} (V ⊗ C[Γ^n]) f^{⊗n}
  std::size_t expected_degree_one_dim = 0; // letters of the product quiver
  std::size_t letter_image_rank = 0;       // span of the embedded letters
  bool ok = false;
};

/// Rank computations for the identifications of the corner in degrees 0, 1.
CornerIdentification corner_identify(const WreathAlgebra& A, const MoritaEmbedding& emb,
                                     const SraAlgebra& H, const MatrixUnits& mu);

struct MoritaReport {
  std::string group;
  int n = 0;
  int degree = 0;
  Scalar t, k;
  std::vector<Scalar> cprime;
  std::vector<Scalar> lambda;
  Scalar nu;
  std::vector<int> delta;
  ThetaPhiChecks theta_phi;
  CornerIdentification corner;
  std::size_t relations_checked = 0;
  bool residual_zero = false;
  std::vector<std::string> failing;
  std::vector<std::size_t> corner_dims;
  std::vector<std::size_t> expected_dims;
  bool dims_match = false;
  std::size_t products_checked = 0;
  bool multiplicative = false;
  bool pass = false;
};

/// Runs the three certificates through filtration degree d. Relation images
/// are checked on `threads` workers (at least 1).
MoritaReport verify_morita(const FiniteGroup& G, int n, const SraParams& params, int degree,
                           std::uint64_t seed, unsigned threads = 1);

std::string to_json(const MoritaReport& r);

/// Thread count from the WPA_THREADS environment variable, default 1.
unsigned thread_count_from_env();

}  // namespace wpa
