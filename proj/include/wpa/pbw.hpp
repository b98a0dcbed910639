#pragma once

// Deformation parameters beta: U -> K and the degree-3 overlap condition
// beta (x) Id = Id (x) beta that characterizes PBW deformations.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "wpa/wreath.hpp"

namespace wpa {

/// Basis element of the quadratic relation space: a moment generator
/// e_L (x) r_i (x) ... at one slot, or a bracket with slot < slot2.
struct Generator {
  RelationKind kind = RelationKind::Moment;
  WreathElement element;
  Labels tail;
  Labels head;
  int slot = 0;
  int slot2 = -1;
  int edge_a = -1;
  int edge_b = -1;
};

/// All generators, in the order produced by WreathAlgebra::relations.
std::vector<Generator> quadratic_generators(const WreathAlgebra& A);

/// The coefficient of e_{head(g)} sigma in beta(g). B-bilinearity forces
/// sigma(tail(g)) == head(g).
struct BetaCoordinate {
  std::size_t generator = 0;
  Perm perm;
  friend auto operator<=>(const BetaCoordinate&, const BetaCoordinate&) = default;
  friend bool operator==(const BetaCoordinate&, const BetaCoordinate&) = default;
};

/// Sparse family of beta coefficients; coordinates absent from the map are 0.
struct BetaMap {
  std::map<BetaCoordinate, Scalar> values;
};

struct IntersectionResult {
  std::vector<WreathElement> basis;        // brute-force basis of the overlap space
  std::vector<WreathElement> constructed;  // triple and moment-letter elements
  std::size_t constructed_rank = 0;
  bool certified = false;                  // spans agree
};

/// (R (x)_B E) ∩ (E (x)_B R) in degree 3, computed blockwise by endpoints, and
/// compared against the explicit spanning family. Throws std::logic_error on a
/// span mismatch when the quiver has no loop.
IntersectionResult intersection_basis(const WreathAlgebra& A);

struct AdmissibleSolution {
  std::size_t coordinate_count = 0;
  std::size_t support_dim = 0;
  std::size_t intersection_dim = 0;
  std::size_t solution_dim = 0;
  std::size_t expected_dim = 0;
  std::vector<BetaMap> basis;
  bool intersection_certified = false;
  bool matches_parameters = false;
  bool outside_hypotheses = false;
  bool certified = false;
  std::string note;
};

class PbwSystem {
 public:
  /// Requires n >= 2.
  PbwSystem(const Quiver& q, int n);

  const WreathAlgebra& algebra() const { return A_; }
  const std::vector<Generator>& generators() const { return gens_; }
  /// All B-bilinear coordinates, sorted.
  const std::vector<BetaCoordinate>& coordinates() const { return coords_; }
  /// Basis (over coordinates) of the left S_n-equivariant beta.
  const std::vector<SparseVec>& support_basis() const { return support_; }
  const IntersectionResult& intersection() const { return inter_; }

  SparseVec to_vector(const BetaMap& b) const;
  BetaMap from_vector(const SparseVec& v) const;
  bool is_equivariant(const BetaMap& b) const;

  /// beta read off the defining relations with parameters (lambda, nu).
  BetaMap beta_from_params(const std::vector<Scalar>& lambda, const Scalar& nu) const;

  /// (beta (x) Id - Id (x) beta)(w) in M for every overlap basis element w.
  std::vector<WreathElement> residual(const BetaMap& b) const;
  bool residual_vanishes(const BetaMap& b) const;

  AdmissibleSolution solve() const;

 private:
  struct Split {
    std::size_t generator;
    WreathMonomial letter;
    Scalar coeff;
  };
  struct Decomposition {
    std::vector<Split> right;  // sum c * g * e
    std::vector<Split> left;   // sum d * e * g
  };

  std::size_t coordinate_index(const BetaCoordinate& c) const;
  void build_support();
  void decompose();
  /// Residual contributions of every coordinate, keyed by (element, monomial).
  std::map<std::pair<std::size_t, WreathMonomial>, SparseVec> residual_columns() const;

  WreathAlgebra A_;
  std::vector<Generator> gens_;
  std::vector<BetaCoordinate> coords_;
  std::map<BetaCoordinate, std::size_t> coord_index_;
  std::vector<std::vector<std::size_t>> coords_by_gen_;
  std::vector<SparseVec> support_;
  IntersectionResult inter_;
  std::vector<Decomposition> decomp_;
};

std::string to_json(const PbwSystem& sys, const AdmissibleSolution& sol);

}  // namespace wpa
