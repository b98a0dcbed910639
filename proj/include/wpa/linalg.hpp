#pragma once

// Exact sparse linear algebra over cyclotomic fields.

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "wpa/scalar.hpp"

namespace wpa {

/// Sorted by index, no stored zeros.
using SparseVec = std::vector<std::pair<std::size_t, Scalar>>;

SparseVec to_sparse(const std::vector<Scalar>& dense);
std::vector<Scalar> to_dense(const SparseVec& v, std::size_t dim);
/// a + c*b
SparseVec axpy(const SparseVec& a, const Scalar& c, const SparseVec& b);
SparseVec scaled(const SparseVec& v, const Scalar& c);
Scalar dot(const SparseVec& a, const SparseVec& b);

struct ExactMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<SparseVec> data;  // one sparse row per matrix row

  ExactMatrix() = default;
  ExactMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r) {}

  static ExactMatrix from_dense(const std::vector<std::vector<Scalar>>& m, std::size_t cols);
  /// Matrix whose columns are the given vectors.
  static ExactMatrix from_columns(const std::vector<SparseVec>& columns, std::size_t dim);

  Scalar at(std::size_t r, std::size_t c) const;
  SparseVec apply(const SparseVec& x) const;
};

/// Incrementally maintained row-echelon basis. Each stored row has leading
/// coefficient 1 at its pivot column and no entries to the left of it.
class Echelon {
 public:
  /// Reduces v against the basis; returns the (possibly zero) remainder.
  SparseVec reduce(const SparseVec& v) const;
  /// Adds v if it is independent of the current span. Returns true if added.
  bool insert(const SparseVec& v);
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<SparseVec>& rows() const { return rows_; }

 private:
  std::vector<SparseVec> rows_;
  std::map<std::size_t, std::size_t> pivot_row_;
};

std::size_t rank(const ExactMatrix& m);

/// Basis of the right null space {x : M x = 0}. Gauss-Jordan elimination that
/// picks, in each column, the candidate pivot with the fewest nonzeros and
/// smallest bit size.
std::vector<SparseVec> kernel_basis(const ExactMatrix& m);

/// Some x with M x = b, or nothing when the system is inconsistent.
bool solve(const ExactMatrix& m, const SparseVec& b, SparseVec& x);

/// Basis of span(A) ∩ span(B) in an ambient space of dimension dim, obtained
/// from the kernel of the matrix [A | -B].
std::vector<SparseVec> subspace_intersection(const std::vector<SparseVec>& a,
                                             const std::vector<SparseVec>& b,
                                             std::size_t dim);

/// Rank of a family of vectors.
std::size_t span_rank(const std::vector<SparseVec>& vs);
/// True when both families span the same subspace.
bool same_span(const std::vector<SparseVec>& a, const std::vector<SparseVec>& b);

}  // namespace wpa
