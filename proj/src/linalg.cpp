#include "wpa/linalg.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace wpa {

SparseVec to_sparse(const std::vector<Scalar>& dense) {
  SparseVec out;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (!dense[i].is_zero()) out.emplace_back(i, dense[i]);
  }
  return out;
}

std::vector<Scalar> to_dense(const SparseVec& v, std::size_t dim) {
  std::vector<Scalar> out(dim);
  for (const auto& [i, c] : v) {
    if (i >= dim) throw std::out_of_range("to_dense: index beyond dimension");
    out[i] = c;
  }
  return out;
}

SparseVec axpy(const SparseVec& a, const Scalar& c, const SparseVec& b) {
  if (c.is_zero()) return a;
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, c * b[j].second);
      ++j;
    } else {
      Scalar s = a[i].second + c * b[j].second;
      if (!s.is_zero()) out.emplace_back(a[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVec scaled(const SparseVec& v, const Scalar& c) {
  if (c.is_zero()) return {};
  SparseVec out = v;
  for (auto& e : out) e.second = e.second * c;
  return out;
}

Scalar dot(const SparseVec& a, const SparseVec& b) {
  Scalar s;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) {
      ++i;
    } else if (b[j].first < a[i].first) {
      ++j;
    } else {
      s += a[i].second * b[j].second;
      ++i;
      ++j;
    }
  }
  return s;
}

ExactMatrix ExactMatrix::from_dense(const std::vector<std::vector<Scalar>>& m, std::size_t cols) {
  ExactMatrix out(m.size(), cols);
  for (std::size_t r = 0; r < m.size(); ++r) {
    if (m[r].size() != cols) throw std::invalid_argument("ExactMatrix::from_dense: ragged rows");
    out.data[r] = to_sparse(m[r]);
  }
  return out;
}

ExactMatrix ExactMatrix::from_columns(const std::vector<SparseVec>& columns, std::size_t dim) {
  ExactMatrix out(dim, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (const auto& [r, v] : columns[c]) {
      if (r >= dim) throw std::out_of_range("ExactMatrix::from_columns: row index beyond dimension");
      out.data[r].emplace_back(c, v);
    }
  }
  return out;
}

Scalar ExactMatrix::at(std::size_t r, std::size_t c) const {
  const auto& row = data.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, std::size_t k) { return e.first < k; });
  if (it != row.end() && it->first == c) return it->second;
  return Scalar();
}

SparseVec ExactMatrix::apply(const SparseVec& x) const {
  SparseVec out;
  for (std::size_t r = 0; r < rows; ++r) {
    Scalar s = dot(data[r], x);
    if (!s.is_zero()) out.emplace_back(r, std::move(s));
  }
  return out;
}

SparseVec Echelon::reduce(const SparseVec& v) const {
  SparseVec r = v;
  std::size_t from = 0;
  while (true) {
    auto it = std::lower_bound(r.begin(), r.end(), from,
                               [](const auto& e, std::size_t k) { return e.first < k; });
    std::size_t pivot = std::numeric_limits<std::size_t>::max();
    Scalar c;
    for (; it != r.end(); ++it) {
      auto p = pivot_row_.find(it->first);
      if (p != pivot_row_.end()) {
        pivot = it->first;
        c = it->second;
        r = axpy(r, -c, rows_[p->second]);
        break;
      }
    }
    if (pivot == std::numeric_limits<std::size_t>::max()) break;
    from = pivot + 1;
  }
  return r;
}

bool Echelon::insert(const SparseVec& v) {
  SparseVec r = reduce(v);
  if (r.empty()) return false;
  const Scalar inv = r.front().second.inverse();
  for (auto& e : r) e.second = e.second * inv;
  pivot_row_.emplace(r.front().first, rows_.size());
  rows_.push_back(std::move(r));
  return true;
}

namespace {

struct Rref {
  std::vector<SparseVec> rows;
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (column, row)
  std::vector<bool> pivoted;
};

Scalar entry_at(const SparseVec& row, std::size_t c) {
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, std::size_t k) { return e.first < k; });
  if (it != row.end() && it->first == c) return it->second;
  return Scalar();
}

// Gauss-Jordan elimination over the first pivot_cols columns.
Rref gauss_jordan(std::vector<SparseVec> rows, std::size_t pivot_cols) {
  Rref out;
  rows.erase(std::remove_if(rows.begin(), rows.end(), [](const SparseVec& r) { return r.empty(); }),
             rows.end());
  out.rows = std::move(rows);
  out.pivoted.assign(out.rows.size(), false);
  for (std::size_t c = 0; c < pivot_cols; ++c) {
    std::size_t best = out.rows.size();
    std::size_t best_nnz = 0, best_bits = 0;
    for (std::size_t r = 0; r < out.rows.size(); ++r) {
      if (out.pivoted[r] || out.rows[r].empty() || out.rows[r].front().first != c) continue;
      const std::size_t nnz = out.rows[r].size();
      const std::size_t bits = out.rows[r].front().second.bit_size();
      if (best == out.rows.size() || nnz < best_nnz || (nnz == best_nnz && bits < best_bits)) {
        best = r;
        best_nnz = nnz;
        best_bits = bits;
      }
    }
    if (best == out.rows.size()) continue;
    SparseVec& prow = out.rows[best];
    const Scalar inv = prow.front().second.inverse();
    for (auto& e : prow) e.second = e.second * inv;
    out.pivoted[best] = true;
    out.pivots.emplace_back(c, best);
    for (std::size_t r = 0; r < out.rows.size(); ++r) {
      if (r == best) continue;
      Scalar f = entry_at(out.rows[r], c);
      if (f.is_zero()) continue;
      out.rows[r] = axpy(out.rows[r], -f, out.rows[best]);
    }
  }
  return out;
}

}  // namespace

std::size_t rank(const ExactMatrix& m) {
  Echelon e;
  for (const auto& r : m.data) e.insert(r);
  return e.rank();
}

std::vector<SparseVec> kernel_basis(const ExactMatrix& m) {
  Rref rr = gauss_jordan(m.data, m.cols);
  std::vector<bool> is_pivot(m.cols, false);
  for (const auto& [c, r] : rr.pivots) is_pivot[c] = true;
  std::vector<SparseVec> basis;
  for (std::size_t f = 0; f < m.cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<std::pair<std::size_t, Scalar>> v;
    v.emplace_back(f, Scalar(1));
    for (const auto& [c, r] : rr.pivots) {
      Scalar x = entry_at(rr.rows[r], f);
      if (!x.is_zero()) v.emplace_back(c, -x);
    }
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    basis.push_back(std::move(v));
  }
  return basis;
}

bool solve(const ExactMatrix& m, const SparseVec& b, SparseVec& x) {
  std::vector<SparseVec> rows = m.data;
  rows.resize(m.rows);
  for (const auto& [r, v] : b) {
    if (r >= m.rows) throw std::out_of_range("solve: right-hand side longer than matrix");
    rows[r].emplace_back(m.cols, v);
  }
  Rref rr = gauss_jordan(std::move(rows), m.cols);
  for (std::size_t r = 0; r < rr.rows.size(); ++r) {
    if (!rr.pivoted[r] && !rr.rows[r].empty()) return false;  // 0 = nonzero
  }
  x.clear();
  for (const auto& [c, r] : rr.pivots) {
    Scalar v = entry_at(rr.rows[r], m.cols);
    if (!v.is_zero()) x.emplace_back(c, v);
  }
  std::sort(x.begin(), x.end(), [](const auto& a, const auto& b2) { return a.first < b2.first; });
  return true;
}

std::vector<SparseVec> subspace_intersection(const std::vector<SparseVec>& a,
                                             const std::vector<SparseVec>& b,
                                             std::size_t dim) {
  std::vector<SparseVec> cols = a;
  for (const auto& v : b) cols.push_back(scaled(v, Scalar(-1)));
  const auto ker = kernel_basis(ExactMatrix::from_columns(cols, dim));
  Echelon seen;
  std::vector<SparseVec> out;
  for (const auto& k : ker) {
    SparseVec w;
    for (const auto& [i, c] : k) {
      if (i >= a.size()) break;
      w = axpy(w, c, a[i]);
    }
    if (seen.insert(w)) out.push_back(std::move(w));
  }
  return out;
}

std::size_t span_rank(const std::vector<SparseVec>& vs) {
  Echelon e;
  for (const auto& v : vs) e.insert(v);
  return e.rank();
}

bool same_span(const std::vector<SparseVec>& a, const std::vector<SparseVec>& b) {
  Echelon ea;
  for (const auto& v : a) ea.insert(v);
  for (const auto& v : b) {
    if (!ea.contains(v)) return false;
  }
  return span_rank(b) == ea.rank();
}

}  // namespace wpa
