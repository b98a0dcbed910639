#pragma once

#include <random>
#include <vector>

#include "wpa/linalg.hpp"
#include "wpa/scalar.hpp"

namespace wpa::testing {

inline Scalar random_rational(std::mt19937& rng, int range = 5) {
  std::uniform_int_distribution<int> num(-range, range), den(1, range);
  return Scalar::rational(num(rng), den(rng));
}

inline Scalar random_scalar(std::mt19937& rng, int conductor) {
  std::vector<Rational> c(static_cast<std::size_t>(euler_phi(conductor)));
  for (auto& x : c) x = random_rational(rng).to_rational();
  return Scalar::from_coeffs(conductor, std::move(c));
}

// Rank of a dense rational matrix by plain row reduction.
inline std::size_t dense_rank(std::vector<std::vector<Rational>> m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace wpa::testing
