#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "support.hpp"
#include "wpa/linalg.hpp"

using namespace wpa;
using wpa::testing::dense_rank;
using wpa::testing::random_rational;

namespace {

SparseVec unit(std::size_t i) { return {{i, Scalar(1)}}; }

std::vector<std::vector<Rational>> as_rationals(const ExactMatrix& m) {
  std::vector<std::vector<Rational>> out(m.rows, std::vector<Rational>(m.cols, Rational(0)));
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (const auto& [c, v] : m.data[r]) out[r][c] = v.to_rational();
  }
  return out;
}

ExactMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int sparsity) {
  std::uniform_int_distribution<int> coin(0, sparsity);
  std::vector<std::vector<Scalar>> d(rows, std::vector<Scalar>(cols));
  for (auto& row : d) {
    for (auto& x : row) {
      if (coin(rng) == 0) x = random_rational(rng);
    }
  }
  return ExactMatrix::from_dense(d, cols);
}

}  // namespace

TEST_CASE("kernel of trivial matrices") {
  CHECK(kernel_basis(ExactMatrix(2, 2)).size() == 2);
  ExactMatrix id(3, 3);
  for (std::size_t i = 0; i < 3; ++i) id.data[i] = unit(i);
  CHECK(kernel_basis(id).empty());
}

TEST_CASE("random kernels against row reduction") {
  std::mt19937 rng(31337);
  for (int trial = 0; trial < 40; ++trial) {
    const ExactMatrix m = random_matrix(rng, 5, 7, trial % 3);
    const auto ker = kernel_basis(m);
    CHECK(ker.size() == 7 - dense_rank(as_rationals(m)));
    CHECK(rank(m) == dense_rank(as_rationals(m)));
    for (const auto& k : ker) CHECK(m.apply(k).empty());
    CHECK(span_rank(ker) == ker.size());
  }
}

TEST_CASE("kernel over a cyclotomic field") {
  const Scalar z = Scalar::zeta(5);
  const ExactMatrix m = ExactMatrix::from_dense({{Scalar(1), z, z * z}, {z, z * z, z * z * z}}, 3);
  const auto ker = kernel_basis(m);
  CHECK(ker.size() == 2);
  for (const auto& k : ker) CHECK(m.apply(k).empty());
}

TEST_CASE("solve") {
  const ExactMatrix m = ExactMatrix::from_dense({{Scalar(1), Scalar(2)}, {Scalar(3), Scalar(4)}}, 2);
  SparseVec x;
  REQUIRE(solve(m, {{0, Scalar(5)}, {1, Scalar(6)}}, x));
  CHECK(m.apply(x) == SparseVec{{0, Scalar(5)}, {1, Scalar(6)}});
  const ExactMatrix sing = ExactMatrix::from_dense({{Scalar(1), Scalar(2)}, {Scalar(2), Scalar(4)}}, 2);
  CHECK_FALSE(solve(sing, {{0, Scalar(1)}}, x));
}

TEST_CASE("subspace intersection") {
  CHECK(subspace_intersection({unit(0)}, {unit(0)}, 3).size() == 1);
  CHECK(subspace_intersection({unit(0)}, {unit(1)}, 3).empty());
  std::mt19937 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    std::uniform_int_distribution<int> dim(0, 5);
    auto family = [&](int k) {
      std::vector<SparseVec> out;
      // Low-rank families are drawn as combinations of three fixed vectors so
      // that intersections are frequently nontrivial.
      const ExactMatrix base = random_matrix(rng, 3, 6, 0);
      for (int i = 0; i < k; ++i) {
        SparseVec v;
        for (std::size_t r = 0; r < 3; ++r) v = axpy(v, random_rational(rng), base.data[r]);
        if (trial % 2) v = axpy(v, random_rational(rng), unit(static_cast<std::size_t>(i)));
        out.push_back(v);
      }
      return out;
    };
    const auto a = family(dim(rng)), b = family(dim(rng));
    const auto inter = subspace_intersection(a, b, 6);
    std::vector<SparseVec> sum = a;
    sum.insert(sum.end(), b.begin(), b.end());
    CHECK(inter.size() == span_rank(a) + span_rank(b) - span_rank(sum));
    Echelon ea, eb;
    for (const auto& v : a) ea.insert(v);
    for (const auto& v : b) eb.insert(v);
    for (const auto& v : inter) {
      CHECK(ea.contains(v));
      CHECK(eb.contains(v));
    }
  }
}

TEST_CASE("echelon and span comparison") {
  Echelon e;
  CHECK(e.insert({{0, Scalar(2)}, {2, Scalar(1)}}));
  CHECK_FALSE(e.insert({{0, Scalar(4)}, {2, Scalar(2)}}));
  CHECK(e.contains({{0, Scalar(-1)}, {2, Scalar::rational(-1, 2)}}));
  CHECK(same_span({unit(0), unit(1)}, {axpy(unit(0), Scalar(1), unit(1)), unit(1)}));
  CHECK_FALSE(same_span({unit(0)}, {unit(0), unit(1)}));
}
