#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "support.hpp"
#include "wpa/groups.hpp"

using namespace wpa;
using wpa::testing::random_rational;

namespace {

// Conjugacy classes by brute force over the multiplication table.
std::vector<std::vector<std::size_t>> conjugacy_classes(const FiniteGroup& G) {
  std::vector<int> seen(G.order(), 0);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t g = 0; g < G.order(); ++g) {
    if (seen[g]) continue;
    std::set<std::size_t> cls;
    for (std::size_t h = 0; h < G.order(); ++h) cls.insert(G.mul(G.mul(h, g), G.inv(h)));
    for (auto c : cls) seen[c] = 1;
    out.emplace_back(cls.begin(), cls.end());
  }
  return out;
}

std::size_t minus_identity(const FiniteGroup& G) {
  return G.index_of(Matrix(2, 2, {Scalar(-1), Scalar(0), Scalar(0), Scalar(-1)}));
}

bool divides(int a, int b) { return b % a == 0; }

}  // namespace

TEST_CASE("cyclic groups") {
  auto G1 = cyclic_group(1);
  CHECK(G1.order() == 1);
  CHECK(G1.num_irreps() == 1);

  auto G2 = cyclic_group(2);
  CHECK(G2.order() == 2);
  const auto m = minus_identity(G2);
  CHECK(G2.irreps()[1].character[m] == Scalar(-1));
  CHECK(G2.irreps()[0].character[m] == Scalar(1));

  auto G5 = cyclic_group(5);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      Scalar s;
      for (std::size_t g = 0; g < 5; ++g) s += G5.irreps()[i].character[g] * G5.irreps()[j].character[g].conj();
      CHECK(s == Scalar(i == j ? 5 : 0));
    }
  }
}

TEST_CASE("binary dihedral groups") {
  for (int l : {2, 3, 4, 5}) {
    auto G = binary_dihedral(l);
    CHECK(G.order() == static_cast<std::size_t>(4 * l));
    CHECK(G.num_irreps() == static_cast<std::size_t>(l + 3));
    int squares = 0;
    for (std::size_t i = 0; i < G.num_irreps(); ++i) squares += G.delta(i) * G.delta(i);
    CHECK(squares == 4 * l);

    auto classes = conjugacy_classes(G);
    CHECK(classes.size() == G.num_irreps());
    for (const auto& rep : G.irreps()) {
      for (const auto& cls : classes) {
        for (auto g : cls) CHECK(rep.character[g] == rep.character[cls[0]]);
      }
      for (const auto& img : rep.images) {
        for (const auto& x : img.a) CHECK(divides(x.conductor(), 4 * l));
      }
    }
  }
  CHECK_THROWS(binary_dihedral(1));
}

TEST_CASE("group specs") {
  CHECK(parse_group_spec("cyclic:4").order() == 4);
  CHECK(parse_group_spec("bindihedral:3").order() == 12);
  CHECK_THROWS(parse_group_spec("cyclic"));
  CHECK_THROWS(parse_group_spec("icosahedral:1"));
  CHECK_THROWS(parse_group_spec("cyclic:x"));
}

TEST_CASE("McKay quivers") {
  auto z2 = mckay_quiver(cyclic_group(2));
  CHECK(z2.quiver.num_vertices() == 2);
  CHECK(z2.quiver.num_edges() == 2);
  for (const auto& e : z2.quiver.edges()) CHECK((e.tail == 0 && e.head == 1));
  CHECK(z2.multiplicity[0][1] == 2);

  auto z1 = mckay_quiver(cyclic_group(1));
  CHECK(z1.quiver == affine_quiver('A', 0));

  for (int l = 3; l <= 6; ++l) {
    auto mk = mckay_quiver(cyclic_group(l));
    CHECK(isomorphic_underlying_graphs(mk.quiver, affine_quiver('A', l - 1)));
    for (int i = 0; i < l; ++i) {
      for (int j = 0; j < l; ++j) {
        const bool adjacent = (i - j + l) % l == 1 || (j - i + l) % l == 1;
        CHECK(mk.multiplicity[i][j] == (adjacent ? 1 : 0));
      }
    }
  }
  for (int l = 2; l <= 5; ++l) {
    auto mk = mckay_quiver(binary_dihedral(l));
    CHECK(isomorphic_underlying_graphs(mk.quiver, affine_quiver('D', l + 2)));
  }
  for (const auto& G : {cyclic_group(4), binary_dihedral(3)}) {
    auto mk = mckay_quiver(G);
    const auto k = mk.delta.size();
    for (std::size_t j = 0; j < k; ++j) {
      int s = 0;
      for (std::size_t i = 0; i < k; ++i) {
        CHECK(mk.multiplicity[i][j] == mk.multiplicity[j][i]);
        s += mk.multiplicity[i][j] * mk.delta[i];
      }
      CHECK(s == 2 * mk.delta[j]);
    }
  }
}

TEST_CASE("matrix units") {
  auto G = cyclic_group(2);
  MatrixUnits mu(G);
  const auto g = minus_identity(G);
  GroupAlgebraElement f0, f1;
  f0.add(G.identity(), Scalar::rational(1, 2));
  f0.add(g, Scalar::rational(1, 2));
  f1.add(G.identity(), Scalar::rational(1, 2));
  f1.add(g, Scalar::rational(-1, 2));
  CHECK(mu.f(0) == f0);
  CHECK(mu.f(1) == f1);
  CHECK(G.multiply(mu.f(0), mu.f(1)).is_zero());
  CHECK(G.multiply(mu.f(1), mu.f(1)) == mu.f(1));
  CHECK(mu.f_sum() == G.unit());

  for (const auto& H : {cyclic_group(3), binary_dihedral(2), binary_dihedral(3)}) {
    MatrixUnits m(H);
    for (std::size_t i = 0; i < H.num_irreps(); ++i) {
      for (std::size_t x = 0; x < H.order(); ++x) {
        auto lhs = H.multiply(H.multiply(m.f(i), GroupAlgebraElement(x)), m.f(i));
        CHECK(lhs == H.irreps()[i].images[x](0, 0) * m.f(i));
      }
    }
  }
}

TEST_CASE("idempotent resolution of the identity") {
  {
    auto G = cyclic_group(3);
    MatrixUnits mu(G);
    GammaN gn(G, 2);
    CHECK(idempotent_resolution(mu, gn) == gn.unit());
  }
  {
    auto G = binary_dihedral(2);
    MatrixUnits mu(G);
    GammaN gn(G, 2);
    CHECK(idempotent_resolution(mu, gn) == gn.unit());
  }
  {
    auto G = cyclic_group(2);
    MatrixUnits mu(G);
    GammaN gn(G, 3);
    CHECK(idempotent_resolution(mu, gn) == gn.unit());
  }
}

TEST_CASE("wreath product group") {
  auto G = cyclic_group(3);
  GammaN gn(G, 3);
  CHECK(gn.order() == 27 * 6);
  std::mt19937 rng(777);
  std::uniform_int_distribution<std::size_t> pick(0, gn.order() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = pick(rng), b = pick(rng), c = pick(rng);
    CHECK(gn.mul(gn.mul(a, b), c) == gn.mul(a, gn.mul(b, c)));
    CHECK(gn.mul(a, gn.identity()) == a);
    CHECK(gn.mul(gn.identity(), a) == a);
    CHECK(gn.mul(a, gn.inv(a)) == gn.identity());
    CHECK(gn.index(gn.key(a)) == a);
  }

  // s (g_1, g_2, g_3) s^-1 = (g_{s^-1(1)}, g_{s^-1(2)}, g_{s^-1(3)})
  const Perm s({1, 2, 0});
  const std::size_t sp = gn.perm(s);
  const GammaNKey g{{1, 2, 0}, Perm::identity(3)};
  auto conj = gn.key(gn.mul(gn.mul(sp, gn.index(g)), gn.inv(sp)));
  CHECK(conj.perm.is_identity());
  const auto si = s.inverse();
  for (int p = 0; p < 3; ++p) CHECK(conj.gammas[static_cast<std::size_t>(p)] == g.gammas[static_cast<std::size_t>(si(p))]);

  // g_i h_j commutes with the class sum of s_ij
  auto sum = gn.reflection_class_sum(0, 2);
  for (std::size_t x = 0; x < 3; ++x) {
    for (std::size_t y = 0; y < 3; ++y) {
      GroupAlgebraElement gh(gn.mul(gn.gamma_at(0, x), gn.gamma_at(2, y)));
      CHECK(gn.multiply(gh, sum) == gn.multiply(sum, gh));
    }
  }
}

TEST_CASE("projection of the swap class sum") {
  auto G = cyclic_group(3);
  MatrixUnits mu(G);
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) CHECK(slot_swap_projection(mu, a, b) == Scalar(a == b ? 3 : 0));
  }
  auto Q8 = binary_dihedral(2);
  MatrixUnits mq(Q8);
  CHECK(slot_swap_projection(mq, 4, 4) == Scalar(4));
  CHECK(slot_swap_projection(mq, 0, 0) == Scalar(8));
  CHECK(slot_swap_projection(mq, 0, 4) == Scalar(0));
}

TEST_CASE("weighted matrix coefficient sums") {
  auto G = cyclic_group(3);
  MatrixUnits mu(G);
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 20; ++trial) {
    Vec2 u{random_rational(rng), random_rational(rng)};
    Vec2 v{random_rational(rng), random_rational(rng)};
    const std::size_t i = rng() % 3, j = rng() % 3, x = rng() % 3, y = rng() % 3;
    Scalar expect;
    for (std::size_t g = 0; g < 3; ++g) {
      expect += omega_L(act_on(G.element(g), u), v) * G.irreps()[j].character[g] *
                G.irreps()[i].character[G.mul(G.mul(x, G.inv(g)), y)];
    }
    CHECK(matrix_coefficient_sum(mu, i, j, x, y, u, v) == expect);
  }
}
