#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "support.hpp"
#include "wpa/sra.hpp"

using namespace wpa;
using wpa::testing::random_rational;

namespace {

VecV unit(int dim, int k) {
  VecV v(static_cast<std::size_t>(dim));
  v[static_cast<std::size_t>(k)] = 1;
  return v;
}

// u placed at site i of V = L^n.
VecV at_site(int n, int i, const Vec2& u) {
  VecV v(static_cast<std::size_t>(2 * n));
  v[static_cast<std::size_t>(2 * i)] = u[0];
  v[static_cast<std::size_t>(2 * i + 1)] = u[1];
  return v;
}

SraParams random_params(const FiniteGroup& G, std::mt19937& rng) {
  // cyclic groups are abelian, so every choice is class-constant
  std::vector<Scalar> c;
  for (std::size_t g = 1; g < G.order(); ++g) c.push_back(random_rational(rng));
  return make_params(G, random_rational(rng), random_rational(rng), c);
}

SraElement random_element(const SraAlgebra& H, std::mt19937& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree), let(0, H.num_letters() - 1);
  std::uniform_int_distribution<std::size_t> grp(0, H.gamma_n().order() - 1);
  SraElement x;
  for (int t = 0; t < 3; ++t) {
    std::vector<int> w(static_cast<std::size_t>(deg(rng)));
    for (auto& a : w) a = let(rng);
    x += random_rational(rng) * H.word(w, grp(rng));
  }
  return x;
}

}  // namespace

TEST_CASE("reflection enumeration") {
  auto trivial = cyclic_group(1);
  GammaN g1(trivial, 2);
  auto r1 = enumerate_reflections(g1);
  REQUIRE(r1.size() == 1);
  CHECK(r1[0].kind == ReflectionKind::S);
  CHECK(r1[0].element == g1.perm(Perm::transposition(2, 0, 1)));

  auto z2 = cyclic_group(2);
  GammaN g2(z2, 2);
  auto r2 = enumerate_reflections(g2);
  CHECK(r2.size() == 4);
  int s_count = 0;
  for (const auto& s : r2) s_count += s.kind == ReflectionKind::S ? 1 : 0;
  CHECK(s_count == 2);

  auto z3 = cyclic_group(3);
  GammaN g3(z3, 3);
  CHECK(enumerate_reflections(g3).size() == 3 * 3 + 3 * 2);
  auto q8 = binary_dihedral(2);
  GammaN gq(q8, 2);
  CHECK(enumerate_reflections(gq).size() == 8 + 2 * 7);
}

TEST_CASE("omega_s tables") {
  for (int l : {2, 3}) {
    auto G = cyclic_group(l);
    for (int n : {2, 3}) {
      GammaN gn(G, n);
      const int dim = 2 * n;
      for (const auto& s : enumerate_reflections(gn)) {
        for (int a = 0; a < dim; ++a) {
          for (int b = 0; b < dim; ++b) CHECK(omega_s(s, unit(dim, a), unit(dim, b)) == omega_s_closed(s, unit(dim, a), unit(dim, b)));
        }
        const Vec2 x{Scalar(1), Scalar(0)}, y{Scalar(0), Scalar(1)};
        if (s.kind == ReflectionKind::S) {
          CHECK(omega_s(s, at_site(n, s.i, x), at_site(n, s.i, y)) == Scalar::rational(1, 2));
          for (int m = 0; m < n; ++m) {
            if (m != s.i && m != s.j) CHECK(omega_s(s, at_site(n, m, x), at_site(n, m, y)).is_zero());
          }
          for (const auto& u : {x, y}) {
            for (const auto& v : {x, y}) {
              const Scalar expect = -omega_L(u, act_on(G.element(G.inv(s.gamma)), v)) * Scalar::rational(1, 2);
              CHECK(omega_s(s, at_site(n, s.i, u), at_site(n, s.j, v)) == expect);
            }
          }
        } else {
          CHECK(omega_s(s, at_site(n, s.i, x), at_site(n, s.i, y)) == Scalar(1));
          for (int m = 0; m < n; ++m) {
            if (m != s.i) CHECK(omega_s(s, at_site(n, m, x), at_site(n, m, y)).is_zero());
            for (int m2 = 0; m2 < n; ++m2) {
              if (m2 != m && m != s.i) CHECK(omega_s(s, at_site(n, m, x), at_site(n, m2, y)).is_zero());
            }
          }
        }
      }
    }
  }
}

TEST_CASE("kappa and the explicit relations") {
  auto trivial = cyclic_group(1);
  GammaN g1(trivial, 2);
  const Scalar t = Scalar::rational(3, 2), k = Scalar::rational(-2, 5);
  SraAlgebra H(g1, make_params(trivial, t, k, {}));
  GroupAlgebraElement expect;
  expect.add(g1.identity(), t);
  expect.add(g1.perm(Perm::transposition(2, 0, 1)), k * Scalar::rational(1, 2));
  CHECK(H.kappa_letters(x_letter(0), y_letter(0)) == expect);
  for (int a = 0; a < 4; ++a) CHECK(H.kappa_letters(a, a).is_zero());
  CHECK(H.kappa_letters(x_letter(0), x_letter(1)).is_zero());
  auto rels = H.relations();
  CHECK(rels.size() == 2 + 8);
  CHECK(rels[0].rhs == expect);

  std::mt19937 rng(515);
  auto z3 = cyclic_group(3);
  GammaN g3(z3, 2);
  for (int trial = 0; trial < 3; ++trial) {
    SraAlgebra H3(g3, random_params(z3, rng));
    CHECK_NOTHROW(H3.relations());
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) CHECK(H3.kappa_letters(a, b) == -H3.kappa_letters(b, a));
    }
  }
}

TEST_CASE("parameters must be class functions") {
  auto q8 = binary_dihedral(2);
  std::vector<Scalar> c(7, Scalar(0));
  CHECK_NOTHROW(make_params(q8, 1, 1, c));
  c[0] = 1;  // diag(i, -i), conjugate to its inverse
  CHECK_THROWS(make_params(q8, 1, 1, c));
  CHECK_THROWS(make_params(q8, 1, 1, {Scalar(1)}));
}

TEST_CASE("normal form") {
  auto trivial = cyclic_group(1);
  GammaN g1(trivial, 2);
  const Scalar t = 2, k = Scalar::rational(1, 3);
  SraAlgebra H(g1, make_params(trivial, t, k, {}));
  const auto s12 = g1.perm(Perm::transposition(2, 0, 1));
  CHECK(H.normal_form(H.group_element(s12)) == H.group_element(s12));
  SraElement expect = H.word({x_letter(0), y_letter(0)}) - t * H.group_element(0) -
                      k * Scalar::rational(1, 2) * H.group_element(s12);
  CHECK(H.normal_form(H.word({y_letter(0), x_letter(0)})) == expect);
  CHECK(H.normal_form(H.parse_word("y1 x1")) == expect);
  CHECK(H.parse_word("x2 s12") == H.multiply(H.letter(x_letter(1)), H.group_element(s12)));
  CHECK(H.parse_word("s12 x2") == H.multiply(H.group_element(s12), H.letter(x_letter(1))));
  CHECK(H.parse_word("s12 x2") == H.word({x_letter(0)}, s12));
  CHECK_THROWS(H.parse_word("x3"));
  CHECK_THROWS(H.parse_word("z1"));

  std::mt19937 rng(8080);
  auto z2 = cyclic_group(2);
  GammaN g2(z2, 2);
  SraAlgebra H2(g2, random_params(z2, rng));
  for (int trial = 0; trial < 40; ++trial) {
    auto x = random_element(H2, rng, 2), y = random_element(H2, rng, 2);
    auto nx = H2.normal_form(x);
    CHECK(H2.normal_form(nx) == nx);
    CHECK(H2.nf_product(x, y) == H2.nf_product(nx, H2.normal_form(y)));
    CHECK(H2.normal_form(x + y) == nx + H2.normal_form(y));
  }
  for (const auto& [m, c] : H2.normal_form(random_element(H2, rng, 4))) {
    CHECK(std::is_sorted(m.word.begin(), m.word.end()));
  }
}

TEST_CASE("PBW property through degree 3") {
  std::mt19937 rng(12);
  auto z2 = cyclic_group(2);
  GammaN g2(z2, 2);
  SraAlgebra H(g2, random_params(z2, rng));
  auto rep = sra_pbw_check(H, 3);
  CHECK(rep.expected == 35 * 8);
  CHECK(rep.quotient_dim == rep.expected);
  CHECK(rep.normal_form_rank == rep.expected);
  CHECK(rep.ideal_killed);
  CHECK(rep.pass);
}

TEST_CASE("PBW check rejects a non-central deformation") {
  auto q8 = binary_dihedral(2);
  GammaN g(q8, 1);
  SraAlgebra good(g, make_params(q8, 1, 0, std::vector<Scalar>(7, Scalar(1))));
  CHECK(sra_pbw_check(good, 3).pass);
  SraParams bad{Scalar(1), Scalar(0), std::vector<Scalar>(8, Scalar(0))};
  bad.cprime[1] = 1;
  SraAlgebra broken(g, bad);
  CHECK_FALSE(sra_pbw_check(broken, 3).pass);
}
