#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_m).
//
// An element of conductor m is stored in the power basis 1, z, ..., z^(phi(m)-1)
// reduced modulo the m-th cyclotomic polynomial. Elements whose only nonzero
// coordinate is the constant term are always demoted to conductor 1, so plain
// rationals never carry a vector of coefficients and zero has a unique form.

#include <gmpxx.h>

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace wpa {

using Rational = mpq_class;
using Integer = mpz_class;

int euler_phi(int m);

/// Integer coefficients of Phi_m, lowest degree first. Cached.
const std::vector<Integer>& cyclotomic_polynomial(int m);

int lcm_conductor(int a, int b);

class Scalar {
 public:
  Scalar() = default;
  Scalar(int v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational q) : q_(std::move(q)) { q_.canonicalize(); }  // NOLINT

  static Scalar rational(long num, long den = 1);
  /// zeta_m^k, the primitive m-th root of unity exp(2 pi i / m) raised to k.
  static Scalar zeta(int m, long k = 1);
  static Scalar from_coeffs(int m, std::vector<Rational> coeffs);
  /// Parses "3", "-3/2" or "0". Floats are rejected.
  static Scalar parse(std::string_view text);

  int conductor() const { return m_; }
  bool is_zero() const { return m_ == 1 && sgn(q_) == 0; }
  bool is_one() const { return m_ == 1 && q_ == 1; }
  bool is_rational() const { return m_ == 1; }
  const Rational& to_rational() const;

  /// Power-basis coordinates in Q(zeta_m), length phi(m).
  std::vector<Rational> coeffs() const;
  /// Same element expressed with conductor M; requires conductor() | M.
  std::vector<Rational> coeffs_in(int M) const;

  Scalar inverse() const;
  /// Complex conjugate (zeta -> zeta^-1).
  Scalar conj() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Total bit length of all numerators and denominators; used for pivoting.
  std::size_t bit_size() const;

  std::string str() const;

 private:
  int m_ = 1;
  Rational q_{0};               // value when m_ == 1
  std::vector<Rational> c_;     // power-basis coordinates when m_ > 1

  void normalize();
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace wpa
