#include "wpa/scalar.hpp"

#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace wpa {

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// Exact division of integer polynomials, b monic.
std::vector<Integer> divide_monic(std::vector<Integer> a, const std::vector<Integer>& b) {
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) return {};
  std::vector<Integer> q(a.size() - db);
  for (std::size_t i = a.size(); i-- > db;) {
    const Integer c = a[i];
    if (c == 0) continue;
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  return q;
}

// p <- p mod Phi_M, result has length phi(M).
void reduce_mod(Poly& p, int M) {
  const auto& phi = cyclotomic_polynomial(M);
  const std::size_t d = phi.size() - 1;
  for (std::size_t i = p.size(); i-- > d;) {
    if (sgn(p[i]) == 0) continue;
    const Rational c = p[i];
    for (std::size_t j = 0; j < d; ++j) {
      if (phi[j] != 0) p[i - d + j] -= c * phi[j];
    }
    p[i] = 0;
  }
  p.resize(d);
}

// Polynomial division over Q: a = q*b + r.
void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Rational(0));
  const Rational& lead = b.back();
  while (!r.empty() && r.size() >= b.size()) {
    const std::size_t shift = r.size() - b.size();
    const Rational c = r.back() / lead;
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] -= c * b[j];
    trim(r);
  }
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (sgn(b[j]) == 0) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

Poly sub(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

}  // namespace

int euler_phi(int m) {
  if (m < 1) throw std::invalid_argument("euler_phi: conductor must be positive");
  int result = m;
  int x = m;
  for (int p = 2; p * p <= x; ++p) {
    if (x % p == 0) {
      while (x % p == 0) x /= p;
      result -= result / p;
    }
  }
  if (x > 1) result -= result / x;
  return result;
}

const std::vector<Integer>& cyclotomic_polynomial(int m) {
  static std::mutex mu;
  static std::map<int, std::vector<Integer>> cache;
  if (m < 1) throw std::invalid_argument("cyclotomic_polynomial: m must be positive");
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  // x^m - 1 divided by Phi_d for every proper divisor d.
  std::vector<Integer> num(m + 1);
  num[0] = -1;
  num[m] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d == 0) num = divide_monic(num, cyclotomic_polynomial(d));
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(m, std::move(num)).first->second;
}

int lcm_conductor(int a, int b) { return std::lcm(a, b); }

Scalar Scalar::rational(long num, long den) {
  if (den == 0) throw std::domain_error("Scalar::rational: zero denominator");
  return Scalar(Rational(num, den));
}

Scalar Scalar::zeta(int m, long k) {
  if (m < 1) throw std::invalid_argument("Scalar::zeta: conductor must be positive");
  k %= m;
  if (k < 0) k += m;
  if (m == 1) return Scalar(1);
  Poly p(static_cast<std::size_t>(std::max<long>(k + 1, euler_phi(m))), Rational(0));
  p[k] = 1;
  reduce_mod(p, m);
  return from_coeffs(m, std::move(p));
}

Scalar Scalar::from_coeffs(int m, std::vector<Rational> coeffs) {
  if (m < 1) throw std::invalid_argument("Scalar::from_coeffs: conductor must be positive");
  const auto d = static_cast<std::size_t>(euler_phi(m));
  if (coeffs.size() > d) reduce_mod(coeffs, m);
  coeffs.resize(d, Rational(0));
  Scalar s;
  if (m == 1) {
    s.q_ = coeffs[0];
    return s;
  }
  s.m_ = m;
  s.c_ = std::move(coeffs);
  s.normalize();
  return s;
}

Scalar Scalar::parse(std::string_view text) {
  std::string t(text);
  auto b = t.find_first_not_of(" \t");
  auto e = t.find_last_not_of(" \t");
  if (b == std::string::npos) throw std::invalid_argument("empty number");
  t = t.substr(b, e - b + 1);
  for (char ch : t) {
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || ch == '-' || ch == '+')) {
      throw std::invalid_argument("not an exact rational: '" + t + "'");
    }
  }
  if (t[0] == '+') t = t.substr(1);
  Rational q;
  if (q.set_str(t, 10) != 0) throw std::invalid_argument("not an exact rational: '" + t + "'");
  if (q.get_den() == 0) throw std::domain_error("zero denominator in '" + t + "'");
  q.canonicalize();
  return Scalar(q);
}

const Rational& Scalar::to_rational() const {
  if (m_ != 1) throw std::logic_error("Scalar::to_rational: value is not rational: " + str());
  return q_;
}

std::vector<Rational> Scalar::coeffs() const {
  if (m_ == 1) return {q_};
  return c_;
}

std::vector<Rational> Scalar::coeffs_in(int M) const {
  if (M % m_ != 0) throw std::invalid_argument("Scalar::coeffs_in: conductor does not divide target");
  const auto d = static_cast<std::size_t>(euler_phi(M));
  if (m_ == 1) {
    std::vector<Rational> out(d, Rational(0));
    out[0] = q_;
    return out;
  }
  if (M == m_) return c_;
  const int step = M / m_;
  Poly p(static_cast<std::size_t>(step) * c_.size() + 1, Rational(0));
  for (std::size_t k = 0; k < c_.size(); ++k) p[k * step] = c_[k];
  if (p.size() < d) p.resize(d, Rational(0));
  reduce_mod(p, M);
  return p;
}

void Scalar::normalize() {
  if (m_ == 1) return;
  for (std::size_t k = 1; k < c_.size(); ++k) {
    if (sgn(c_[k]) != 0) return;
  }
  q_ = c_.empty() ? Rational(0) : c_[0];
  c_.clear();
  m_ = 1;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("Scalar: division by zero");
  if (m_ == 1) return Scalar(Rational(1) / q_);
  Poly phi;
  for (const auto& z : cyclotomic_polynomial(m_)) phi.emplace_back(z);
  Poly a = c_;
  trim(a);
  // Extended Euclid tracking the cofactor of a.
  Poly r0 = phi, r1 = a, s0, s1{Rational(1)};
  while (!r1.empty()) {
    Poly q, r;
    divmod(r0, r1, q, r);
    Poly s2 = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.size() != 1) throw std::logic_error("Scalar::inverse: Phi_m is not coprime to element");
  for (auto& c : s0) c /= r0[0];
  if (s0.size() < c_.size()) s0.resize(c_.size(), Rational(0));
  reduce_mod(s0, m_);
  return from_coeffs(m_, std::move(s0));
}

Scalar Scalar::conj() const {
  if (m_ == 1) return *this;
  Poly p(static_cast<std::size_t>(m_), Rational(0));
  for (std::size_t k = 0; k < c_.size(); ++k) {
    p[(m_ - static_cast<int>(k)) % m_] += c_[k];
  }
  reduce_mod(p, m_);
  return from_coeffs(m_, std::move(p));
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  s.q_ = -s.q_;
  for (auto& c : s.c_) c = -c;
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (m_ == 1 && o.m_ == 1) {
    q_ += o.q_;
    return *this;
  }
  const int M = lcm_conductor(m_, o.m_);
  auto a = coeffs_in(M);
  const auto b = o.coeffs_in(M);
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  *this = from_coeffs(M, std::move(a));
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.m_ == 1 && b.m_ == 1) return Scalar(Rational(a.q_ * b.q_));
  if (a.is_zero() || b.is_zero()) return Scalar();
  if (a.m_ == 1 || b.m_ == 1) {
    const Scalar& r = a.m_ == 1 ? a : b;
    const Scalar& c = a.m_ == 1 ? b : a;
    Scalar out = c;
    for (auto& x : out.c_) x *= r.q_;
    return out;
  }
  const int M = lcm_conductor(a.m_, b.m_);
  Poly p = mul(a.coeffs_in(M), b.coeffs_in(M));
  const auto d = static_cast<std::size_t>(euler_phi(M));
  if (p.size() < d) p.resize(d, Rational(0));
  reduce_mod(p, M);
  return Scalar::from_coeffs(M, std::move(p));
}

Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }

Scalar& Scalar::operator/=(const Scalar& o) { return *this = *this * o.inverse(); }

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.m_ == 1 && b.m_ == 1) return a.q_ == b.q_;
  if (a.m_ == 1 || b.m_ == 1) return false;  // normalized: genuine irrationals only
  if (a.m_ == b.m_) return a.c_ == b.c_;
  const int M = lcm_conductor(a.m_, b.m_);
  return a.coeffs_in(M) == b.coeffs_in(M);
}

std::size_t Scalar::bit_size() const {
  auto bits = [](const Rational& q) {
    return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
  };
  if (m_ == 1) return bits(q_);
  std::size_t total = 0;
  for (const auto& c : c_) total += bits(c);
  return total;
}

std::string Scalar::str() const {
  if (m_ == 1) return q_.get_str();
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    const Rational& c = c_[k];
    if (sgn(c) == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << "z" << m_;
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace wpa
