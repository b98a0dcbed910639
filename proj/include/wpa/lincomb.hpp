#pragma once

#include <cstddef>
#include <map>
#include <utility>

#include "wpa/scalar.hpp"

namespace wpa {

/// Finite linear combination of basis keys with exact coefficients. Zero
/// coefficients are never stored.
template <class Key>
class LinComb {
 public:
  using Map = std::map<Key, Scalar>;

  LinComb() = default;
  explicit LinComb(Key k, Scalar c = Scalar(1)) { add(std::move(k), c); }

  void add(const Key& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Scalar coeff(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Scalar() : it->second;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }
  const Map& terms() const { return terms_; }

  LinComb& operator+=(const LinComb& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  LinComb& operator-=(const LinComb& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  LinComb& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }
  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator*(const Scalar& s, LinComb a) { return a *= s; }
  LinComb operator-() const { return Scalar(-1) * *this; }
  friend bool operator==(const LinComb& a, const LinComb& b) { return a.terms_ == b.terms_; }

 private:
  Map terms_;
};

}  // namespace wpa
