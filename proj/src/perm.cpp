#include "wpa/perm.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace wpa {

Perm::Perm(std::vector<int> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (int x : img_) {
    if (x < 0 || x >= n() || seen[static_cast<std::size_t>(x)]) {
      throw std::invalid_argument("Perm: image list is not a permutation");
    }
    seen[static_cast<std::size_t>(x)] = true;
  }
}

Perm Perm::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return Perm(std::move(v));
}

Perm Perm::transposition(int n, int i, int j) {
  Perm p = identity(n);
  std::swap(p.img_.at(static_cast<std::size_t>(i)), p.img_.at(static_cast<std::size_t>(j)));
  return p;
}

std::vector<Perm> Perm::all(int n) {
  std::vector<Perm> out;
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

Perm Perm::operator*(const Perm& o) const {
  if (o.n() != n()) throw std::invalid_argument("Perm: size mismatch");
  std::vector<int> v(img_.size());
  for (std::size_t x = 0; x < v.size(); ++x) v[x] = img_[static_cast<std::size_t>(o.img_[x])];
  return Perm(std::move(v));
}

Perm Perm::inverse() const {
  std::vector<int> v(img_.size());
  for (std::size_t x = 0; x < v.size(); ++x) v[static_cast<std::size_t>(img_[x])] = static_cast<int>(x);
  return Perm(std::move(v));
}

bool Perm::is_identity() const {
  for (std::size_t x = 0; x < img_.size(); ++x) {
    if (img_[x] != static_cast<int>(x)) return false;
  }
  return true;
}

int Perm::sign() const {
  int s = 1;
  std::vector<bool> seen(img_.size(), false);
  for (std::size_t x = 0; x < img_.size(); ++x) {
    if (seen[x]) continue;
    std::size_t len = 0;
    for (std::size_t y = x; !seen[y]; y = static_cast<std::size_t>(img_[y])) {
      seen[y] = true;
      ++len;
    }
    if (len % 2 == 0) s = -s;
  }
  return s;
}

Labels Perm::act(const Labels& labels) const {
  if (labels.size() != img_.size()) throw std::invalid_argument("Perm::act: arity mismatch");
  Labels out(labels.size());
  for (std::size_t p = 0; p < labels.size(); ++p) out[static_cast<std::size_t>(img_[p])] = labels[p];
  return out;
}

std::string Perm::str() const {
  std::string s;
  std::vector<bool> seen(img_.size(), false);
  for (std::size_t x = 0; x < img_.size(); ++x) {
    if (seen[x] || img_[x] == static_cast<int>(x)) continue;
    s += "(";
    for (std::size_t y = x; !seen[y]; y = static_cast<std::size_t>(img_[y])) {
      seen[y] = true;
      if (y != x) s += " ";
      s += std::to_string(y + 1);
    }
    s += ")";
  }
  return s.empty() ? "id" : s;
}

}  // namespace wpa
