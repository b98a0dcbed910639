#include "wpa/groups.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <stdexcept>

namespace wpa {

Matrix::Matrix(int r, int c, std::vector<Scalar> entries) : rows(r), cols(c), a(std::move(entries)) {
  if (a.size() != static_cast<std::size_t>(r * c)) throw std::invalid_argument("Matrix: size mismatch");
}

Matrix Matrix::identity(int d) {
  Matrix m(d, d);
  for (int i = 0; i < d; ++i) m(i, i) = 1;
  return m;
}

Scalar Matrix::trace() const {
  Scalar s;
  for (int i = 0; i < rows && i < cols; ++i) s += (*this)(i, i);
  return s;
}

Scalar Matrix::det2() const {
  if (rows != 2 || cols != 2) throw std::logic_error("det2: not 2x2");
  return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0);
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols != o.rows) throw std::invalid_argument("Matrix: shape mismatch");
  Matrix out(rows, o.cols);
  for (int i = 0; i < rows; ++i) {
    for (int k = 0; k < cols; ++k) {
      const Scalar& x = (*this)(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < o.cols; ++j) out(i, j) += x * o(k, j);
    }
  }
  return out;
}

Scalar omega_L(const Vec2& u, const Vec2& v) { return u[0] * v[1] - u[1] * v[0]; }

Vec2 act_on(const Matrix& g, const Vec2& u) {
  return {g(0, 0) * u[0] + g(0, 1) * u[1], g(1, 0) * u[0] + g(1, 1) * u[1]};
}

namespace {

std::string matrix_key(const Matrix& m) {
  std::string s;
  for (const auto& x : m.a) {
    s += x.str();
    s += ';';
  }
  return s;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error(what);
}

}  // namespace

FiniteGroup::FiniteGroup(std::string name, int conductor, std::vector<Matrix> generators,
                         std::vector<std::vector<Matrix>> irrep_generators)
    : name_(std::move(name)), conductor_(conductor) {
  for (const auto& gens : irrep_generators) {
    require(gens.size() == generators.size(), name_ + ": irrep generator count");
  }
  std::map<std::string, std::size_t> lookup;
  elements_.push_back(Matrix::identity(2));
  lookup.emplace(matrix_key(elements_[0]), 0);
  irreps_.resize(irrep_generators.size());
  for (std::size_t i = 0; i < irreps_.size(); ++i) {
    irreps_[i].dim = irrep_generators[i].empty() ? 1 : irrep_generators[i][0].rows;
    irreps_[i].images.push_back(Matrix::identity(irreps_[i].dim));
  }
  for (std::size_t e = 0; e < elements_.size(); ++e) {
    for (std::size_t k = 0; k < generators.size(); ++k) {
      Matrix next = elements_[e] * generators[k];
      auto key = matrix_key(next);
      if (lookup.count(key)) continue;
      lookup.emplace(key, elements_.size());
      elements_.push_back(std::move(next));
      for (std::size_t i = 0; i < irreps_.size(); ++i) {
        irreps_[i].images.push_back(irreps_[i].images[e] * irrep_generators[i][k]);
      }
    }
  }

  const std::size_t N = elements_.size();
  table_.resize(N * N);
  inverse_.assign(N, N);
  for (std::size_t g = 0; g < N; ++g) {
    for (std::size_t h = 0; h < N; ++h) {
      auto it = lookup.find(matrix_key(elements_[g] * elements_[h]));
      require(it != lookup.end(), name_ + ": not closed");
      table_[g * N + h] = it->second;
      if (it->second == 0) inverse_[g] = h;
    }
    require(inverse_[g] < N, name_ + ": missing inverse");
  }

  const std::vector<Vec2> basis = {{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}};
  for (const auto& g : elements_) {
    require(g.det2().is_one(), name_ + ": determinant is not 1");
    for (const auto& u : basis) {
      for (const auto& v : basis) {
        require(omega_L(act_on(g, u), act_on(g, v)) == omega_L(u, v), name_ + ": omega not preserved");
      }
    }
  }

  std::size_t square_sum = 0;
  for (auto& rep : irreps_) {
    square_sum += static_cast<std::size_t>(rep.dim * rep.dim);
    for (std::size_t g = 0; g < N; ++g) {
      for (std::size_t h = 0; h < N; ++h) {
        require(rep.images[mul(g, h)] == rep.images[g] * rep.images[h], name_ + ": irrep not a homomorphism");
      }
    }
    rep.character.reserve(N);
    for (const auto& m : rep.images) rep.character.push_back(m.trace());
  }
  require(square_sum == N, name_ + ": squared irrep dimensions do not sum to the order");
  const Scalar inv_order = Scalar(Rational(1, static_cast<long>(N)));
  for (std::size_t i = 0; i < irreps_.size(); ++i) {
    for (std::size_t j = 0; j < irreps_.size(); ++j) {
      Scalar s;
      for (std::size_t g = 0; g < N; ++g) s += irreps_[i].character[g] * irreps_[j].character[g].conj();
      require(s * inv_order == Scalar(i == j ? 1 : 0), name_ + ": characters not orthonormal");
    }
  }
}

std::size_t FiniteGroup::index_of(const Matrix& m) const {
  for (std::size_t g = 0; g < elements_.size(); ++g) {
    if (elements_[g] == m) return g;
  }
  throw std::invalid_argument(name_ + ": matrix is not a group element");
}

GroupAlgebraElement FiniteGroup::multiply(const GroupAlgebraElement& x,
                                          const GroupAlgebraElement& y) const {
  GroupAlgebraElement out;
  for (const auto& [g, a] : x) {
    for (const auto& [h, b] : y) out.add(mul(g, h), a * b);
  }
  return out;
}

namespace {

Matrix diag2(const Scalar& a, const Scalar& b) { return Matrix(2, 2, {a, Scalar(0), Scalar(0), b}); }
Matrix one_by_one(const Scalar& a) { return Matrix(1, 1, {a}); }

}  // namespace

FiniteGroup cyclic_group(int l) {
  if (l < 1) throw std::invalid_argument("cyclic_group: l must be at least 1");
  std::vector<std::vector<Matrix>> irreps;
  for (int i = 0; i < l; ++i) irreps.push_back({one_by_one(Scalar::zeta(l, i))});
  return FiniteGroup("cyclic:" + std::to_string(l), l,
                     {diag2(Scalar::zeta(l, 1), Scalar::zeta(l, -1))}, std::move(irreps));
}

FiniteGroup binary_dihedral(int l) {
  if (l < 2) throw std::invalid_argument("binary_dihedral: l must be at least 2");
  const int m = 2 * l;
  Matrix a = diag2(Scalar::zeta(m, 1), Scalar::zeta(m, -1));
  Matrix b(2, 2, {Scalar(0), Scalar(1), Scalar(-1), Scalar(0)});
  std::vector<std::vector<Matrix>> irreps;
  for (int sa : {1, -1}) {
    for (int sb : {1, -1}) {
      Scalar bv = (l % 2 == 1 && sa == -1) ? Scalar(sb) * Scalar::zeta(4, 1) : Scalar(sb);
      irreps.push_back({one_by_one(Scalar(sa)), one_by_one(bv)});
    }
  }
  for (int k = 1; k < l; ++k) {
    const int s = k % 2 == 0 ? 1 : -1;
    irreps.push_back({diag2(Scalar::zeta(m, k), Scalar::zeta(m, -k)),
                      Matrix(2, 2, {Scalar(0), Scalar(s), Scalar(1), Scalar(0)})});
  }
  return FiniteGroup("bindihedral:" + std::to_string(l), lcm_conductor(m, 4), {a, b},
                     std::move(irreps));
}

FiniteGroup parse_group_spec(std::string_view spec) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("group spec: expected family:l");
  auto family = spec.substr(0, colon);
  auto num = spec.substr(colon + 1);
  int l = 0;
  auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), l);
  if (ec != std::errc() || ptr != num.data() + num.size()) {
    throw std::invalid_argument("group spec: bad integer in " + std::string(spec));
  }
  if (family == "cyclic") return cyclic_group(l);
  if (family == "bindihedral") return binary_dihedral(l);
  throw std::invalid_argument("group spec: unknown family " + std::string(family));
}

McKayData mckay_quiver(const FiniteGroup& G) {
  const std::size_t k = G.num_irreps();
  const Scalar inv_order = Scalar(Rational(1, static_cast<long>(G.order())));
  McKayData out;
  out.multiplicity.assign(k, std::vector<int>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    out.delta.push_back(G.delta(i));
    for (std::size_t j = 0; j < k; ++j) {
      Scalar s;
      for (std::size_t g = 0; g < G.order(); ++g) {
        s += G.irreps()[i].character[g].conj() * G.chi_L(g) * G.irreps()[j].character[g];
      }
      s *= inv_order;
      require(s.is_rational() && s.to_rational().get_den() == 1 && sgn(s.to_rational()) >= 0,
              "mckay: multiplicity is not a nonnegative integer");
      out.multiplicity[i][j] = static_cast<int>(s.to_rational().get_num().get_si());
    }
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      int m = out.multiplicity[i][j];
      require(m == out.multiplicity[j][i], "mckay: multiplicity matrix not symmetric");
      if (i == j) {
        require(m % 2 == 0, "mckay: odd loop multiplicity");
        m /= 2;
      }
      for (int c = 0; c < m; ++c) edges.push_back({static_cast<int>(i), static_cast<int>(j)});
    }
  }
  out.quiver = Quiver(static_cast<int>(k), std::move(edges));
  return out;
}

MatrixUnits::MatrixUnits(const FiniteGroup& G) : G_(&G) {
  const std::size_t N = G.order();
  for (std::size_t i = 0; i < G.num_irreps(); ++i) {
    const Irrep& rep = G.irreps()[i];
    const int d = rep.dim;
    const Scalar scale = Scalar(Rational(d, static_cast<long>(N)));
    std::vector<GroupAlgebraElement> block(static_cast<std::size_t>(d * d));
    for (int p = 0; p < d; ++p) {
      for (int q = 0; q < d; ++q) {
        auto& e = block[static_cast<std::size_t>(p * d + q)];
        for (std::size_t g = 0; g < N; ++g) e.add(g, scale * rep.images[G.inv(g)](q, p));
      }
    }
    units_.push_back(std::move(block));
  }

  GroupAlgebraElement total;
  for (std::size_t i = 0; i < units_.size(); ++i) {
    const int d = G.delta(i);
    for (int p = 0; p < d; ++p) total += E(i, p, p);
    for (std::size_t j = 0; j < units_.size(); ++j) {
      const int dj = G.delta(j);
      for (int p = 0; p < d; ++p) {
        for (int q = 0; q < d; ++q) {
          for (int r = 0; r < dj; ++r) {
            for (int s = 0; s < dj; ++s) {
              auto prod = G.multiply(E(i, p, q), E(j, r, s));
              bool ok = (i == j && q == r) ? prod == E(i, p, s) : prod.is_zero();
              require(ok, G.name() + ": matrix unit law fails");
            }
          }
        }
      }
    }
  }
  require(total == G.unit(), G.name() + ": matrix units do not resolve the identity");
}

const GroupAlgebraElement& MatrixUnits::E(std::size_t i, int p, int q) const {
  const int d = G_->delta(i);
  if (p < 0 || q < 0 || p >= d || q >= d) throw std::out_of_range("MatrixUnits: index");
  return units_.at(i)[static_cast<std::size_t>(p * d + q)];
}

GroupAlgebraElement MatrixUnits::f_sum() const {
  GroupAlgebraElement out;
  for (std::size_t i = 0; i < units_.size(); ++i) out += f(i);
  return out;
}

GammaN::GammaN(const FiniteGroup& G, int n) : G_(&G), n_(n), perms_(Perm::all(n)) {
  if (n < 1) throw std::invalid_argument("GammaN: n must be at least 1");
  power_ = 1;
  for (int k = 0; k < n; ++k) power_ *= G.order();
  count_ = power_ * perms_.size();
  if (count_ <= 4096) {
    table_.resize(count_ * count_);
    for (std::size_t a = 0; a < count_; ++a) {
      for (std::size_t b = 0; b < count_; ++b) table_[a * count_ + b] = compute_mul(a, b);
    }
  }
}

std::size_t GammaN::index(const GammaNKey& k) const {
  if (static_cast<int>(k.gammas.size()) != n_ || k.perm.n() != n_) {
    throw std::invalid_argument("GammaN: key has wrong length");
  }
  std::size_t code = 0;
  for (int s = n_ - 1; s >= 0; --s) code = code * G_->order() + k.gammas[static_cast<std::size_t>(s)];
  auto it = std::lower_bound(perms_.begin(), perms_.end(), k.perm);
  return static_cast<std::size_t>(it - perms_.begin()) * power_ + code;
}

GammaNKey GammaN::key(std::size_t idx) const {
  GammaNKey k;
  k.perm = perms_.at(idx / power_);
  std::size_t code = idx % power_;
  for (int s = 0; s < n_; ++s) {
    k.gammas.push_back(code % G_->order());
    code /= G_->order();
  }
  return k;
}

std::size_t GammaN::compute_mul(std::size_t a, std::size_t b) const {
  GammaNKey x = key(a);
  GammaNKey y = key(b);
  GammaNKey out;
  out.gammas.resize(static_cast<std::size_t>(n_));
  for (int p = 0; p < n_; ++p) {
    auto q = static_cast<std::size_t>(x.perm(p));
    out.gammas[q] = G_->mul(x.gammas[q], y.gammas[static_cast<std::size_t>(p)]);
  }
  out.perm = x.perm * y.perm;
  return index(out);
}

std::size_t GammaN::mul(std::size_t a, std::size_t b) const {
  if (!table_.empty()) return table_[a * count_ + b];
  return compute_mul(a, b);
}

std::size_t GammaN::inv(std::size_t a) const {
  GammaNKey x = key(a);
  Perm pinv = x.perm.inverse();
  GammaNKey out;
  out.perm = pinv;
  out.gammas.resize(static_cast<std::size_t>(n_));
  // (g, s)^-1 = (s^-1(g^-1), s^-1)
  for (int p = 0; p < n_; ++p) {
    out.gammas[static_cast<std::size_t>(pinv(p))] = G_->inv(x.gammas[static_cast<std::size_t>(p)]);
  }
  return index(out);
}

std::size_t GammaN::gamma_at(int slot, std::size_t g) const {
  GammaNKey k{std::vector<std::size_t>(static_cast<std::size_t>(n_), G_->identity()), Perm::identity(n_)};
  k.gammas.at(static_cast<std::size_t>(slot)) = g;
  return index(k);
}

std::size_t GammaN::perm(const Perm& p) const {
  return index({std::vector<std::size_t>(static_cast<std::size_t>(n_), G_->identity()), p});
}

GroupAlgebraElement GammaN::multiply(const GroupAlgebraElement& x,
                                     const GroupAlgebraElement& y) const {
  GroupAlgebraElement out;
  for (const auto& [a, c] : x) {
    for (const auto& [b, d] : y) out.add(mul(a, b), c * d);
  }
  return out;
}

GroupAlgebraElement GammaN::tensor(const std::vector<GroupAlgebraElement>& factors) const {
  if (static_cast<int>(factors.size()) != n_) throw std::invalid_argument("GammaN::tensor: arity");
  GroupAlgebraElement out = unit();
  for (int s = 0; s < n_; ++s) {
    GroupAlgebraElement lifted;
    for (const auto& [g, c] : factors[static_cast<std::size_t>(s)]) lifted.add(gamma_at(s, g), c);
    out = multiply(out, lifted);
  }
  return out;
}

GroupAlgebraElement GammaN::reflection_class_sum(int i, int j) const {
  GroupAlgebraElement out;
  const std::size_t s = perm(Perm::transposition(n_, i, j));
  for (std::size_t g = 0; g < G_->order(); ++g) {
    out.add(mul(s, mul(gamma_at(i, g), gamma_at(j, G_->inv(g)))), Scalar(1));
  }
  return out;
}

std::string GammaN::str(std::size_t idx) const {
  GammaNKey k = key(idx);
  std::string s = "(";
  for (std::size_t p = 0; p < k.gammas.size(); ++p) {
    if (p) s += ',';
    s += 'g' + std::to_string(k.gammas[p]);
  }
  return s + ")" + k.perm.str();
}

GroupAlgebraElement idempotent_resolution(const MatrixUnits& mu, const GammaN& gn) {
  const FiniteGroup& G = mu.group();
  struct Pick {
    std::size_t irrep;
    int p;
  };
  std::vector<Pick> picks;
  for (std::size_t i = 0; i < G.num_irreps(); ++i) {
    for (int p = 0; p < G.delta(i); ++p) picks.push_back({i, p});
  }
  const int n = gn.n();
  const GroupAlgebraElement F = gn.tensor(std::vector<GroupAlgebraElement>(static_cast<std::size_t>(n), mu.f_sum()));
  GroupAlgebraElement total;
  std::vector<std::size_t> odo(static_cast<std::size_t>(n), 0);
  while (true) {
    std::vector<GroupAlgebraElement> left, right;
    for (auto c : odo) {
      left.push_back(mu.E(picks[c].irrep, picks[c].p, 0));
      right.push_back(mu.E(picks[c].irrep, 0, picks[c].p));
    }
    total += gn.multiply(gn.multiply(gn.tensor(left), F), gn.tensor(right));
    std::size_t k = 0;
    while (k < odo.size() && ++odo[k] == picks.size()) odo[k++] = 0;
    if (k == odo.size()) break;
  }
  return total;
}

namespace {

Scalar proportionality(const GroupAlgebraElement& x, const GroupAlgebraElement& target,
                       const char* what) {
  if (x.is_zero()) return Scalar(0);
  if (target.is_zero()) throw std::logic_error(std::string(what) + ": nonzero against zero target");
  const auto& [k, c] = *target.begin();
  Scalar ratio = x.coeff(k) / c;
  if (!(x == ratio * target)) throw std::logic_error(std::string(what) + ": not proportional");
  return ratio;
}

}  // namespace

Scalar slot_swap_projection(const MatrixUnits& mu, std::size_t a, std::size_t b) {
  GammaN gn(mu.group(), 2);
  auto fab = gn.tensor({mu.f(a), mu.f(b)});
  auto lhs = gn.multiply(gn.multiply(fab, gn.reflection_class_sum(0, 1)), fab);
  auto target = gn.multiply(GroupAlgebraElement(gn.perm(Perm::transposition(2, 0, 1))),
                            gn.tensor({mu.f(b), mu.f(a)}));
  return proportionality(lhs, target, "slot_swap_projection");
}

Scalar matrix_coefficient_sum(const MatrixUnits& mu, std::size_t i, std::size_t j,
                              std::size_t x, std::size_t y, const Vec2& u, const Vec2& v) {
  const FiniteGroup& G = mu.group();
  GammaN gn(G, 2);
  GroupAlgebraElement total;
  for (std::size_t g = 0; g < G.order(); ++g) {
    Scalar w = omega_L(act_on(G.element(g), u), v);
    if (w.is_zero()) continue;
    auto left = G.multiply(G.multiply(mu.f(j), GroupAlgebraElement(g)), mu.f(j));
    auto mid = GroupAlgebraElement(G.mul(G.mul(x, G.inv(g)), y));
    auto right = G.multiply(G.multiply(mu.f(i), mid), mu.f(i));
    total += w * gn.tensor({left, right});
  }
  return proportionality(total, gn.tensor({mu.f(j), mu.f(i)}), "matrix_coefficient_sum");
}

}  // namespace wpa
