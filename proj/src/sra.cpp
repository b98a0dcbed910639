#include "wpa/sra.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "wpa/linalg.hpp"

namespace wpa {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error(what);
}

std::size_t s_element(const GammaN& gn, int i, int j, std::size_t g) {
  const auto s = gn.perm(Perm::transposition(gn.n(), i, j));
  return gn.mul(s, gn.mul(gn.gamma_at(i, g), gn.gamma_at(j, gn.group().inv(g))));
}

VecV matrix_apply(const Matrix& m, const VecV& u) {
  VecV out(static_cast<std::size_t>(m.rows));
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) {
      if (!m(r, c).is_zero()) out[static_cast<std::size_t>(r)] += m(r, c) * u[static_cast<std::size_t>(c)];
    }
  }
  return out;
}

Matrix id_minus(const Matrix& m) {
  Matrix d = Matrix::identity(m.rows);
  for (std::size_t k = 0; k < d.a.size(); ++k) d.a[k] -= m.a[k];
  return d;
}

std::vector<std::vector<Scalar>> rows_of(const Matrix& m) {
  std::vector<std::vector<Scalar>> out(static_cast<std::size_t>(m.rows));
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) out[static_cast<std::size_t>(r)].push_back(m(r, c));
  }
  return out;
}

VecV basis_vector(int dim, int k) {
  VecV v(static_cast<std::size_t>(dim));
  v[static_cast<std::size_t>(k)] = 1;
  return v;
}

}  // namespace

SraParams make_params(const FiniteGroup& G, const Scalar& t, const Scalar& k,
                      const std::vector<Scalar>& cprime) {
  if (cprime.size() + 1 != G.order()) {
    throw std::invalid_argument("sra parameters: expected " + std::to_string(G.order() - 1) +
                                " values of c'");
  }
  SraParams p{t, k, std::vector<Scalar>(G.order())};
  for (std::size_t g = 1; g < G.order(); ++g) p.cprime[g] = cprime[g - 1];
  for (std::size_t g = 1; g < G.order(); ++g) {
    for (std::size_t h = 0; h < G.order(); ++h) {
      if (p.cprime[G.mul(G.mul(h, g), G.inv(h))] != p.cprime[g]) {
        throw std::invalid_argument("sra parameters: c' is not constant on conjugacy classes");
      }
    }
  }
  return p;
}

Matrix action_matrix(const GammaN& gn, std::size_t element) {
  const int n = gn.n();
  const GammaNKey key = gn.key(element);
  Matrix out(2 * n, 2 * n);
  for (int p = 0; p < n; ++p) {
    const int q = key.perm(p);
    const Matrix& g = gn.group().element(key.gammas[static_cast<std::size_t>(q)]);
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) out(2 * q + r, 2 * p + c) = g(r, c);
    }
  }
  return out;
}

std::vector<SymplecticReflection> enumerate_reflections(const GammaN& gn) {
  const FiniteGroup& G = gn.group();
  const int n = gn.n();
  std::map<std::size_t, SymplecticReflection> family;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (std::size_t g = 0; g < G.order(); ++g) {
        SymplecticReflection s{ReflectionKind::S, i, j, g, s_element(gn, i, j, g), {}};
        require(family.emplace(s.element, s).second, "reflections: repeated type S element");
      }
    }
    for (std::size_t g = 1; g < G.order(); ++g) {
      SymplecticReflection s{ReflectionKind::Gamma, i, -1, g, gn.gamma_at(i, g), {}};
      require(family.emplace(s.element, s).second, "reflections: repeated type Gamma element");
    }
  }

  std::vector<SymplecticReflection> out;
  for (std::size_t e = 0; e < gn.order(); ++e) {
    Matrix m = action_matrix(gn, e);
    const bool reflection = rank(ExactMatrix::from_dense(rows_of(id_minus(m)), static_cast<std::size_t>(2 * n))) == 2;
    auto it = family.find(e);
    require(reflection == (it != family.end()), "reflections: rank scan disagrees with the two families at " + gn.str(e));
    if (!reflection) continue;
    it->second.matrix = std::move(m);
    out.push_back(it->second);
  }

  // Conjugacy: type S is one class; type Gamma splits by Γ-classes.
  auto cls_of = [&](std::size_t e) {
    std::set<std::size_t> c;
    for (std::size_t h = 0; h < gn.order(); ++h) c.insert(gn.mul(gn.mul(h, e), gn.inv(h)));
    return c;
  };
  for (const auto& s : out) {
    std::set<std::size_t> expect;
    if (s.kind == ReflectionKind::S) {
      for (const auto& r : out) {
        if (r.kind == ReflectionKind::S) expect.insert(r.element);
      }
    } else {
      for (std::size_t h = 0; h < G.order(); ++h) {
        const std::size_t g = G.mul(G.mul(h, s.gamma), G.inv(h));
        for (int i = 0; i < n; ++i) expect.insert(gn.gamma_at(i, g));
      }
    }
    require(cls_of(s.element) == expect, "reflections: conjugacy classes differ from the two families");
  }

  // ker(Id - s) is exactly the radical of omega_s: it lies in the radical and
  // the Gram matrix has rank 2.
  for (const auto& s : out) {
    std::vector<std::vector<Scalar>> gram;
    for (int a = 0; a < 2 * n; ++a) {
      gram.emplace_back();
      for (int b = 0; b < 2 * n; ++b) gram.back().push_back(omega_s(s, basis_vector(2 * n, a), basis_vector(2 * n, b)));
    }
    require(rank(ExactMatrix::from_dense(gram, static_cast<std::size_t>(2 * n))) == 2, "reflections: omega_s rank");
    for (const auto& k : kernel_basis(ExactMatrix::from_dense(rows_of(id_minus(s.matrix)), static_cast<std::size_t>(2 * n)))) {
      const VecV kv = to_dense(k, static_cast<std::size_t>(2 * n));
      for (int b = 0; b < 2 * n; ++b) require(omega_s(s, kv, basis_vector(2 * n, b)).is_zero(), "reflections: radical check");
    }
  }
  return out;
}

Scalar omega_V(const VecV& u, const VecV& v) {
  Scalar s;
  for (std::size_t i = 0; i + 1 < u.size(); i += 2) s += u[i] * v[i + 1] - u[i + 1] * v[i];
  return s;
}

Scalar omega_s(const SymplecticReflection& s, const VecV& u, const VecV& v) {
  const std::size_t dim = static_cast<std::size_t>(s.matrix.rows);
  Matrix d = id_minus(s.matrix);
  std::vector<SparseVec> image;
  Echelon ech;
  for (int c = 0; c < d.cols; ++c) {
    VecV col(dim);
    for (int r = 0; r < d.rows; ++r) col[static_cast<std::size_t>(r)] = d(r, c);
    SparseVec sv = to_sparse(col);
    if (ech.insert(sv)) image.push_back(sv);
  }
  require(image.size() == 2, "omega_s: not a symplectic reflection");
  auto kernel = kernel_basis(ExactMatrix::from_dense(rows_of(d), dim));
  require(image.size() + kernel.size() == dim, "omega_s: image and kernel do not span");
  std::vector<SparseVec> columns = image;
  columns.insert(columns.end(), kernel.begin(), kernel.end());
  const ExactMatrix B = ExactMatrix::from_columns(columns, dim);
  require(!omega_V(to_dense(image[0], dim), to_dense(image[1], dim)).is_zero(),
          "omega_s: omega degenerate on the image");

  auto project = [&](const VecV& w) {
    SparseVec coords;
    require(solve(B, to_sparse(w), coords), "omega_s: decomposition failed");
    VecV out(dim);
    for (const auto& [k, c] : coords) {
      if (k >= image.size()) continue;
      for (const auto& [r, x] : image[k]) out[r] += c * x;
    }
    return out;
  };
  return omega_V(project(u), project(v));
}

Scalar omega_s_closed(const SymplecticReflection& s, const VecV& u, const VecV& v) {
  if (s.kind == ReflectionKind::S) {
    return (omega_V(u, v) - omega_V(u, matrix_apply(s.matrix, v))) * Scalar::rational(1, 2);
  }
  const auto i = static_cast<std::size_t>(2 * s.i);
  return u[i] * v[i + 1] - u[i + 1] * v[i];
}

SraAlgebra::SraAlgebra(const GammaN& gn, SraParams params)
    : gn_(&gn), params_(std::move(params)), refl_(enumerate_reflections(gn)) {
  require(params_.cprime.size() == gn.group().order(), "SraAlgebra: c' has wrong length");
  actions_.reserve(gn.order());
  for (std::size_t e = 0; e < gn.order(); ++e) actions_.push_back(action_matrix(gn, e));
  const int L = num_letters();
  kappa_.resize(static_cast<std::size_t>(L * L));
  for (int a = 0; a < L; ++a) {
    for (int b = 0; b < L; ++b) {
      kappa_[static_cast<std::size_t>(a * L + b)] = kappa(basis_vector(L, a), basis_vector(L, b));
    }
  }
}

GroupAlgebraElement SraAlgebra::kappa(const VecV& u, const VecV& v) const {
  GroupAlgebraElement out;
  out.add(gn_->identity(), params_.t * omega_V(u, v));
  for (const auto& s : refl_) {
    const Scalar& c = s.kind == ReflectionKind::S ? params_.k : params_.cprime[s.gamma];
    if (c.is_zero()) continue;
    out.add(s.element, c * omega_s(s, u, v));
  }
  return out;
}

const GroupAlgebraElement& SraAlgebra::kappa_letters(int a, int b) const {
  return kappa_.at(static_cast<std::size_t>(a * num_letters() + b));
}

std::vector<SraRelation> SraAlgebra::relations() const {
  const FiniteGroup& G = gn_->group();
  const int n = gn_->n();
  const Scalar half_k = params_.k * Scalar::rational(1, 2);
  std::vector<SraRelation> out;
  for (int i = 0; i < n; ++i) {
    SraRelation r{x_letter(i), y_letter(i), {}};
    r.rhs.add(gn_->identity(), params_.t);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t g = 0; g < G.order(); ++g) r.rhs.add(s_element(*gn_, i, j, g), half_k);
    }
    for (std::size_t g = 1; g < G.order(); ++g) r.rhs.add(gn_->gamma_at(i, g), params_.cprime[g]);
    out.push_back(std::move(r));
  }
  const std::vector<Vec2> basis = {{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int cu = 0; cu < 2; ++cu) {
        for (int cv = 0; cv < 2; ++cv) {
          SraRelation r{2 * i + cu, 2 * j + cv, {}};
          for (std::size_t g = 0; g < G.order(); ++g) {
            const Scalar w = omega_L(act_on(G.element(g), basis[static_cast<std::size_t>(cu)]),
                                     basis[static_cast<std::size_t>(cv)]);
            r.rhs.add(s_element(*gn_, i, j, g), -half_k * w);
          }
          out.push_back(std::move(r));
        }
      }
    }
  }
  for (const auto& r : out) {
    require(r.rhs == kappa_letters(r.u, r.v), "relations: explicit form disagrees with kappa");
  }
  return out;
}

SraElement SraAlgebra::letter(int a) const { return word({a}); }

SraElement SraAlgebra::group_element(std::size_t g) const { return word({}, g); }

SraElement SraAlgebra::from_group_algebra(const GroupAlgebraElement& x) const {
  SraElement out;
  for (const auto& [g, c] : x) out.add(SraMonomial{{}, g}, c);
  return out;
}

SraElement SraAlgebra::word(const std::vector<int>& letters, std::size_t g) const {
  for (int a : letters) {
    if (a < 0 || a >= num_letters()) throw std::out_of_range("sra: letter out of range");
  }
  return SraElement(SraMonomial{letters, g});
}

LinComb<std::vector<int>> SraAlgebra::act(std::size_t g, const std::vector<int>& w) const {
  LinComb<std::vector<int>> out(std::vector<int>{});
  const Matrix& m = actions_.at(g);
  for (int a : w) {
    LinComb<std::vector<int>> next;
    for (const auto& [prefix, c] : out) {
      for (int r = 0; r < m.rows; ++r) {
        const Scalar& x = m(r, a);
        if (x.is_zero()) continue;
        auto longer = prefix;
        longer.push_back(r);
        next.add(longer, c * x);
      }
    }
    out = std::move(next);
  }
  return out;
}

SraElement SraAlgebra::multiply(const SraElement& x, const SraElement& y) const {
  SraElement out;
  for (const auto& [m1, c1] : x) {
    for (const auto& [m2, c2] : y) {
      const std::size_t g = gn_->mul(m1.group, m2.group);
      for (const auto& [w, d] : act(m1.group, m2.word)) {
        auto full = m1.word;
        full.insert(full.end(), w.begin(), w.end());
        out.add(SraMonomial{std::move(full), g}, c1 * c2 * d);
      }
    }
  }
  return out;
}

const SraElement& SraAlgebra::nf_word(const std::vector<int>& w) const {
  if (auto it = cache_.find(w); it != cache_.end()) return it->second;
  SraElement out;
  std::size_t p = 0;
  while (p + 1 < w.size() && w[p] <= w[p + 1]) ++p;
  if (p + 1 >= w.size()) {
    out.add(SraMonomial{w, gn_->identity()}, Scalar(1));
  } else {
    // uv = vu + kappa(u, v); the group part moves right through the tail.
    auto swapped = w;
    std::swap(swapped[p], swapped[p + 1]);
    out += nf_word(swapped);
    const std::vector<int> prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p));
    const std::vector<int> tail(w.begin() + static_cast<std::ptrdiff_t>(p + 2), w.end());
    for (const auto& [h, c] : kappa_letters(w[p], w[p + 1])) {
      for (const auto& [moved, d] : act(h, tail)) {
        auto shorter = prefix;
        shorter.insert(shorter.end(), moved.begin(), moved.end());
        for (const auto& [m, e] : nf_word(shorter)) {
          out.add(SraMonomial{m.word, gn_->mul(m.group, h)}, c * d * e);
        }
      }
    }
  }
  return cache_.emplace(w, std::move(out)).first->second;
}

SraElement SraAlgebra::normal_form(const SraElement& x) const {
  SraElement out;
  for (const auto& [m, c] : x) {
    for (const auto& [r, d] : nf_word(m.word)) {
      out.add(SraMonomial{r.word, gn_->mul(r.group, m.group)}, c * d);
    }
  }
  return out;
}

SraElement SraAlgebra::parse_word(std::string_view text) const {
  const int n = gn_->n();
  SraElement out = group_element(gn_->identity());
  std::istringstream in{std::string(text)};
  std::string tok;
  auto site = [&](const std::string& digits) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(digits, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("sra word: bad site in " + tok);
    }
    if (used != digits.size() || v < 1 || v > n) throw std::invalid_argument("sra word: bad site in " + tok);
    return v - 1;
  };
  while (in >> tok) {
    if (tok == "*") continue;
    SraElement factor;
    if (tok[0] == 'x' || tok[0] == 'y') {
      const int s = site(tok.substr(1));
      factor = letter(tok[0] == 'x' ? x_letter(s) : y_letter(s));
    } else if (tok[0] == 's' && tok.size() == 3) {
      const int i = site(tok.substr(1, 1));
      const int j = site(tok.substr(2, 1));
      if (i == j) throw std::invalid_argument("sra word: bad transposition " + tok);
      factor = group_element(gn_->perm(Perm::transposition(n, i, j)));
    } else if (tok[0] == 'g' && tok.find('@') != std::string::npos) {
      const auto at = tok.find('@');
      std::size_t used = 0;
      std::size_t g = 0;
      try {
        g = std::stoul(tok.substr(1, at - 1), &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("sra word: bad group element " + tok);
      }
      if (used != at - 1 || g >= gn_->group().order()) throw std::invalid_argument("sra word: bad group element " + tok);
      factor = group_element(gn_->gamma_at(site(tok.substr(at + 1)), g));
    } else {
      factor = Scalar::parse(tok) * group_element(gn_->identity());
    }
    out = multiply(out, factor);
  }
  return out;
}

std::string SraAlgebra::str(const SraElement& x) const {
  if (x.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : x) {
    if (!first) s += " + ";
    first = false;
    s += "(" + c.str() + ")";
    for (int a : m.word) s += std::string(" ") + (a % 2 == 0 ? 'x' : 'y') + std::to_string(a / 2 + 1);
    if (m.group != gn_->identity()) s += " " + gn_->str(m.group);
  }
  return s;
}

namespace {

void all_words(int letters, int len, std::vector<std::vector<int>>& out) {
  std::vector<int> w(static_cast<std::size_t>(len), 0);
  while (true) {
    out.push_back(w);
    int k = 0;
    while (k < len && ++w[static_cast<std::size_t>(k)] == letters) w[static_cast<std::size_t>(k++)] = 0;
    if (k == len) break;
  }
}

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

class MonomialCoords {
 public:
  SparseVec operator()(const SraElement& x) {
    SparseVec v;
    for (const auto& [m, c] : x) {
      auto [it, inserted] = ids_.try_emplace(m, ids_.size());
      v.emplace_back(it->second, c);
    }
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  }

 private:
  std::map<SraMonomial, std::size_t> ids_;
};

}  // namespace

SraPbwReport sra_pbw_check(const SraAlgebra& H, int d) {
  const GammaN& gn = H.gamma_n();
  const int L = H.num_letters();
  SraPbwReport rep;
  rep.degree = d;
  std::vector<std::vector<std::vector<int>>> words(static_cast<std::size_t>(d + 1));
  for (int k = 0; k <= d; ++k) {
    all_words(L, k, words[static_cast<std::size_t>(k)]);
    rep.free_dim += words[static_cast<std::size_t>(k)].size() * gn.order();
  }
  rep.expected = binomial(static_cast<std::size_t>(d + L), static_cast<std::size_t>(L)) * gn.order();

  std::vector<SraElement> rels;
  for (int a = 0; a < L; ++a) {
    for (int b = a + 1; b < L; ++b) {
      SraElement r = H.word({a, b}) - H.word({b, a}) - H.from_group_algebra(H.kappa_letters(a, b));
      rels.push_back(std::move(r));
    }
  }

  MonomialCoords free_coords;
  Echelon ideal;
  rep.ideal_killed = true;
  for (int p = 0; p + 2 <= d; ++p) {
    for (int q = 0; p + q + 2 <= d; ++q) {
      for (const auto& alpha : words[static_cast<std::size_t>(p)]) {
        for (std::size_t g = 0; g < gn.order(); ++g) {
          const SraElement left = H.word(alpha, g);
          for (const auto& r : rels) {
            const SraElement lr = H.multiply(left, r);
            for (const auto& beta : words[static_cast<std::size_t>(q)]) {
              for (std::size_t h = 0; h < gn.order(); ++h) {
                const SraElement gen = H.multiply(lr, H.word(beta, h));
                ideal.insert(free_coords(gen));
                if (rep.ideal_killed && !H.normal_form(gen).is_zero()) rep.ideal_killed = false;
              }
            }
          }
        }
      }
    }
  }
  rep.ideal_rank = ideal.rank();
  rep.quotient_dim = rep.free_dim - rep.ideal_rank;

  MonomialCoords nf_coords;
  Echelon nf_span;
  for (int k = 0; k <= d; ++k) {
    for (const auto& w : words[static_cast<std::size_t>(k)]) {
      for (std::size_t g = 0; g < gn.order(); ++g) nf_span.insert(nf_coords(H.normal_form(H.word(w, g))));
    }
  }
  rep.normal_form_rank = nf_span.rank();
  rep.pass = rep.ideal_killed && rep.quotient_dim == rep.expected && rep.normal_form_rank == rep.expected;
  return rep;
}

}  // namespace wpa
