#include "wpa/morita.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "wpa/linalg.hpp"

namespace wpa {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error(what);
}

Matrix scaled(const Matrix& m, const Scalar& c) {
  Matrix out = m;
  for (auto& x : out.a) x *= c;
  return out;
}

Matrix sum(const Matrix& a, const Matrix& b) {
  require(a.rows == b.rows && a.cols == b.cols, "matrix sum: shape mismatch");
  Matrix out = a;
  for (std::size_t k = 0; k < out.a.size(); ++k) out.a[k] += b.a[k];
  return out;
}

bool is_zero(const Matrix& m) {
  return std::all_of(m.a.begin(), m.a.end(), [](const Scalar& x) { return x.is_zero(); });
}

// (ω_L ⊗ Id) : L ⊗ L ⊗ N -> N, as a δ x 4δ matrix.
Matrix omega_contract(int delta) {
  Matrix w(delta, 4 * delta);
  for (int q = 0; q < delta; ++q) {
    w(q, (0 * 2 + 1) * delta + q) = 1;
    w(q, (1 * 2 + 0) * delta + q) = -1;
  }
  return w;
}

// ζ ⊗ Id : N -> L ⊗ L ⊗ N with ζ(1) = y ⊗ x - x ⊗ y.
Matrix zeta_map(int delta) {
  Matrix z(4 * delta, delta);
  for (int q = 0; q < delta; ++q) {
    z((1 * 2 + 0) * delta + q, q) = 1;
    z((0 * 2 + 1) * delta + q, q) = -1;
  }
  return z;
}

// (Id_L ⊗ second) first
Matrix then_on_right_factor(const Matrix& first, const Matrix& second) {
  return kron(Matrix::identity(2), second) * first;
}

SparseVec flatten(const Matrix& m) { return to_sparse(m.a); }

Matrix rho_L_tensor(const FiniteGroup& G, std::size_t g, std::size_t irrep) {
  return kron(G.element(g), G.irreps()[irrep].images[g]);
}

struct EdgeEnds {
  std::size_t tail, head;
};

EdgeEnds ends(const Quiver& q, int a) {
  return {static_cast<std::size_t>(q.edge(a).tail), static_cast<std::size_t>(q.edge(a).head)};
}

// Stacks the entries of every condition: pairings per edge, mesh per vertex.
std::vector<Matrix> condition_lhs(const FiniteGroup& G, const Quiver& q, const std::vector<Matrix>& theta,
                                  const std::vector<Matrix>& phi) {
  std::vector<Matrix> out;
  for (int a = 0; a < q.num_edges(); ++a) {
    auto [t, h] = ends(q, a);
    out.push_back(omega_contract(G.delta(t)) * then_on_right_factor(theta[static_cast<std::size_t>(a)], phi[static_cast<std::size_t>(a)]));
    out.push_back(omega_contract(G.delta(h)) * then_on_right_factor(phi[static_cast<std::size_t>(a)], theta[static_cast<std::size_t>(a)]));
  }
  for (int i = 0; i < q.num_vertices(); ++i) {
    const int d = G.delta(static_cast<std::size_t>(i));
    Matrix mesh(4 * d, d);
    for (int a = 0; a < q.num_edges(); ++a) {
      auto [t, h] = ends(q, a);
      const auto ua = static_cast<std::size_t>(a);
      if (static_cast<int>(h) == i) mesh = sum(mesh, then_on_right_factor(phi[ua], theta[ua]));
      if (static_cast<int>(t) == i) mesh = sum(mesh, scaled(then_on_right_factor(theta[ua], phi[ua]), Scalar(-1)));
    }
    out.push_back(mesh);
  }
  return out;
}

std::vector<Matrix> condition_rhs(const FiniteGroup& G, const Quiver& q) {
  std::vector<Matrix> out;
  for (int a = 0; a < q.num_edges(); ++a) {
    auto [t, h] = ends(q, a);
    out.push_back(scaled(Matrix::identity(G.delta(t)), Scalar(-G.delta(h))));
    out.push_back(scaled(Matrix::identity(G.delta(h)), Scalar(G.delta(t))));
  }
  for (int i = 0; i < q.num_vertices(); ++i) {
    const int d = G.delta(static_cast<std::size_t>(i));
    out.push_back(scaled(zeta_map(d), Scalar(-d)));
  }
  return out;
}

std::vector<Scalar> concat(const std::vector<Matrix>& ms) {
  std::vector<Scalar> out;
  for (const auto& m : ms) out.insert(out.end(), m.a.begin(), m.a.end());
  return out;
}

}  // namespace

Matrix kron(const Matrix& A, const Matrix& B) {
  Matrix out(A.rows * B.rows, A.cols * B.cols);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) {
      if (A(i, j).is_zero()) continue;
      for (int k = 0; k < B.rows; ++k) {
        for (int l = 0; l < B.cols; ++l) out(i * B.rows + k, j * B.cols + l) = A(i, j) * B(k, l);
      }
    }
  }
  return out;
}

std::vector<Matrix> hom_basis(const FiniteGroup& G, std::size_t src, std::size_t dst) {
  const int ds = G.delta(src), dd = G.delta(dst);
  const int rows = 2 * dd, cols = ds;
  const std::size_t unknowns = static_cast<std::size_t>(rows * cols);
  ExactMatrix sys(0, unknowns);
  for (std::size_t g = 0; g < G.order(); ++g) {
    const Matrix K = rho_L_tensor(G, g, dst);
    const Matrix& R = G.irreps()[src].images[g];
    // (K X - X R)_{r,c} = 0
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        std::vector<Scalar> row(unknowns);
        for (int k = 0; k < rows; ++k) row[static_cast<std::size_t>(k * cols + c)] += K(r, k);
        for (int k = 0; k < cols; ++k) row[static_cast<std::size_t>(r * cols + k)] -= R(k, c);
        sys.data.push_back(to_sparse(row));
        ++sys.rows;
      }
    }
  }
  std::vector<Matrix> out;
  for (const auto& v : kernel_basis(sys)) out.emplace_back(rows, cols, to_dense(v, unknowns));
  return out;
}

ThetaPhi solve_theta_phi(const FiniteGroup& G, const McKayData& mk) {
  const Quiver& q = mk.quiver;
  const auto E = static_cast<std::size_t>(q.num_edges());
  ThetaPhi tp;
  tp.theta.resize(E);
  tp.phi.resize(E);

  std::map<std::pair<std::size_t, std::size_t>, int> used;
  std::vector<std::vector<Matrix>> phi_basis(E);
  std::size_t unknowns = 0;
  for (std::size_t a = 0; a < E; ++a) {
    auto [t, h] = ends(q, static_cast<int>(a));
    auto tb = hom_basis(G, t, h);
    int& k = used[{t, h}];
    require(k < static_cast<int>(tb.size()), "theta/phi: Hom-space smaller than the number of edges");
    tp.theta[a] = tb[static_cast<std::size_t>(k++)];
    phi_basis[a] = hom_basis(G, h, t);
    unknowns += phi_basis[a].size();
    tp.phi[a] = Matrix(2 * G.delta(t), G.delta(h));
  }

  // Every condition is linear in the φ's once the θ's are fixed.
  const std::vector<Scalar> rhs = concat(condition_rhs(G, q));
  std::vector<SparseVec> columns;
  for (std::size_t a = 0; a < E; ++a) {
    for (const auto& B : phi_basis[a]) {
      std::vector<Matrix> phi = tp.phi;
      phi[a] = B;
      columns.push_back(to_sparse(concat(condition_lhs(G, q, tp.theta, phi))));
    }
  }
  SparseVec z;
  require(solve(ExactMatrix::from_columns(columns, rhs.size()), to_sparse(rhs), z),
          "theta/phi: pairing and mesh conditions are inconsistent");
  const std::vector<Scalar> zd = to_dense(z, unknowns);
  std::size_t var = 0;
  for (std::size_t a = 0; a < E; ++a) {
    for (const auto& B : phi_basis[a]) tp.phi[a] = sum(tp.phi[a], scaled(B, zd[var++]));
  }
  const auto checks = check_theta_phi(G, mk, tp);
  require(checks.all(), "theta/phi: verification failed");
  return tp;
}

ThetaPhiChecks check_theta_phi(const FiniteGroup& G, const McKayData& mk, const ThetaPhi& tp) {
  const Quiver& q = mk.quiver;
  ThetaPhiChecks c;
  c.equivariant = true;
  for (int a = 0; a < q.num_edges(); ++a) {
    auto [t, h] = ends(q, a);
    const auto ua = static_cast<std::size_t>(a);
    for (std::size_t g = 0; g < G.order(); ++g) {
      const bool th = rho_L_tensor(G, g, h) * tp.theta[ua] == tp.theta[ua] * G.irreps()[t].images[g];
      const bool ph = rho_L_tensor(G, g, t) * tp.phi[ua] == tp.phi[ua] * G.irreps()[h].images[g];
      c.equivariant = c.equivariant && th && ph;
    }
  }
  const auto lhs = condition_lhs(G, q, tp.theta, tp.phi);
  const auto rhs = condition_rhs(G, q);
  c.pairing_theta = c.pairing_phi = true;
  const auto E = static_cast<std::size_t>(q.num_edges());
  for (std::size_t a = 0; a < E; ++a) {
    c.pairing_theta = c.pairing_theta && lhs[2 * a] == rhs[2 * a];
    c.pairing_phi = c.pairing_phi && lhs[2 * a + 1] == rhs[2 * a + 1];
  }
  c.mesh = true;
  for (std::size_t i = 2 * E; i < lhs.size(); ++i) c.mesh = c.mesh && lhs[i] == rhs[i];

  // In Hom(N_i, L ⊗ N_j): θ_a for a : i -> j and φ_a for a : j -> i.
  c.spans_hom = true;
  for (int i = 0; i < q.num_vertices(); ++i) {
    for (int j = 0; j < q.num_vertices(); ++j) {
      std::vector<SparseVec> vs;
      for (int a = 0; a < q.num_edges(); ++a) {
        auto [t, h] = ends(q, a);
        if (static_cast<int>(t) == i && static_cast<int>(h) == j) vs.push_back(flatten(tp.theta[static_cast<std::size_t>(a)]));
        if (static_cast<int>(h) == i && static_cast<int>(t) == j) vs.push_back(flatten(tp.phi[static_cast<std::size_t>(a)]));
      }
      const auto dim = hom_basis(G, static_cast<std::size_t>(i), static_cast<std::size_t>(j)).size();
      c.spans_hom = c.spans_hom && vs.size() == dim && span_rank(vs) == dim;
    }
  }
  return c;
}

std::pair<std::vector<Scalar>, Scalar> parameter_map(const FiniteGroup& G, const SraParams& p) {
  std::vector<Scalar> lambda;
  for (std::size_t i = 0; i < G.num_irreps(); ++i) {
    Scalar l = p.t * Scalar(G.delta(i));
    for (std::size_t g = 1; g < G.order(); ++g) l += p.cprime[g] * G.irreps()[i].character[g];
    lambda.push_back(l);
  }
  return {lambda, p.k * Scalar(static_cast<long>(G.order())) * Scalar::rational(1, 2)};
}

MoritaEmbedding::MoritaEmbedding(const WreathAlgebra& A, const SraAlgebra& H, const MatrixUnits& mu,
                                 const ThetaPhi& tp)
    : A_(&A), H_(&H), mu_(&mu), tp_(&tp) {
  require(A.n() == H.n(), "embedding: n differs");
  require(A.quiver().num_vertices() == static_cast<int>(mu.group().num_irreps()), "embedding: vertex count");
}

GroupAlgebraElement MoritaEmbedding::idempotent(const Labels& labels) const {
  std::vector<GroupAlgebraElement> fs;
  for (int v : labels) fs.push_back(mu_->f(static_cast<std::size_t>(v)));
  return H_->gamma_n().tensor(fs);
}

GroupAlgebraElement MoritaEmbedding::unit_idempotent() const {
  return H_->gamma_n().tensor(std::vector<GroupAlgebraElement>(static_cast<std::size_t>(A_->n()), mu_->f_sum()));
}

SraElement MoritaEmbedding::anchor(const Labels& labels, const Perm& p) const {
  const GammaN& gn = H_->gamma_n();
  return H_->from_group_algebra(gn.multiply(idempotent(labels), GroupAlgebraElement(gn.perm(p))));
}

SraElement MoritaEmbedding::letter(int slot, int edge, const Labels& tail) const {
  const DoubledQuiver& dq = A_->quiver();
  const auto us = static_cast<std::size_t>(slot);
  require(tail.at(us) == dq.tail(edge), "embedding: letter does not start at the given labels");
  const int base = dq.base().num_edges();
  const auto a = static_cast<std::size_t>(edge % base);
  // X ∈ Hom(N_head, L ⊗ N_tail)
  const Matrix& X = dq.is_original(edge) ? tp_->phi[a] : tp_->theta[a];
  const auto te = static_cast<std::size_t>(dq.tail(edge));
  const int d = mu_->group().delta(te);
  const GammaN& gn = H_->gamma_n();
  SraElement out;
  for (int c = 0; c < 2; ++c) {
    for (int q = 0; q < d; ++q) {
      const Scalar& coeff = X(c * d + q, 0);
      if (coeff.is_zero()) continue;
      std::vector<GroupAlgebraElement> fs;
      for (int k = 0; k < A_->n(); ++k) {
        fs.push_back(k == slot ? mu_->E(te, q, 0) : mu_->f(static_cast<std::size_t>(tail[static_cast<std::size_t>(k)])));
      }
      for (const auto& [g, e] : gn.tensor(fs)) out.add(SraMonomial{{2 * slot + c}, g}, coeff * e);
    }
  }
  return out;
}

SraElement MoritaEmbedding::image(const WreathMonomial& m) const {
  std::vector<SraElement> factors(m.letters.size());
  Labels cur = m.tail;
  for (std::size_t k = m.letters.size(); k-- > 0;) {
    const Letter& l = m.letters[k];
    factors[k] = letter(l.slot, l.edge, cur);
    cur[static_cast<std::size_t>(l.slot)] = A_->quiver().head(l.edge);
  }
  SraElement out = anchor(m.tail, m.perm);
  for (std::size_t k = factors.size(); k-- > 0;) out = H_->nf_product(factors[k], out);
  return H_->normal_form(out);
}

SraElement MoritaEmbedding::image(const WreathElement& x) const {
  SraElement out;
  for (const auto& [m, c] : x) out += c * image(m);
  return out;
}

SraElement MoritaEmbedding::corner(const SraElement& x) const {
  const SraElement F = H_->from_group_algebra(unit_idempotent());
  return H_->nf_product(H_->multiply(F, x), F);
}

CornerIdentification corner_identify(const WreathAlgebra& A, const MoritaEmbedding& emb,
                                     const SraAlgebra& H, const MatrixUnits& mu) {
  const GammaN& gn = H.gamma_n();
  const FiniteGroup& G = mu.group();
  CornerIdentification c;
  std::map<SraMonomial, std::size_t> ids;
  auto coords = [&](const SraElement& x) {
    SparseVec v;
    for (const auto& [m, s] : x) v.emplace_back(ids.try_emplace(m, ids.size()).first->second, s);
    std::sort(v.begin(), v.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    return v;
  };
  // Elements of Γ^n are the indices below |Γ|^n (identity permutation).
  std::size_t power = 1;
  for (int k = 0; k < gn.n(); ++k) power *= G.order();
  Echelon deg0, deg1;
  for (std::size_t g = 0; g < power; ++g) {
    deg0.insert(coords(emb.corner(H.group_element(g))));
    for (int a = 0; a < H.num_letters(); ++a) deg1.insert(coords(emb.corner(H.word({a}, g))));
  }
  c.group_algebra_dim = deg0.rank();
  c.degree_one_dim = deg1.rank();
  c.expected_group_algebra_dim = A.product().num_vertices();
  c.expected_degree_one_dim = A.product().num_edges();

  Echelon letters;
  std::vector<SparseVec> anchors;
  for (const auto& pe : A.product().edges()) letters.insert(coords(emb.letter(pe.slot, pe.edge, pe.tail)));
  c.letter_image_rank = letters.rank();
  bool anchors_ok = true;
  Echelon anchor_span;
  for (std::size_t v = 0; v < A.product().num_vertices(); ++v) {
    anchors_ok = anchor_span.insert(coords(H.from_group_algebra(emb.idempotent(A.product().vertex_labels(v))))) && anchors_ok;
  }
  c.ok = anchors_ok && c.group_algebra_dim == c.expected_group_algebra_dim &&
         c.degree_one_dim == c.expected_degree_one_dim && c.letter_image_rank == c.expected_degree_one_dim;
  return c;
}

namespace {

bool check_relations(const MoritaEmbedding& emb, const RelationSet& rels, std::size_t begin, std::size_t end,
                     std::vector<std::string>& failing, const DoubledQuiver& dq) {
  bool ok = true;
  for (std::size_t r = begin; r < end; ++r) {
    if (!emb.image(rels[r].element()).is_zero()) {
      ok = false;
      failing.push_back(to_string(dq, rels[r].element()));
    }
  }
  return ok;
}

void sorted_words(int letters, int len, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == len) {
    out.push_back(cur);
    return;
  }
  for (int a = start; a < letters; ++a) {
    cur.push_back(a);
    sorted_words(letters, len, a, cur, out);
    cur.pop_back();
  }
}

}  // namespace

MoritaReport verify_morita(const FiniteGroup& G, int n, const SraParams& params, int degree,
                           std::uint64_t seed, unsigned threads) {
  MoritaReport rep;
  rep.group = G.name();
  rep.n = n;
  rep.degree = degree;
  rep.t = params.t;
  rep.k = params.k;
  rep.cprime.assign(params.cprime.begin() + 1, params.cprime.end());

  const McKayData mk = mckay_quiver(G);
  rep.delta = mk.delta;
  const ThetaPhi tp = solve_theta_phi(G, mk);
  rep.theta_phi = check_theta_phi(G, mk, tp);
  const MatrixUnits mu(G);
  const GammaN gn(G, n);
  const SraAlgebra H(gn, params);
  H.relations();
  const WreathAlgebra A(DoubledQuiver(mk.quiver), n);
  const MoritaEmbedding emb(A, H, mu, tp);
  std::tie(rep.lambda, rep.nu) = parameter_map(G, params);

  rep.corner = corner_identify(A, emb, H, mu);

  // (1) relation images
  const RelationSet rels = A.relations(rep.lambda, rep.nu);
  rep.relations_checked = rels.size();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(rels.size())));
  std::vector<std::vector<std::string>> fails(threads);
  std::vector<char> oks(threads, 0);
  {
    std::vector<SraAlgebra> copies(threads, H);
    std::vector<MoritaEmbedding> embs(threads, emb);
    std::vector<std::thread> pool;
    const std::size_t chunk = (rels.size() + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      embs[w].rebind(copies[w]);
      const std::size_t b = std::min(rels.size(), w * chunk), e = std::min(rels.size(), b + chunk);
      pool.emplace_back([&, w, b, e] { oks[w] = check_relations(embs[w], rels, b, e, fails[w], A.quiver()); });
    }
    for (auto& th : pool) th.join();
  }
  rep.residual_zero = std::all_of(oks.begin(), oks.end(), [](char c) { return c != 0; });
  for (const auto& f : fails) rep.failing.insert(rep.failing.end(), f.begin(), f.end());

  // (2) corner dimensions against the undeformed wreath algebra
  const auto graded = A.graded_dimension(A.relations(std::vector<Scalar>(mk.delta.size()), Scalar(0)), degree);
  std::map<SraMonomial, std::size_t> ids;
  Echelon span;
  std::size_t expected = 0;
  for (int d = 0; d <= degree; ++d) {
    std::vector<std::vector<int>> words;
    std::vector<int> cur;
    sorted_words(H.num_letters(), d, 0, cur, words);
    for (const auto& w : words) {
      for (std::size_t g = 0; g < gn.order(); ++g) {
        SparseVec v;
        for (const auto& [m, s] : emb.corner(H.word(w, g))) v.emplace_back(ids.try_emplace(m, ids.size()).first->second, s);
        std::sort(v.begin(), v.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
        span.insert(v);
      }
    }
    expected += graded[static_cast<std::size_t>(d)];
    rep.corner_dims.push_back(span.rank());
    rep.expected_dims.push_back(expected);
  }
  rep.dims_match = rep.corner_dims == rep.expected_dims;

  // (3) multiplicativity on seeded random monomials
  std::mt19937_64 rng(seed);
  std::vector<std::vector<WreathMonomial>> paths;
  for (int k = 0; k <= 2; ++k) paths.push_back(A.paths_of_length(k));
  std::uniform_int_distribution<int> len(0, 1);
  std::uniform_int_distribution<std::size_t> perm(0, A.perms().size() - 1);
  auto sample = [&] {
    const auto& P = paths[static_cast<std::size_t>(len(rng))];
    WreathMonomial m = P[std::uniform_int_distribution<std::size_t>(0, P.size() - 1)(rng)];
    m.perm = A.perms()[perm(rng)];
    return m;
  };
  rep.multiplicative = true;
  for (int trial = 0; trial < 24; ++trial) {
    const WreathMonomial m1 = sample(), m2 = sample();
    WreathMonomial prod;
    const SraElement lhs = A.multiply(m1, m2, prod) ? emb.image(prod) : SraElement();
    const SraElement rhs = H.nf_product(emb.image(m1), emb.image(m2));
    rep.multiplicative = rep.multiplicative && lhs == rhs;
    ++rep.products_checked;
  }

  rep.pass = rep.theta_phi.all() && rep.corner.ok && rep.residual_zero && rep.dims_match && rep.multiplicative;
  return rep;
}

std::string to_json(const MoritaReport& r) {
  using nlohmann::ordered_json;
  auto scalars = [](const std::vector<Scalar>& v) {
    ordered_json a = ordered_json::array();
    for (const auto& s : v) a.push_back(s.str());
    return a;
  };
  ordered_json j;
  j["group"] = r.group;
  j["n"] = r.n;
  j["degree"] = r.degree;
  j["t"] = r.t.str();
  j["k"] = r.k.str();
  j["cprime"] = scalars(r.cprime);
  j["lambda"] = scalars(r.lambda);
  j["nu"] = r.nu.str();
  j["delta"] = r.delta;
  j["theta_phi"] = {{"equivariant", r.theta_phi.equivariant},
                    {"pairing_theta", r.theta_phi.pairing_theta},
                    {"pairing_phi", r.theta_phi.pairing_phi},
                    {"mesh", r.theta_phi.mesh},
                    {"spans_hom", r.theta_phi.spans_hom}};
  j["corner_identification"] = {{"group_algebra_dim", r.corner.group_algebra_dim},
                                {"expected_group_algebra_dim", r.corner.expected_group_algebra_dim},
                                {"degree_one_dim", r.corner.degree_one_dim},
                                {"expected_degree_one_dim", r.corner.expected_degree_one_dim},
                                {"letter_image_rank", r.corner.letter_image_rank},
                                {"ok", r.corner.ok}};
  j["relations_checked"] = r.relations_checked;
  j["residual_zero"] = r.residual_zero;
  j["failing_relations"] = r.failing;
  j["corner_dims"] = r.corner_dims;
  j["expected_dims"] = r.expected_dims;
  j["dims_match"] = r.dims_match;
  j["products_checked"] = r.products_checked;
  j["multiplicative"] = r.multiplicative;
  j["pass"] = r.pass;
  return j.dump(2);
}

unsigned thread_count_from_env() {
  const char* s = std::getenv("WPA_THREADS");
  if (s == nullptr) return 1;
  char* end = nullptr;
  const long v = std::strtol(s, &end, 10);
  if (end == s || *end != '\0' || v < 1) return 1;
  return static_cast<unsigned>(v);
}

}  // namespace wpa
