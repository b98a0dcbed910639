#include "wpa/pbw.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace wpa {

namespace {

using BlockKey = std::pair<std::size_t, std::size_t>;

WreathMonomial concat(const WreathAlgebra& A, const WreathMonomial& left, const WreathMonomial& right) {
  WreathMonomial out;
  if (!A.multiply(left, right, out)) throw std::logic_error("concat: paths do not compose");
  return out;
}

// Sum over the orderings pi of the letters with sign(pi).
WreathElement antisymmetrize(const WreathAlgebra& A, const Labels& tail, std::vector<Letter> letters) {
  std::vector<int> order(letters.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  WreathElement out;
  do {
    std::vector<Letter> word;
    for (int i : order) word.push_back(letters[static_cast<std::size_t>(i)]);
    out.add(A.path(tail, word), Scalar(Perm(order).sign()));
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

std::vector<WreathElement> spanning_family(const WreathAlgebra& A, const std::vector<Generator>& gens) {
  const DoubledQuiver& q = A.quiver();
  const ProductQuiver& pq = A.product();
  const int n = A.n();
  std::vector<WreathElement> out;
  for (int l = 0; l < n; ++l) {
    for (int m = l + 1; m < n; ++m) {
      for (int r = m + 1; r < n; ++r) {
        for (std::size_t v = 0; v < pq.num_vertices(); ++v) {
          const Labels tail = pq.vertex_labels(v);
          for (int a = 0; a < q.num_edges(); ++a) {
            if (q.tail(a) != tail[static_cast<std::size_t>(l)]) continue;
            for (int b = 0; b < q.num_edges(); ++b) {
              if (q.tail(b) != tail[static_cast<std::size_t>(m)]) continue;
              for (int c = 0; c < q.num_edges(); ++c) {
                if (q.tail(c) != tail[static_cast<std::size_t>(r)]) continue;
                out.push_back(antisymmetrize(A, tail, {{l, a}, {m, b}, {r, c}}));
              }
            }
          }
        }
      }
    }
  }
  for (const auto& g : gens) {
    if (g.kind != RelationKind::Moment) continue;
    for (int m = 0; m < n; ++m) {
      if (m == g.slot) continue;
      for (int c = 0; c < q.num_edges(); ++c) {
        if (q.head(c) != g.tail[static_cast<std::size_t>(m)]) continue;
        Labels tail = g.tail;
        tail[static_cast<std::size_t>(m)] = q.tail(c);
        const Letter z{m, c};
        WreathElement x;
        for (const auto& [mono, coeff] : g.element) {
          const Letter e1 = mono.letters[0], e2 = mono.letters[1];
          x.add(A.path(tail, {e1, e2, z}), coeff);
          x.add(A.path(tail, {e1, z, e2}), -coeff);
          x.add(A.path(tail, {z, e1, e2}), coeff);
        }
        out.push_back(std::move(x));
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Generator> quadratic_generators(const WreathAlgebra& A) {
  std::vector<Generator> out;
  const std::vector<Scalar> zero(static_cast<std::size_t>(A.quiver().num_vertices()));
  for (auto& r : A.relations(zero, Scalar(0))) {
    if (r.leading.is_zero()) continue;
    Generator g;
    g.kind = r.kind;
    g.tail = r.leading.begin()->first.tail;
    g.head = r.leading.begin()->first.head;
    g.element = std::move(r.leading);
    g.slot = r.slot;
    g.slot2 = r.slot2;
    g.edge_a = r.edge_a;
    g.edge_b = r.edge_b;
    out.push_back(std::move(g));
  }
  return out;
}

IntersectionResult intersection_basis(const WreathAlgebra& A) {
  const auto gens = quadratic_generators(A);
  const auto letters = A.paths_of_length(1);
  const ProductQuiver& pq = A.product();
  MonomialIndex idx;
  std::map<BlockKey, std::pair<std::vector<SparseVec>, std::vector<SparseVec>>> blocks;
  for (const auto& g : gens) {
    for (const auto& e : letters) {
      if (e.head == g.tail) {
        WreathElement x;
        for (const auto& [m, c] : g.element) x.add(concat(A, m, e), c);
        blocks[{pq.vertex_index(g.head), pq.vertex_index(e.tail)}].first.push_back(idx.vectorize(x));
      }
      if (e.tail == g.head) {
        WreathElement y;
        for (const auto& [m, c] : g.element) y.add(concat(A, e, m), c);
        blocks[{pq.vertex_index(e.head), pq.vertex_index(g.tail)}].second.push_back(idx.vectorize(y));
      }
    }
  }
  IntersectionResult res;
  std::vector<SparseVec> basis_vecs;
  for (const auto& [key, ab] : blocks) {
    if (ab.first.empty() || ab.second.empty()) continue;
    for (auto& v : subspace_intersection(ab.first, ab.second, idx.size())) basis_vecs.push_back(std::move(v));
  }
  for (const auto& v : basis_vecs) {
    WreathElement w;
    for (const auto& [i, c] : v) w.add(idx.monomial(i), c);
    res.basis.push_back(std::move(w));
  }
  res.constructed = spanning_family(A, gens);
  std::vector<SparseVec> cons;
  for (const auto& x : res.constructed) cons.push_back(idx.vectorize(x));
  res.constructed_rank = span_rank(cons);
  res.certified = same_span(cons, basis_vecs);
  if (!res.certified && !A.quiver().base().has_loop()) {
    throw std::logic_error("intersection_basis: explicit spanning family does not span the overlap space (rank " +
                           std::to_string(res.constructed_rank) + " vs " + std::to_string(basis_vecs.size()) + ")");
  }
  return res;
}

PbwSystem::PbwSystem(const Quiver& q, int n) : A_(DoubledQuiver(q), n) {
  if (n < 2) throw std::invalid_argument("PBW solver needs n >= 2");
  gens_ = quadratic_generators(A_);
  coords_by_gen_.resize(gens_.size());
  for (std::size_t g = 0; g < gens_.size(); ++g) {
    for (const auto& p : A_.perms()) {
      if (p.act(gens_[g].tail) != gens_[g].head) continue;
      coords_by_gen_[g].push_back(coords_.size());
      coord_index_.emplace(BetaCoordinate{g, p}, coords_.size());
      coords_.push_back({g, p});
    }
  }
  build_support();
  inter_ = intersection_basis(A_);
  decompose();
}

std::size_t PbwSystem::coordinate_index(const BetaCoordinate& c) const {
  auto it = coord_index_.find(c);
  if (it == coord_index_.end()) throw std::invalid_argument("beta coordinate violates B-bilinearity");
  return it->second;
}

void PbwSystem::build_support() {
  std::map<WreathMonomial, std::size_t> owner;
  for (std::size_t g = 0; g < gens_.size(); ++g) {
    for (const auto& [m, c] : gens_[g].element) owner.emplace(m, g);
  }
  const int n = A_.n();
  ExactMatrix cons(0, coords_.size());
  for (int k = 0; k + 1 < n; ++k) {
    const Perm tau = Perm::transposition(n, k, k + 1);
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      const WreathElement moved = A_.conjugate(tau, gens_[g].element);
      const auto& [m0, c0] = *moved.begin();
      const std::size_t h = owner.at(m0);
      const Scalar sign = c0 / gens_[h].element.coeff(m0);
      if (!(moved == sign * gens_[h].element)) throw std::logic_error("generators are not permuted by S_n");
      for (std::size_t ci : coords_by_gen_[g]) {
        const Perm p2 = tau * coords_[ci].perm * tau.inverse();
        SparseVec row{{ci, Scalar(1)}};
        row = axpy(row, -sign, SparseVec{{coordinate_index({h, p2}), Scalar(1)}});
        if (!row.empty()) cons.data.push_back(std::move(row));
      }
    }
  }
  cons.rows = cons.data.size();
  support_ = kernel_basis(cons);
}

void PbwSystem::decompose() {
  std::map<WreathMonomial, std::size_t> pivot;
  for (std::size_t g = 0; g < gens_.size(); ++g) pivot.emplace(gens_[g].element.begin()->first, g);
  for (const auto& w : inter_.basis) {
    Decomposition d;
    WreathElement right_sum, left_sum;
    for (const auto& [m, c] : w) {
      // m = (prefix of length 2) * (last letter)
      const WreathMonomial e = A_.path(m.tail, {m.letters[2]});
      const WreathMonomial pre = A_.path(e.head, {m.letters[0], m.letters[1]});
      if (auto it = pivot.find(pre); it != pivot.end()) {
        const Scalar coeff = c / gens_[it->second].element.coeff(pre);
        d.right.push_back({it->second, e, coeff});
        for (const auto& [gm, gc] : gens_[it->second].element) right_sum.add(concat(A_, gm, e), coeff * gc);
      }
      // m = (first letter) * (suffix of length 2)
      const WreathMonomial suf = A_.path(m.tail, {m.letters[1], m.letters[2]});
      const WreathMonomial f = A_.path(suf.head, {m.letters[0]});
      if (auto it = pivot.find(suf); it != pivot.end()) {
        const Scalar coeff = c / gens_[it->second].element.coeff(suf);
        d.left.push_back({it->second, f, coeff});
        for (const auto& [gm, gc] : gens_[it->second].element) left_sum.add(concat(A_, f, gm), coeff * gc);
      }
    }
    if (!(right_sum == w) || !(left_sum == w)) {
      throw std::logic_error("overlap element does not decompose through the generators");
    }
    decomp_.push_back(std::move(d));
  }
}

SparseVec PbwSystem::to_vector(const BetaMap& b) const {
  SparseVec v;
  for (const auto& [c, x] : b.values) {
    if (!x.is_zero()) v.emplace_back(coordinate_index(c), x);
  }
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& c) { return a.first < c.first; });
  return v;
}

BetaMap PbwSystem::from_vector(const SparseVec& v) const {
  BetaMap b;
  for (const auto& [i, x] : v) b.values.emplace(coords_.at(i), x);
  return b;
}

bool PbwSystem::is_equivariant(const BetaMap& b) const {
  Echelon e;
  for (const auto& s : support_) e.insert(s);
  return e.contains(to_vector(b));
}

BetaMap PbwSystem::beta_from_params(const std::vector<Scalar>& lambda, const Scalar& nu) const {
  const DoubledQuiver& q = A_.quiver();
  const int n = A_.n();
  if (static_cast<int>(lambda.size()) != q.num_vertices()) {
    throw std::invalid_argument("beta_from_params: one lambda value per vertex required");
  }
  BetaMap b;
  auto put = [&](std::size_t g, const Perm& p, const Scalar& x) {
    if (x.is_zero()) return;
    coordinate_index({g, p});
    b.values[{g, p}] += x;
  };
  for (std::size_t g = 0; g < gens_.size(); ++g) {
    const Generator& gen = gens_[g];
    if (gen.kind == RelationKind::Moment) {
      const int i = gen.tail[static_cast<std::size_t>(gen.slot)];
      put(g, Perm::identity(n), lambda[static_cast<std::size_t>(i)]);
      for (int j = 0; j < n; ++j) {
        if (j != gen.slot && gen.tail[static_cast<std::size_t>(j)] == i) {
          put(g, Perm::transposition(n, j, gen.slot), nu);
        }
      }
    } else {
      const Perm s = Perm::transposition(n, gen.slot, gen.slot2);
      if (gen.edge_a == q.star(gen.edge_b) && q.is_original(gen.edge_b)) {
        put(g, s, nu);
      } else if (gen.edge_b == q.star(gen.edge_a) && q.is_original(gen.edge_a)) {
        put(g, s, -nu);
      }
    }
  }
  return b;
}

std::vector<WreathElement> PbwSystem::residual(const BetaMap& b) const {
  std::vector<WreathElement> beta_of(gens_.size());
  for (const auto& [c, x] : b.values) {
    coordinate_index(c);
    beta_of[c.generator] += x * A_.anchor(gens_[c.generator].head, c.perm);
  }
  std::vector<WreathElement> out;
  for (const auto& d : decomp_) {
    WreathElement r;
    for (const auto& s : d.right) r += s.coeff * A_.multiply(beta_of[s.generator], WreathElement(s.letter));
    for (const auto& s : d.left) r -= s.coeff * A_.multiply(WreathElement(s.letter), beta_of[s.generator]);
    out.push_back(std::move(r));
  }
  return out;
}

bool PbwSystem::residual_vanishes(const BetaMap& b) const {
  const auto r = residual(b);
  return std::all_of(r.begin(), r.end(), [](const WreathElement& x) { return x.is_zero(); });
}

std::map<std::pair<std::size_t, WreathMonomial>, SparseVec> PbwSystem::residual_columns() const {
  std::map<std::pair<std::size_t, WreathMonomial>, std::map<std::size_t, Scalar>> acc;
  WreathMonomial m;
  for (std::size_t w = 0; w < decomp_.size(); ++w) {
    for (const auto& s : decomp_[w].right) {
      for (std::size_t ci : coords_by_gen_[s.generator]) {
        const WreathMonomial anchor{gens_[s.generator].head, gens_[s.generator].head, {}, coords_[ci].perm};
        if (A_.multiply(anchor, s.letter, m)) acc[{w, m}][ci] += s.coeff;
      }
    }
    for (const auto& s : decomp_[w].left) {
      for (std::size_t ci : coords_by_gen_[s.generator]) {
        const WreathMonomial anchor{gens_[s.generator].head, gens_[s.generator].head, {}, coords_[ci].perm};
        if (A_.multiply(s.letter, anchor, m)) acc[{w, m}][ci] -= s.coeff;
      }
    }
  }
  std::map<std::pair<std::size_t, WreathMonomial>, SparseVec> out;
  for (auto& [key, row] : acc) {
    SparseVec v;
    for (auto& [i, x] : row) {
      if (!x.is_zero()) v.emplace_back(i, x);
    }
    if (!v.empty()) out.emplace(key, std::move(v));
  }
  return out;
}

AdmissibleSolution PbwSystem::solve() const {
  AdmissibleSolution sol;
  const DoubledQuiver& q = A_.quiver();
  sol.coordinate_count = coords_.size();
  sol.support_dim = support_.size();
  sol.intersection_dim = inter_.basis.size();
  sol.intersection_certified = inter_.certified;
  sol.expected_dim = static_cast<std::size_t>(q.num_vertices()) + 1;
  sol.outside_hypotheses = q.base().has_loop();

  // Residual rows restricted to the equivariant subspace.
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> by_coord(coords_.size());
  for (std::size_t j = 0; j < support_.size(); ++j) {
    for (const auto& [k, x] : support_[j]) by_coord[k].emplace_back(j, x);
  }
  ExactMatrix sys(0, support_.size());
  for (const auto& [key, row] : residual_columns()) {
    std::map<std::size_t, Scalar> acc;
    for (const auto& [k, x] : row) {
      for (const auto& [j, y] : by_coord[k]) acc[j] += x * y;
    }
    SparseVec r;
    for (auto& [j, x] : acc) {
      if (!x.is_zero()) r.emplace_back(j, x);
    }
    if (!r.empty()) sys.data.push_back(std::move(r));
  }
  sys.rows = sys.data.size();
  std::vector<SparseVec> sol_vecs;
  for (const auto& k : kernel_basis(sys)) {
    SparseVec v;
    for (const auto& [j, x] : k) v = axpy(v, x, support_[j]);
    sol_vecs.push_back(v);
    sol.basis.push_back(from_vector(v));
  }
  sol.solution_dim = sol_vecs.size();

  std::vector<SparseVec> directions;
  for (int i = 0; i < q.num_vertices(); ++i) {
    std::vector<Scalar> lam(static_cast<std::size_t>(q.num_vertices()));
    lam[static_cast<std::size_t>(i)] = Scalar(1);
    directions.push_back(to_vector(beta_from_params(lam, Scalar(0))));
  }
  directions.push_back(to_vector(beta_from_params(std::vector<Scalar>(static_cast<std::size_t>(q.num_vertices())), Scalar(1))));
  sol.matches_parameters = span_rank(directions) == directions.size() && same_span(sol_vecs, directions);
  sol.certified = sol.intersection_certified && sol.matches_parameters && sol.solution_dim == sol.expected_dim;
  if (sol.outside_hypotheses) {
    sol.note = "quiver has an edge-loop: outside the hypotheses of the classification theorem; "
               "compare with the rational Cherednik algebra case";
  }
  return sol;
}

std::string to_json(const PbwSystem& sys, const AdmissibleSolution& sol) {
  const DoubledQuiver& q = sys.algebra().quiver();
  nlohmann::ordered_json j;
  j["n"] = sys.algebra().n();
  j["vertices"] = q.num_vertices();
  j["ambient_dim"] = sol.coordinate_count;
  j["support_dim"] = sol.support_dim;
  j["intersection_dim"] = sol.intersection_dim;
  j["intersection_certified"] = sol.intersection_certified;
  j["solution_dim"] = sol.solution_dim;
  j["expected_dim"] = sol.expected_dim;
  j["matches_parameters"] = sol.matches_parameters;
  j["certified"] = sol.certified;
  j["outside_hypotheses"] = sol.outside_hypotheses;
  if (!sol.note.empty()) j["note"] = sol.note;
  j["basis"] = nlohmann::ordered_json::array();
  for (const auto& b : sol.basis) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [c, x] : b.values) {
      const Generator& g = sys.generators()[c.generator];
      arr.push_back({{"generator", to_string(q, g.element)}, {"perm", c.perm.str()}, {"value", x.str()}});
    }
    j["basis"].push_back(std::move(arr));
  }
  return j.dump(2);
}

}  // namespace wpa
