#include "wpa/wreath.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace wpa {

bool operator<(const WreathMonomial& a, const WreathMonomial& b) {
  return std::forward_as_tuple(a.letters.size(), a.tail, a.head, a.letters, a.perm) <
         std::forward_as_tuple(b.letters.size(), b.tail, b.head, b.letters, b.perm);
}

WreathAlgebra::WreathAlgebra(DoubledQuiver q, int n) : pq_(std::move(q), n), perms_(Perm::all(n)) {}

WreathMonomial WreathAlgebra::path(const Labels& tail, const std::vector<Letter>& letters,
                                   const Perm& perm) const {
  if (static_cast<int>(tail.size()) != n() || perm.n() != n()) {
    throw std::invalid_argument("WreathAlgebra::path: arity mismatch");
  }
  WreathMonomial m{tail, tail, letters, perm};
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    if (it->slot < 0 || it->slot >= n()) throw std::invalid_argument("WreathAlgebra::path: slot out of range");
    auto& label = m.head[static_cast<std::size_t>(it->slot)];
    if (label != quiver().tail(it->edge)) {
      throw std::invalid_argument("WreathAlgebra::path: letters do not compose");
    }
    label = quiver().head(it->edge);
  }
  return m;
}

WreathMonomial WreathAlgebra::path(const Labels& tail, const std::vector<Letter>& letters) const {
  return path(tail, letters, Perm::identity(n()));
}

WreathElement WreathAlgebra::anchor(const Labels& v) const { return anchor(v, Perm::identity(n())); }

WreathElement WreathAlgebra::anchor(const Labels& v, const Perm& p) const {
  return WreathElement(path(v, {}, p));
}

WreathElement WreathAlgebra::letter(int slot, int edge, const Labels& tail) const {
  return WreathElement(path(tail, {{slot, edge}}));
}

WreathMonomial WreathAlgebra::act(const Perm& sigma, const WreathMonomial& m) const {
  WreathMonomial out{sigma.act(m.tail), sigma.act(m.head), m.letters, m.perm};
  for (auto& l : out.letters) l.slot = sigma(l.slot);
  return out;
}

WreathMonomial WreathAlgebra::conjugate(const Perm& tau, const WreathMonomial& m) const {
  WreathMonomial out = act(tau, m);
  out.perm = tau * m.perm * tau.inverse();
  return out;
}

WreathElement WreathAlgebra::conjugate(const Perm& tau, const WreathElement& x) const {
  WreathElement out;
  for (const auto& [m, c] : x) out.add(conjugate(tau, m), c);
  return out;
}

bool WreathAlgebra::multiply(const WreathMonomial& a, const WreathMonomial& b, WreathMonomial& out) const {
  WreathMonomial moved = act(a.perm, b);
  if (moved.head != a.tail) return false;
  out.tail = std::move(moved.tail);
  out.head = a.head;
  out.letters = a.letters;
  out.letters.insert(out.letters.end(), moved.letters.begin(), moved.letters.end());
  out.perm = a.perm * b.perm;
  return true;
}

WreathElement WreathAlgebra::multiply(const WreathElement& a, const WreathElement& b) const {
  WreathElement out;
  WreathMonomial m;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      if (multiply(ma, mb, m)) out.add(m, ca * cb);
    }
  }
  return out;
}

WreathElement WreathAlgebra::bracket(const SlotEdge& eps, const SlotEdge& eps2) const {
  const int l = eps.slot, m = eps2.slot;
  if (l == m) throw std::invalid_argument("bracket: letters must sit at different slots");
  if (static_cast<int>(eps.labels.size()) != n() || static_cast<int>(eps2.labels.size()) != n()) {
    throw std::invalid_argument("bracket: arity mismatch");
  }
  const int a = eps.edge, b = eps2.edge;
  const auto L = static_cast<std::size_t>(l), M = static_cast<std::size_t>(m);
  for (std::size_t j = 0; j < eps.labels.size(); ++j) {
    if (j == L || j == M) continue;
    if (eps.labels[j] != eps2.labels[j]) throw std::invalid_argument("bracket: idle labels differ");
  }
  if (eps.labels[M] != quiver().head(b) || eps2.labels[L] != quiver().tail(a)) {
    throw std::invalid_argument("bracket: idle labels incompatible with the edges");
  }
  Labels tail = eps.labels;
  tail[L] = quiver().tail(a);
  tail[M] = quiver().tail(b);
  WreathElement out(path(tail, {{l, a}, {m, b}}));
  out.add(path(tail, {{m, b}, {l, a}}), Scalar(-1));
  return out;
}

TensorElement WreathAlgebra::upsilon(const WreathElement& x) const {
  TensorElement out;
  for (const auto& [m, c] : x) {
    if (!m.perm.is_identity()) throw std::invalid_argument("upsilon: permutation must be the identity");
    TensorMonomial t{m.tail, std::vector<std::vector<int>>(static_cast<std::size_t>(n()))};
    for (const auto& l : m.letters) t.paths[static_cast<std::size_t>(l.slot)].push_back(l.edge);
    out.add(t, c);
  }
  return out;
}

TensorElement WreathAlgebra::tensor_multiply(const TensorElement& a, const TensorElement& b) const {
  auto head_of = [&](const TensorMonomial& t) {
    Labels h = t.tail;
    for (std::size_t s = 0; s < t.paths.size(); ++s) {
      if (!t.paths[s].empty()) h[s] = quiver().head(t.paths[s].front());
    }
    return h;
  };
  TensorElement out;
  for (const auto& [ta, ca] : a) {
    for (const auto& [tb, cb] : b) {
      if (head_of(tb) != ta.tail) continue;
      TensorMonomial t{tb.tail, ta.paths};
      for (std::size_t s = 0; s < t.paths.size(); ++s) {
        t.paths[s].insert(t.paths[s].end(), tb.paths[s].begin(), tb.paths[s].end());
      }
      out.add(t, ca * cb);
    }
  }
  return out;
}

RelationSet WreathAlgebra::relations(const std::vector<Scalar>& lambda, const Scalar& nu) const {
  const DoubledQuiver& q = quiver();
  if (static_cast<int>(lambda.size()) != q.num_vertices()) {
    throw std::invalid_argument("relations: one lambda value per vertex required");
  }
  const auto moments = moment_elements(q);
  const Perm id = Perm::identity(n());
  RelationSet out;
  for (std::size_t v = 0; v < pq_.num_vertices(); ++v) {
    const Labels labels = pq_.vertex_labels(v);
    for (int l = 0; l < n(); ++l) {
      const int i = labels[static_cast<std::size_t>(l)];
      Relation r;
      r.kind = RelationKind::Moment;
      r.labels = labels;
      r.slot = l;
      for (const auto& t : moments[static_cast<std::size_t>(i)]) {
        r.leading.add(path(labels, {{l, t.left}, {l, t.right}}), Scalar(t.sign));
      }
      r.lower.add(path(labels, {}, id), lambda[static_cast<std::size_t>(i)]);
      for (int j = 0; j < n(); ++j) {
        if (j != l && labels[static_cast<std::size_t>(j)] == i) {
          r.lower.add(path(labels, {}, Perm::transposition(n(), j, l)), nu);
        }
      }
      out.push_back(std::move(r));
    }
  }
  for (int l = 0; l < n(); ++l) {
    for (int m = l + 1; m < n(); ++m) {
      for (int a = 0; a < q.num_edges(); ++a) {
        for (int b = 0; b < q.num_edges(); ++b) {
          for (std::size_t v = 0; v < pq_.num_vertices(); ++v) {
            const Labels tail = pq_.vertex_labels(v);
            if (tail[static_cast<std::size_t>(l)] != q.tail(a) || tail[static_cast<std::size_t>(m)] != q.tail(b)) {
              continue;
            }
            SlotEdge eps{l, a, tail}, eps2{m, b, tail};
            eps.labels[static_cast<std::size_t>(m)] = q.head(b);
            Relation r;
            r.kind = RelationKind::Bracket;
            r.slot = l;
            r.slot2 = m;
            r.edge_a = a;
            r.edge_b = b;
            r.leading = bracket(eps, eps2);
            r.labels = r.leading.begin()->first.head;
            const Perm s = Perm::transposition(n(), l, m);
            if (a == q.star(b) && q.is_original(b)) {
              r.lower.add(path(r.labels, {}, s), nu);
            } else if (b == q.star(a) && q.is_original(a)) {
              r.lower.add(path(r.labels, {}, s), -nu);
            }
            out.push_back(std::move(r));
          }
        }
      }
    }
  }
  return out;
}

std::vector<WreathMonomial> WreathAlgebra::paths_of_length(int k) const {
  std::vector<WreathMonomial> cur;
  const Perm id = Perm::identity(n());
  for (std::size_t v = 0; v < pq_.num_vertices(); ++v) {
    const Labels labels = pq_.vertex_labels(v);
    cur.push_back({labels, labels, {}, id});
  }
  for (int len = 0; len < k; ++len) {
    std::vector<WreathMonomial> next;
    for (const auto& p : cur) {
      for (std::size_t e : pq_.edges_from(pq_.vertex_index(p.head))) {
        const ProductEdge& pe = pq_.edges()[e];
        WreathMonomial m{p.tail, pe.head, {{pe.slot, pe.edge}}, id};
        m.letters.insert(m.letters.end(), p.letters.begin(), p.letters.end());
        next.push_back(std::move(m));
      }
    }
    cur = std::move(next);
  }
  std::sort(cur.begin(), cur.end());
  return cur;
}

std::vector<std::size_t> WreathAlgebra::graded_dimension(const RelationSet& rels, int d) const {
  std::vector<WreathElement> gens;
  for (const auto& r : rels) {
    const WreathElement g = r.element();
    for (const auto& [m, c] : g) {
      if (m.degree() != 2 || !m.perm.is_identity()) {
        throw std::invalid_argument("graded_dimension: relations must be homogeneous of degree 2");
      }
    }
    if (g.is_zero()) continue;
    for (const auto& tau : perms_) gens.push_back(conjugate(tau, g));
  }
  std::size_t nfact = perms_.size();

  // Paths by length, bucketed by tail and by head vertex.
  const std::size_t V = pq_.num_vertices();
  std::vector<std::vector<WreathMonomial>> paths;
  std::vector<std::vector<std::vector<std::size_t>>> by_tail, by_head;
  for (int k = 0; k <= std::max(d - 2, 0); ++k) {
    paths.push_back(paths_of_length(k));
    by_tail.emplace_back(V);
    by_head.emplace_back(V);
    for (std::size_t i = 0; i < paths.back().size(); ++i) {
      by_tail.back()[pq_.vertex_index(paths.back()[i].tail)].push_back(i);
      by_head.back()[pq_.vertex_index(paths.back()[i].head)].push_back(i);
    }
  }

  std::vector<std::size_t> dims;
  for (int k = 0; k <= d; ++k) {
    const auto basis = k < static_cast<int>(paths.size()) ? paths[static_cast<std::size_t>(k)] : paths_of_length(k);
    if (k < 2) {
      dims.push_back(basis.size() * nfact);
      continue;
    }
    MonomialIndex index;
    for (const auto& m : basis) index.index(m);
    Echelon ech;
    for (const auto& g : gens) {
      const WreathMonomial& lead = g.begin()->first;
      const std::size_t gh = pq_.vertex_index(lead.head), gt = pq_.vertex_index(lead.tail);
      for (int i = 0; i <= k - 2; ++i) {
        const int j = k - 2 - i;
        const auto& P = paths[static_cast<std::size_t>(i)];
        const auto& Qs = paths[static_cast<std::size_t>(j)];
        for (std::size_t pi : by_tail[static_cast<std::size_t>(i)][gh]) {
          for (std::size_t qi : by_head[static_cast<std::size_t>(j)][gt]) {
            WreathElement x;
            for (const auto& [m, c] : g) {
              WreathMonomial w{Qs[qi].tail, P[pi].head, P[pi].letters, m.perm};
              w.letters.insert(w.letters.end(), m.letters.begin(), m.letters.end());
              w.letters.insert(w.letters.end(), Qs[qi].letters.begin(), Qs[qi].letters.end());
              x.add(w, c);
            }
            ech.insert(index.vectorize(x));
          }
        }
      }
    }
    if (index.size() != basis.size()) throw std::logic_error("graded_dimension: product left the path basis");
    dims.push_back((basis.size() - ech.rank()) * nfact);
  }
  return dims;
}

std::size_t MonomialIndex::index(const WreathMonomial& m) {
  auto [it, inserted] = ids_.try_emplace(m, list_.size());
  if (inserted) list_.push_back(m);
  return it->second;
}

SparseVec MonomialIndex::vectorize(const WreathElement& x) {
  SparseVec v;
  for (const auto& [m, c] : x) v.emplace_back(index(m), c);
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

namespace {

// Letterwise substitution edge -> sign * edge' on every monomial.
WreathElement substitute(const WreathElement& x, const std::vector<std::pair<int, int>>& table) {
  WreathElement out;
  for (const auto& [m, c] : x) {
    WreathMonomial w = m;
    int sign = 1;
    for (auto& l : w.letters) {
      const auto& [e, s] = table[static_cast<std::size_t>(l.edge)];
      l.edge = e;
      sign *= s;
    }
    out.add(w, Scalar(sign) * c);
  }
  return out;
}

bool span_contains(MonomialIndex& idx, const std::vector<WreathElement>& span,
                   const std::vector<WreathElement>& xs) {
  Echelon ech;
  for (const auto& g : span) ech.insert(idx.vectorize(g));
  return std::all_of(xs.begin(), xs.end(), [&](const WreathElement& x) { return ech.contains(idx.vectorize(x)); });
}

}  // namespace

bool orientation_iso_check(const Quiver& q, const std::set<int>& flip, int n,
                           const std::vector<Scalar>& lambda, const Scalar& nu) {
  const Quiver q2 = reorient(q, flip);
  const WreathAlgebra A{DoubledQuiver(q), n}, B{DoubledQuiver(q2), n};
  const int E = q.num_edges();
  std::vector<std::pair<int, int>> fwd(static_cast<std::size_t>(2 * E)), back(fwd.size());
  for (int e = 0; e < E; ++e) {
    const auto u = static_cast<std::size_t>(e), s = static_cast<std::size_t>(e + E);
    if (flip.count(e)) {
      fwd[u] = {e + E, 1};
      fwd[s] = {e, -1};
      back[u] = {e + E, -1};
      back[s] = {e, 1};
    } else {
      fwd[u] = back[u] = {e, 1};
      fwd[s] = back[s] = {e + E, 1};
    }
  }
  std::vector<WreathElement> ra, rb, ra_img, rb_img;
  for (const auto& r : A.relations(lambda, nu)) {
    ra.push_back(r.element());
    ra_img.push_back(substitute(ra.back(), fwd));
  }
  for (const auto& r : B.relations(lambda, nu)) {
    rb.push_back(r.element());
    rb_img.push_back(substitute(rb.back(), back));
  }
  MonomialIndex idx;
  return span_contains(idx, rb, ra_img) && span_contains(idx, ra, rb_img);
}

std::string to_string(const DoubledQuiver& q, const WreathMonomial& m) {
  std::ostringstream os;
  auto labels = [&](const Labels& l) {
    os << "(";
    for (std::size_t i = 0; i < l.size(); ++i) os << (i ? "," : "") << l[i];
    os << ")";
  };
  if (m.letters.empty()) {
    os << "e";
    labels(m.tail);
  } else {
    for (std::size_t i = 0; i < m.letters.size(); ++i) {
      os << (i ? " " : "") << q.edge_name(m.letters[i].edge) << "@" << m.letters[i].slot + 1;
    }
    os << " from ";
    labels(m.tail);
  }
  if (!m.perm.is_identity()) os << " " << m.perm.str();
  return os.str();
}

std::string to_string(const DoubledQuiver& q, const WreathElement& x) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : x) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c << ") " << to_string(q, m);
  }
  return os.str();
}

}  // namespace wpa
