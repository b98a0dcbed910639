#include "wpa/quiver.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace wpa {

Quiver::Quiver(int num_vertices, std::vector<Edge> edges)
    : num_vertices_(num_vertices), edges_(std::move(edges)) {
  if (num_vertices_ < 1) throw std::invalid_argument("Quiver: needs at least one vertex");
  for (const auto& e : edges_) {
    if (e.tail < 0 || e.tail >= num_vertices_ || e.head < 0 || e.head >= num_vertices_) {
      throw std::invalid_argument("Quiver: edge endpoint out of range");
    }
  }
}

bool Quiver::has_loop() const {
  return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.tail == e.head; });
}

bool Quiver::connected() const {
  std::vector<int> parent(static_cast<std::size_t>(num_vertices_));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& e : edges_) parent[find(e.tail)] = find(e.head);
  for (int v = 0; v < num_vertices_; ++v) {
    if (find(v) != find(0)) return false;
  }
  return true;
}

Quiver Quiver::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("quiver file: ") + e.what());
  }
  if (!j.contains("vertices") || !j.contains("edges")) {
    throw std::invalid_argument("quiver file: expected keys \"vertices\" and \"edges\"");
  }
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("quiver file: edge must be [tail, head]");
    edges.push_back({e[0].get<int>(), e[1].get<int>()});
  }
  return Quiver(j.at("vertices").get<int>(), std::move(edges));
}

std::string Quiver::to_json() const {
  nlohmann::json j;
  j["vertices"] = num_vertices_;
  j["edges"] = nlohmann::json::array();
  for (const auto& e : edges_) j["edges"].push_back({e.tail, e.head});
  return j.dump();
}

DoubledQuiver::DoubledQuiver(Quiver base) : base_(std::move(base)) {}

int DoubledQuiver::tail(int e) const {
  const int E = base_.num_edges();
  if (e < 0 || e >= 2 * E) throw std::out_of_range("DoubledQuiver: edge id");
  return e < E ? base_.edge(e).tail : base_.edge(e - E).head;
}

int DoubledQuiver::head(int e) const {
  const int E = base_.num_edges();
  if (e < 0 || e >= 2 * E) throw std::out_of_range("DoubledQuiver: edge id");
  return e < E ? base_.edge(e).head : base_.edge(e - E).tail;
}

int DoubledQuiver::star(int e) const {
  const int E = base_.num_edges();
  if (e < 0 || e >= 2 * E) throw std::out_of_range("DoubledQuiver: edge id");
  return e < E ? e + E : e - E;
}

std::string DoubledQuiver::edge_name(int e) const {
  return is_original(e) ? "a" + std::to_string(e) : "a" + std::to_string(star(e)) + "*";
}

Quiver affine_quiver(char family, int index) {
  std::vector<Edge> edges;
  switch (family) {
    case 'A':
    case 'a':
      if (index < 0) throw std::invalid_argument("affine A: index must be >= 0");
      if (index == 0) return Quiver(1, {{0, 0}});
      if (index == 1) return Quiver(2, {{0, 1}, {0, 1}});
      for (int i = 0; i <= index; ++i) edges.push_back({i, (i + 1) % (index + 1)});
      return Quiver(index + 1, edges);
    case 'D':
    case 'd': {
      if (index < 4) throw std::invalid_argument("affine D: index must be >= 4");
      edges = {{0, 4}, {1, 4}, {2, index}, {3, index}};
      for (int k = 4; k < index; ++k) edges.push_back({k + 1, k});
      return Quiver(index + 1, edges);
    }
    case 'E':
    case 'e': {
      std::vector<int> arms;
      if (index == 6) arms = {2, 2, 2};
      else if (index == 7) arms = {1, 3, 3};
      else if (index == 8) arms = {1, 2, 5};
      else throw std::invalid_argument("affine E: index must be 6, 7 or 8");
      const int center = index;
      int v = 0;
      for (int len : arms) {
        for (int k = 0; k < len; ++k, ++v) edges.push_back({v, k + 1 == len ? center : v + 1});
      }
      return Quiver(index + 1, edges);
    }
    default:
      throw std::invalid_argument(std::string("affine quiver: unknown family '") + family + "'");
  }
}

Quiver parse_quiver_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos || spec.substr(0, 6) != "affine" || colon != 7) {
    throw std::invalid_argument("quiver spec must look like affineA:2, got '" + std::string(spec) + "'");
  }
  const char family = spec[6];
  int index = 0;
  try {
    std::size_t used = 0;
    index = std::stoi(std::string(spec.substr(colon + 1)), &used);
    if (used != spec.size() - colon - 1) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw std::invalid_argument("quiver spec: bad index in '" + std::string(spec) + "'");
  }
  return affine_quiver(family, index);
}

std::vector<std::vector<MomentTerm>> moment_elements(const DoubledQuiver& q) {
  std::vector<std::vector<MomentTerm>> r(static_cast<std::size_t>(q.num_vertices()));
  for (int a = 0; a < q.base().num_edges(); ++a) {
    const int as = q.star(a);
    r[static_cast<std::size_t>(q.head(a))].push_back({+1, a, as});
    r[static_cast<std::size_t>(q.tail(a))].push_back({-1, as, a});
  }
  return r;
}

ProductQuiver::ProductQuiver(DoubledQuiver q, int n) : q_(std::move(q)), n_(n) {
  if (n_ < 1) throw std::invalid_argument("product quiver: n must be >= 1");
  num_vertices_ = 1;
  for (int k = 0; k < n_; ++k) num_vertices_ *= static_cast<std::size_t>(q_.num_vertices());
  out_.resize(num_vertices_);
  for (std::size_t v = 0; v < num_vertices_; ++v) {
    const Labels labels = vertex_labels(v);
    for (int slot = 0; slot < n_; ++slot) {
      for (int e = 0; e < q_.num_edges(); ++e) {
        if (q_.tail(e) != labels[static_cast<std::size_t>(slot)]) continue;
        ProductEdge pe{slot, e, labels, labels};
        pe.head[static_cast<std::size_t>(slot)] = q_.head(e);
        out_[v].push_back(edges_.size());
        edges_.push_back(std::move(pe));
      }
    }
  }
}

std::size_t ProductQuiver::vertex_index(const Labels& labels) const {
  if (static_cast<int>(labels.size()) != n_) throw std::invalid_argument("vertex_index: wrong arity");
  std::size_t idx = 0;
  for (int l : labels) {
    if (l < 0 || l >= q_.num_vertices()) throw std::out_of_range("vertex_index: label out of range");
    idx = idx * static_cast<std::size_t>(q_.num_vertices()) + static_cast<std::size_t>(l);
  }
  return idx;
}

Labels ProductQuiver::vertex_labels(std::size_t index) const {
  Labels out(static_cast<std::size_t>(n_));
  const auto k = static_cast<std::size_t>(q_.num_vertices());
  for (int s = n_; s-- > 0;) {
    out[static_cast<std::size_t>(s)] = static_cast<int>(index % k);
    index /= k;
  }
  return out;
}

ProductQuiver product_quiver(const DoubledQuiver& q, int n) { return ProductQuiver(q, n); }

Quiver reorient(const Quiver& q, const std::set<int>& flip) {
  std::vector<Edge> edges = q.edges();
  for (int e : flip) {
    if (e < 0 || e >= q.num_edges()) throw std::invalid_argument("reorient: edge id out of range");
    std::swap(edges[static_cast<std::size_t>(e)].tail, edges[static_cast<std::size_t>(e)].head);
  }
  return Quiver(q.num_vertices(), std::move(edges));
}

namespace {

std::vector<std::pair<int, int>> undirected_pairs(const Quiver& q, const std::vector<int>& perm) {
  std::vector<std::pair<int, int>> out;
  for (const auto& e : q.edges()) {
    int a = perm[static_cast<std::size_t>(e.tail)], b = perm[static_cast<std::size_t>(e.head)];
    out.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Vertex permutation carrying a's undirected edge multiset to b's, if any.
bool find_vertex_map(const Quiver& a, const Quiver& b, std::vector<int>& perm) {
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
  std::vector<int> id(static_cast<std::size_t>(a.num_vertices()));
  std::iota(id.begin(), id.end(), 0);
  const auto target = undirected_pairs(b, id);
  perm = id;
  do {
    if (undirected_pairs(a, perm) == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

bool isomorphic_underlying_graphs(const Quiver& a, const Quiver& b) {
  std::vector<int> perm;
  return find_vertex_map(a, b, perm);
}

bool isomorphic_doubles(const DoubledQuiver& a, const DoubledQuiver& b) {
  std::vector<int> perm;
  if (!find_vertex_map(a.base(), b.base(), perm)) return false;
  // Build the edge bijection star-pair by star-pair and check it is a quiver
  // map commuting with the involution.
  const int E = a.base().num_edges();
  std::vector<int> phi(static_cast<std::size_t>(2 * E), -1);
  std::vector<bool> used(static_cast<std::size_t>(2 * E), false);
  for (int e = 0; e < E; ++e) {
    const int t = perm[static_cast<std::size_t>(a.tail(e))];
    const int h = perm[static_cast<std::size_t>(a.head(e))];
    for (int f = 0; f < 2 * E; ++f) {
      if (used[static_cast<std::size_t>(f)] || b.tail(f) != t || b.head(f) != h) continue;
      phi[static_cast<std::size_t>(e)] = f;
      phi[static_cast<std::size_t>(a.star(e))] = b.star(f);
      used[static_cast<std::size_t>(f)] = used[static_cast<std::size_t>(b.star(f))] = true;
      break;
    }
    if (phi[static_cast<std::size_t>(e)] < 0) return false;
  }
  for (int e = 0; e < 2 * E; ++e) {
    const int f = phi[static_cast<std::size_t>(e)];
    if (b.tail(f) != perm[static_cast<std::size_t>(a.tail(e))]) return false;
    if (b.head(f) != perm[static_cast<std::size_t>(a.head(e))]) return false;
    if (phi[static_cast<std::size_t>(a.star(e))] != b.star(f)) return false;
  }
  return true;
}

}  // namespace wpa
