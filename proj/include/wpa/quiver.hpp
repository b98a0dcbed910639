#pragma once

// Quivers, their doubles with the star involution, affine ADE fixtures, the
// moment-map elements r_i, and n-fold product quivers.
//
// Path convention: a product p*q of paths is nonzero only when t(p) == h(q),
// i.e. q is traversed first. A degree-2 path is written (left, right).

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace wpa {

struct Edge {
  int tail = 0;
  int head = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

class Quiver {
 public:
  Quiver() = default;
  Quiver(int num_vertices, std::vector<Edge> edges);

  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }
  bool has_loop() const;
  bool connected() const;

  /// { "vertices": k, "edges": [[tail, head], ...] }
  static Quiver from_json(std::string_view text);
  std::string to_json() const;

  friend bool operator==(const Quiver&, const Quiver&) = default;

 private:
  int num_vertices_ = 0;
  std::vector<Edge> edges_;
};

/// Q-bar. Edge ids 0..E-1 are the edges of Q; id e+E is the reversed edge e*.
class DoubledQuiver {
 public:
  DoubledQuiver() = default;
  explicit DoubledQuiver(Quiver base);

  const Quiver& base() const { return base_; }
  int num_vertices() const { return base_.num_vertices(); }
  int num_edges() const { return 2 * base_.num_edges(); }
  int tail(int e) const;
  int head(int e) const;
  int star(int e) const;
  bool is_original(int e) const { return e < base_.num_edges(); }
  std::string edge_name(int e) const;

 private:
  Quiver base_;
};

/// Affine Dynkin quiver with a fixed orientation. family is 'A', 'D' or 'E'.
///   A0: one vertex with a loop. A1: two parallel edges 0->1.
///   Al (l>=2): the cycle i -> i+1 mod l+1.
///   D and E: all edges point toward a branch vertex; leaves come first and
///   the (first) branch vertex is 4 for D, the last vertex for E.
Quiver affine_quiver(char family, int index);

/// "affineA:2", "affineD:4", "affineE:6".
Quiver parse_quiver_spec(std::string_view spec);

struct MomentTerm {
  int sign;   // +1 or -1
  int left;   // edge of Q-bar
  int right;  // edge of Q-bar, traversed first
};

/// r_i = sum_{h(a)=i} a a* - sum_{t(a)=i} a* a, indexed by vertex.
std::vector<std::vector<MomentTerm>> moment_elements(const DoubledQuiver& q);

/// Vertex label tuple (i_1, ..., i_n) of the product quiver.
using Labels = std::vector<int>;

struct ProductEdge {
  int slot = 0;
  int edge = 0;  // edge of Q-bar
  Labels tail;
  Labels head;
};

/// Q-bar x ... x Q-bar: vertex set I^n, each edge moves exactly one coordinate.
class ProductQuiver {
 public:
  ProductQuiver(DoubledQuiver q, int n);

  int n() const { return n_; }
  const DoubledQuiver& factor() const { return q_; }
  std::size_t num_vertices() const { return num_vertices_; }
  std::size_t vertex_index(const Labels& labels) const;
  Labels vertex_labels(std::size_t index) const;
  const std::vector<ProductEdge>& edges() const { return edges_; }
  std::size_t num_edges() const { return edges_.size(); }
  /// Edges whose tail is the given vertex.
  const std::vector<std::size_t>& edges_from(std::size_t vertex) const { return out_.at(vertex); }

 private:
  DoubledQuiver q_;
  int n_;
  std::size_t num_vertices_;
  std::vector<ProductEdge> edges_;
  std::vector<std::vector<std::size_t>> out_;
};

ProductQuiver product_quiver(const DoubledQuiver& q, int n);

/// Q with the edges in flip reversed (ids unchanged).
Quiver reorient(const Quiver& q, const std::set<int>& flip);

/// Isomorphism of doubled quivers compatible with the star involution
/// (brute force over vertex permutations).
bool isomorphic_doubles(const DoubledQuiver& a, const DoubledQuiver& b);

/// Isomorphism of the underlying undirected multigraphs of two quivers.
bool isomorphic_underlying_graphs(const Quiver& a, const Quiver& b);

}  // namespace wpa
