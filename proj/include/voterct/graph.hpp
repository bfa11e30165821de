#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace voterct {

namespace detail {

inline std::vector<std::vector<int>> adjacency_from_edges(
    int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(n);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

// Single-source BFS distances; unreachable vertices are left at -1.
inline void bfs(const std::vector<std::vector<int>>& adj, int source,
                std::vector<int>& out) {
  std::fill(out.begin(), out.end(), -1);
  out[source] = 0;
  std::deque<int> queue{source};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : adj[u]) {
      if (out[v] < 0) {
        out[v] = out[u] + 1;
        queue.push_back(v);
      }
    }
  }
}

}  // namespace detail

// Finite connected simple graph with a precomputed all-pairs distance matrix.
// Vertices are 0..F-1.  Construction fails on loops, duplicate edges and
// disconnected inputs; everything downstream can then rely on d(i,j) < inf.
class OpinionGraph {
 public:
  OpinionGraph(int vertex_count, std::vector<std::pair<int, int>> edges,
               std::string name = "custom")
      : n_(vertex_count), edges_(std::move(edges)), name_(std::move(name)) {
    if (n_ < 2) throw std::invalid_argument("graph needs at least 2 vertices");
    std::set<std::pair<int, int>> seen;
    for (auto& [u, v] : edges_) {
      if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw std::invalid_argument("edge endpoint out of range");
      if (u == v) throw std::invalid_argument("self-loop rejected");
      if (u > v) std::swap(u, v);
      if (!seen.insert({u, v}).second)
        throw std::invalid_argument("duplicate edge rejected");
    }
    adj_ = detail::adjacency_from_edges(n_, edges_);
    dist_.assign(static_cast<std::size_t>(n_) * n_, 0);
    std::vector<int> row(n_);
    for (int s = 0; s < n_; ++s) {
      detail::bfs(adj_, s, row);
      for (int t = 0; t < n_; ++t) {
        if (row[t] < 0) throw std::invalid_argument("graph is not connected");
        dist_[static_cast<std::size_t>(s) * n_ + t] =
            static_cast<std::uint16_t>(row[t]);
      }
    }
  }

  int vertex_count() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  const std::string& name() const { return name_; }

  int dist(int i, int j) const {
    return dist_[static_cast<std::size_t>(i) * n_ + j];
  }

  int eccentricity(int i) const {
    int ecc = 0;
    for (int j = 0; j < n_; ++j) ecc = std::max(ecc, dist(i, j));
    return ecc;
  }

  // (radius, diameter) = (min, max) eccentricity over all vertices.
  std::pair<int, int> eccentricity_profile() const {
    int radius = n_, diameter = 0;
    for (int i = 0; i < n_; ++i) {
      const int ecc = eccentricity(i);
      radius = std::min(radius, ecc);
      diameter = std::max(diameter, ecc);
    }
    return {radius, diameter};
  }

  int radius() const { return eccentricity_profile().first; }
  int diameter() const { return eccentricity_profile().second; }

  // Vertices within distance tau of every vertex; nonempty iff radius <= tau.
  std::vector<int> tau_center(int tau) const {
    if (tau < 0) throw std::invalid_argument("tau must be nonnegative");
    std::vector<int> center;
    for (int i = 0; i < n_; ++i)
      if (eccentricity(i) <= tau) center.push_back(i);
    return center;
  }

  // Number of ordered vertex pairs at distance exactly s.
  long pair_distance_count(int s) const {
    long count = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (dist(i, j) == s) ++count;
    return count;
  }

  // N(graph, s) for every s at once; one pass over the distance matrix.
  std::vector<long> distance_histogram() const {
    std::vector<long> counts(diameter() + 1, 0);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) ++counts[dist(i, j)];
    return counts;
  }

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::string name_;
  std::vector<std::vector<int>> adj_;
  std::vector<std::uint16_t> dist_;
};

// ---------------------------------------------------------------------------
// Named families
// ---------------------------------------------------------------------------

inline OpinionGraph path_graph(int f) {
  if (f < 2) throw std::invalid_argument("path needs F >= 2");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < f; ++i) edges.push_back({i, i + 1});
  return OpinionGraph(f, std::move(edges), "path(" + std::to_string(f) + ")");
}

inline OpinionGraph cycle_graph(int f) {
  if (f < 3) throw std::invalid_argument("cycle needs F >= 3");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < f; ++i) edges.push_back({i, (i + 1) % f});
  return OpinionGraph(f, std::move(edges), "cycle(" + std::to_string(f) + ")");
}

// b branches of length r glued at a hub (vertex 0); F = b*r + 1.
inline OpinionGraph star_graph(int b, int r) {
  if (b < 2 || r < 1) throw std::invalid_argument("star needs b >= 2, r >= 1");
  std::vector<std::pair<int, int>> edges;
  for (int branch = 0; branch < b; ++branch) {
    int prev = 0;
    for (int t = 0; t < r; ++t) {
      const int v = 1 + branch * r + t;
      edges.push_back({prev, v});
      prev = v;
    }
  }
  return OpinionGraph(b * r + 1, std::move(edges),
                      "star(" + std::to_string(b) + "," + std::to_string(r) + ")");
}

// Vertices are the 2^d binary words, adjacent when they differ in one bit.
inline OpinionGraph hypercube_graph(int d) {
  if (d < 1 || d > 20) throw std::invalid_argument("hypercube needs 1 <= d <= 20");
  const int f = 1 << d;
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < f; ++v)
    for (int bit = 0; bit < d; ++bit) {
      const int w = v ^ (1 << bit);
      if (v < w) edges.push_back({v, w});
    }
  return OpinionGraph(f, std::move(edges),
                      "hypercube(" + std::to_string(d) + ")");
}

inline OpinionGraph tetrahedron_graph() {
  return OpinionGraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}},
                      "tetrahedron");
}

inline OpinionGraph cube_graph() {
  auto g = hypercube_graph(3);
  return OpinionGraph(8, g.edges(), "cube");
}

// K_{2,2,2}: every vertex adjacent to all others except its antipode i+3.
inline OpinionGraph octahedron_graph() {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      if (j != i + 3) edges.push_back({i, j});
  return OpinionGraph(6, std::move(edges), "octahedron");
}

// Pentagonal antiprism (rings 1..5 and 6..10) capped by apexes 0 and 11.
inline OpinionGraph icosahedron_graph() {
  std::vector<std::pair<int, int>> edges;
  for (int k = 0; k < 5; ++k) {
    const int up = 1 + k, up_next = 1 + (k + 1) % 5;
    const int lo = 6 + k, lo_next = 6 + (k + 1) % 5;
    edges.push_back({0, up});
    edges.push_back({11, lo});
    edges.push_back({up, up_next});
    edges.push_back({lo, lo_next});
    edges.push_back({up, lo});
    edges.push_back({up, lo_next});
  }
  return OpinionGraph(12, std::move(edges), "icosahedron");
}

// Generalized Petersen graph GP(10,2): outer 10-cycle 0..9, spokes to 10..19,
// inner edges i -> i+2 forming two pentagons.
inline OpinionGraph dodecahedron_graph() {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 10; ++i) {
    edges.push_back({i, (i + 1) % 10});
    edges.push_back({i, 10 + i});
    edges.push_back({10 + i, 10 + (i + 2) % 10});
  }
  return OpinionGraph(20, std::move(edges), "dodecahedron");
}

struct GraphParams {
  int f = 0;      // path, cycle
  int b = 0;      // star branches
  int r = 0;      // star branch length
  int d_dim = 0;  // hypercube dimension
};

inline OpinionGraph build_named_graph(const std::string& family,
                                      const GraphParams& params) {
  if (family == "path") return path_graph(params.f);
  if (family == "cycle") return cycle_graph(params.f);
  if (family == "star") return star_graph(params.b, params.r);
  if (family == "hypercube") return hypercube_graph(params.d_dim);
  if (family == "tetrahedron") return tetrahedron_graph();
  if (family == "cube") return cube_graph();
  if (family == "octahedron") return octahedron_graph();
  if (family == "dodecahedron") return dodecahedron_graph();
  if (family == "icosahedron") return icosahedron_graph();
  throw std::invalid_argument("unknown graph family: " + family);
}

// ---------------------------------------------------------------------------
// Edge-list text format: one "u v" pair per line, 0-based ids, '#' comments.
// ---------------------------------------------------------------------------

inline std::vector<std::pair<int, int>> parse_edge_list(const std::string& text,
                                                        int* vertex_count) {
  std::vector<std::pair<int, int>> edges;
  int max_id = -1;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long u, v;
    std::string extra;
    if (!(fields >> u >> v) || (fields >> extra))
      throw std::invalid_argument("malformed edge line: " + line);
    if (u < 0 || v < 0) throw std::invalid_argument("negative vertex id");
    edges.push_back({static_cast<int>(u), static_cast<int>(v)});
    max_id = std::max(max_id, static_cast<int>(std::max(u, v)));
  }
  if (edges.empty()) throw std::invalid_argument("edge list is empty");
  *vertex_count = max_id + 1;
  return edges;
}

inline OpinionGraph load_graph(const std::string& edge_list_text) {
  int n = 0;
  auto edges = parse_edge_list(edge_list_text, &n);
  return OpinionGraph(n, std::move(edges));
}

// ---------------------------------------------------------------------------
// Spatial structure: a ring standing in for Z, or any finite connected graph.
// ---------------------------------------------------------------------------

class SpatialGraph {
 public:
  enum class Kind { Ring, General };

  static SpatialGraph ring(int length) {
    if (length < 3) throw std::invalid_argument("ring needs L >= 3");
    SpatialGraph g;
    g.kind_ = Kind::Ring;
    g.n_ = length;
    for (int x = 0; x < length; ++x) g.edges_.push_back({x, (x + 1) % length});
    g.adj_ = detail::adjacency_from_edges(length, g.edges_);
    return g;
  }

  static SpatialGraph complete(int n) {
    if (n < 2) throw std::invalid_argument("complete graph needs n >= 2");
    SpatialGraph g;
    g.kind_ = Kind::General;
    g.n_ = n;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) g.edges_.push_back({u, v});
    g.adj_ = detail::adjacency_from_edges(n, g.edges_);
    return g;
  }

  static SpatialGraph from_edge_list(const std::string& text) {
    // Reuse OpinionGraph validation (simple + connected), then rewrap.
    OpinionGraph checked = load_graph(text);
    SpatialGraph g;
    g.kind_ = Kind::General;
    g.n_ = checked.vertex_count();
    g.edges_ = checked.edges();
    g.adj_ = detail::adjacency_from_edges(g.n_, g.edges_);
    return g;
  }

  Kind kind() const { return kind_; }
  bool is_ring() const { return kind_ == Kind::Ring; }
  int vertex_count() const { return n_; }
  // For rings, edge x is (x, x+1 mod L).
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<std::vector<int>>& adjacency() const { return adj_; }

 private:
  SpatialGraph() = default;
  Kind kind_ = Kind::General;
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
};

}  // namespace voterct
