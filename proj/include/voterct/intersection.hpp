#pragma once

#include <optional>
#include <vector>

#include "voterct/graph.hpp"
#include "voterct/rational.hpp"

namespace voterct {

// Intersection numbers of a distance-regular graph.
//
//   p[c][a][b] = #{ w : d(u,w) = a and d(v,w) = b }   for any pair d(u,v) = c
//   h[s]       = #{ w : d(u,w) = s }                  for any vertex u
//
// The stored convention is always (condition distance, first sphere, second
// sphere); callers never deal with the ambiguity of other argument orders.
class IntersectionTable {
 public:
  IntersectionTable(int diameter, std::vector<long> sphere_sizes,
                    std::vector<long> p_flat)
      : d_(diameter), h_(std::move(sphere_sizes)), p_(std::move(p_flat)) {}

  int diameter() const { return d_; }

  BigInt sphere_size(int s) const {
    if (s < 0 || s > d_) return 0;
    return h_[s];
  }

  long count(int c, int a, int b) const {
    if (c < 0 || a < 0 || b < 0 || c > d_ || a > d_ || b > d_) return 0;
    return p_[(static_cast<std::size_t>(c) * (d_ + 1) + a) * (d_ + 1) + b];
  }

 private:
  int d_;
  std::vector<long> h_;
  std::vector<long> p_;
};

// Tests whether g is distance-regular; returns its intersection table if so.
//
// The check verifies that every vertex v at distance c from u has the same
// number of neighbors at distance c-1 and c+1 from u, over all ordered pairs
// (u, v).  Constancy of these counts is the defining property and already
// determines every p[c][a][b], so the table itself is filled in from one
// representative pair per distance.
inline std::optional<IntersectionTable> check_distance_regular(
    const OpinionGraph& g) {
  const int n = g.vertex_count();
  const int diameter = g.diameter();
  std::vector<long> ref_down(diameter + 1, -1), ref_up(diameter + 1, -1);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      const int c = g.dist(u, v);
      long down = 0, up = 0;
      for (int w : g.neighbors(v)) {
        const int dw = g.dist(u, w);
        if (dw == c - 1) ++down;
        else if (dw == c + 1) ++up;
      }
      if (ref_down[c] < 0) {
        ref_down[c] = down;
        ref_up[c] = up;
      } else if (ref_down[c] != down || ref_up[c] != up) {
        return std::nullopt;
      }
    }
  }

  const int stride = diameter + 1;
  std::vector<long> h(stride, 0);
  for (int w = 0; w < n; ++w) ++h[g.dist(0, w)];
  std::vector<long> p(static_cast<std::size_t>(stride) * stride * stride, 0);
  for (int c = 0; c <= diameter; ++c) {
    int v = -1;
    for (int cand = 0; cand < n; ++cand)
      if (g.dist(0, cand) == c) {
        v = cand;
        break;
      }
    for (int w = 0; w < n; ++w) {
      const int a = g.dist(0, w), b = g.dist(v, w);
      ++p[(static_cast<std::size_t>(c) * stride + a) * stride + b];
    }
  }
  return IntersectionTable(diameter, std::move(h), std::move(p));
}

// Closed-form intersection numbers of the d-dimensional hypercube, usable for
// dimensions far beyond what an explicit 2^d-vertex graph allows.  A vertex at
// distance a from u and b from v (with d(u,v) = c) flips x = (a-b+c)/2 of the
// c coordinates where u,v differ and y = (a+b-c)/2 of the rest.
class HypercubeTable {
 public:
  explicit HypercubeTable(int d) : d_(d) {}

  int diameter() const { return d_; }

  BigInt sphere_size(int s) const { return binomial(d_, s); }

  BigInt count(int c, int a, int b) const {
    if (c < 0 || a < 0 || b < 0 || c > d_ || a > d_ || b > d_) return 0;
    if ((a - b + c) % 2 != 0) return 0;
    const long x = (a - b + c) / 2, y = (a + b - c) / 2;
    if (x < 0 || x > c || y < 0 || y > d_ - c) return 0;
    return binomial(c, x) * binomial(d_ - c, y);
  }

 private:
  int d_;
};

}  // namespace voterct
