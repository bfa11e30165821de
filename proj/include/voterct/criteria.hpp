#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "voterct/graph.hpp"
#include "voterct/intersection.hpp"
#include "voterct/rational.hpp"

namespace voterct {

// Opinion graph + confidence threshold + initial densities.  Densities must
// be positive and sum to one; the uniform flag is detected, not declared.
struct ThresholdModel {
  OpinionGraph graph;
  int tau;
  std::vector<Rational> rho;
  bool uniform;

  ThresholdModel(OpinionGraph g, int threshold,
                 std::optional<std::vector<Rational>> densities = std::nullopt)
      : graph(std::move(g)), tau(threshold) {
    if (tau < 0) throw std::invalid_argument("tau must be nonnegative");
    const int f = graph.vertex_count();
    if (densities) {
      rho = std::move(*densities);
      if (static_cast<int>(rho.size()) != f)
        throw std::invalid_argument("density vector must have one entry per opinion");
      Rational total = 0;
      for (const auto& r : rho) {
        if (r <= 0)
          throw std::invalid_argument("all initial densities must be positive");
        total += r;
      }
      if (total != 1)
        throw std::invalid_argument("initial densities must sum to 1");
    } else {
      rho.assign(f, Rational(1, f));
    }
    const Rational unif(1, f);
    uniform = true;
    for (const auto& r : rho)
      if (r != unif) {
        uniform = false;
        break;
      }
  }
};

// ---------------------------------------------------------------------------
// Fluctuation condition
// ---------------------------------------------------------------------------

struct FluctuationEvidence {
  enum class Kind { None, RadiusTest, Partition };
  Kind kind = Kind::None;
  std::vector<int> v1, v2;

  bool found() const { return kind != Kind::None; }
};

// Looks for a nontrivial opinion partition {V1, V2} with every cross distance
// at most tau.  When radius <= tau the tau-center and its complement do the
// job.  Otherwise we search via the conflict graph that joins every pair at
// distance > tau: any valid partition must keep conflict edges inside one
// block, so a valid split exists iff the conflict graph is disconnected, and
// any union of components works.  (This reduction is ours, not taken from any
// reference; the test suite validates it against exhaustive bipartition
// search on all small built-in graphs.)
inline FluctuationEvidence fluctuation_report(const OpinionGraph& g, int tau) {
  if (tau < 0) throw std::invalid_argument("tau must be nonnegative");
  FluctuationEvidence out;
  const int n = g.vertex_count();
  if (g.radius() <= tau) {
    out.kind = FluctuationEvidence::Kind::RadiusTest;
    out.v1 = g.tau_center(tau);
    std::vector<char> in_center(n, 0);
    for (int v : out.v1) in_center[v] = 1;
    for (int v = 0; v < n; ++v)
      if (!in_center[v]) out.v2.push_back(v);
    return out;
  }

  // Union of conflict-graph components via a flat scan; graphs are small.
  std::vector<int> component(n, -1);
  int components = 0;
  for (int start = 0; start < n; ++start) {
    if (component[start] >= 0) continue;
    component[start] = components;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < n; ++v)
        if (g.dist(u, v) > tau && component[v] < 0) {
          component[v] = components;
          stack.push_back(v);
        }
    }
    ++components;
  }
  if (components < 2) return out;
  out.kind = FluctuationEvidence::Kind::Partition;
  for (int v = 0; v < n; ++v)
    (component[v] == 0 ? out.v1 : out.v2).push_back(v);
  return out;
}

// ---------------------------------------------------------------------------
// Fixation functionals
// ---------------------------------------------------------------------------

// Density mass on the tau-center; lower bound for the consensus probability.
inline Rational consensus_bound(const ThresholdModel& m) {
  Rational mass = 0;
  for (int j : m.graph.tau_center(m.tau)) mass += m.rho[j];
  return mass;
}

// sum_{i,j} rho_i rho_j (ceil(d(i,j)/tau) - 2) over pairs at distance >= 1.
// Densities are brought to a common denominator first so the O(F^2) inner
// loop runs on integers instead of normalizing rationals.
inline Rational expected_weight(const ThresholdModel& m) {
  if (m.tau < 1)
    throw std::invalid_argument("expected_weight needs tau >= 1 (pile order undefined)");
  const int n = m.graph.vertex_count();
  BigInt den = 1;
  for (const auto& r : m.rho)
    den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(r));
  std::vector<BigInt> weight(n);
  for (int i = 0; i < n; ++i)
    weight[i] = boost::multiprecision::numerator(m.rho[i]) *
                (den / boost::multiprecision::denominator(m.rho[i]));

  const int diameter = m.graph.diameter();
  std::vector<BigInt> mass_at_distance(diameter + 1, BigInt(0));
  std::vector<BigInt> row(diameter + 1);
  for (int i = 0; i < n; ++i) {
    std::fill(row.begin(), row.end(), BigInt(0));
    for (int j = 0; j < n; ++j) row[m.graph.dist(i, j)] += weight[j];
    for (int s = 1; s <= diameter; ++s) mass_at_distance[s] += weight[i] * row[s];
  }
  BigInt numerator = 0;
  for (int s = 1; s <= diameter; ++s)
    numerator += mass_at_distance[s] * (ceil_div(s, m.tau) - 2);
  return Rational(numerator, den * den);
}

// S(graph, tau) = sum_s (ceil(s/tau) - 2) N(graph, s); equals F^2 times the
// expected weight under uniform densities.
inline Rational s_general(const OpinionGraph& g, int tau) {
  if (tau < 1) throw std::invalid_argument("s_general needs tau >= 1");
  Rational total = 0;
  const auto counts = g.distance_histogram();
  for (int s = 1; s < static_cast<int>(counts.size()); ++s)
    total += Rational(counts[s]) * (ceil_div(s, tau) - 2);
  return total;
}

// ---------------------------------------------------------------------------
// Birth-death machinery for distance-regular opinion graphs
// ---------------------------------------------------------------------------

// Chain on states 1..M (M = ceil(diameter/tau)); state 1 absorbing, state n
// steps down with probability p[n] and up with probability q[n] (q[M] = 0).
struct BirthDeathSpec {
  int state_count = 1;
  std::vector<Rational> p;  // indexed 2..M
  std::vector<Rational> q;  // indexed 2..M, q[M] fixed to 0

  const Rational& down(int n) const { return p[n]; }
  const Rational& up(int n) const { return q[n]; }
};

// New-size distribution when an active pile of size s_minus jumps onto a pile
// of size s_plus: P(s) = p[s_minus][s][s_plus] / h(s_plus).
template <class Table>
std::vector<Rational> collision_distribution(const Table& t, int s_minus,
                                             int s_plus) {
  const int diameter = t.diameter();
  if (s_plus < 1 || s_plus > diameter)
    throw std::invalid_argument("s_plus must be in [1, diameter]");
  if (s_minus < 0 || s_minus > diameter)
    throw std::invalid_argument("s_minus must be in [0, diameter]");
  const BigInt h = t.sphere_size(s_plus);
  std::vector<Rational> law(diameter + 1, Rational(0));
  for (int s = 0; s <= diameter; ++s)
    law[s] = Rational(BigInt(t.count(s_minus, s, s_plus)), h);
  return law;
}

template <class Table>
BirthDeathSpec pq_coefficients(const Table& t, int tau) {
  if (tau < 1) throw std::invalid_argument("pq_coefficients needs tau >= 1");
  const int diameter = t.diameter();
  const int m = static_cast<int>(ceil_div(diameter, tau));
  BirthDeathSpec spec;
  spec.state_count = m;
  spec.p.assign(m + 1, Rational(0));
  spec.q.assign(m + 1, Rational(0));

  // Sum of the collision law over the piles of a given order; the accumulator
  // type follows the table (long for explicit graphs, BigInt for closed forms).
  using Count = decltype(t.count(0, 0, 0));
  auto block_mass = [&](int s_minus, int s_plus, int order) {
    Count total = 0;
    const int lo = (order - 1) * tau + 1;
    const int hi = std::min(order * tau, diameter);
    for (int s = lo; s <= hi; ++s) total += t.count(s_minus, s, s_plus);
    return total;
  };

  for (int n = 2; n <= m; ++n) {
    bool first = true;
    Rational worst_down = 0, worst_up = 0;
    for (int s_minus = 1; s_minus <= std::min(tau, diameter); ++s_minus) {
      const int plus_lo = (n - 1) * tau + 1;
      const int plus_hi = std::min(n * tau, diameter);
      for (int s_plus = plus_lo; s_plus <= plus_hi; ++s_plus) {
        const BigInt h = t.sphere_size(s_plus);
        const Rational down(BigInt(block_mass(s_minus, s_plus, n - 1)), h);
        const Rational up(BigInt(block_mass(s_minus, s_plus, n + 1)), h);
        if (first) {
          worst_down = down;
          worst_up = up;
          first = false;
        } else {
          if (down > worst_down) worst_down = down;
          if (up < worst_up) worst_up = up;
        }
      }
    }
    spec.p[n] = worst_down;
    spec.q[n] = (n < m) ? worst_up : Rational(0);
  }
  return spec;
}

// W(k) = -1 + sum_{1<n<=k} sigma_n where sigma_n is the expected passage time
// from n to n-1; empty sums are zero, so W(1) = -1.  Unavailable (infinite
// hitting time) when some down-step probability vanishes.
inline std::optional<std::vector<Rational>> w_weights(const BirthDeathSpec& bd) {
  const int m = bd.state_count;
  for (int n = 2; n <= m; ++n)
    if (bd.p[n] == 0) return std::nullopt;
  std::vector<Rational> sigma(m + 1, Rational(0));
  for (int n = m; n >= 2; --n) {
    // sigma_n = (1 + q_n * sigma_{n+1}) / p_n, with sigma_{M+1} = 0.
    Rational next = (n == m) ? Rational(0) : sigma[n + 1];
    sigma[n] = (Rational(1) + bd.q[n] * next) / bd.p[n];
  }
  std::vector<Rational> w(m + 1, Rational(0));
  w[1] = -1;
  for (int k = 2; k <= m; ++k) w[k] = w[k - 1] + sigma[k];
  w.erase(w.begin());  // 1-based values in slots 0..M-1
  return w;
}

// E(T_1 | X_0 = k) = 1 + W(k); zero when already absorbed.
inline std::optional<Rational> bd_hitting_expectation(const BirthDeathSpec& bd,
                                                      int k) {
  if (k < 1 || k > bd.state_count)
    throw std::invalid_argument("start state out of range");
  auto w = w_weights(bd);
  if (!w) return std::nullopt;
  return Rational(1) + (*w)[k - 1];
}

// S_reg(graph, tau) = sum_k W(k) sum_{s: ceil(s/tau)=k} h(s).
template <class Table>
Rational s_reg_given_weights(const Table& t, int tau,
                             const std::vector<Rational>& w) {
  const int diameter = t.diameter();
  const int m = static_cast<int>(w.size());
  Rational total = 0;
  for (int k = 1; k <= m; ++k) {
    BigInt block = 0;
    const int lo = (k - 1) * tau + 1;
    const int hi = std::min(k * tau, diameter);
    for (int s = lo; s <= hi; ++s) block += t.sphere_size(s);
    total += w[k - 1] * Rational(block);
  }
  return total;
}

template <class Table>
std::optional<Rational> s_reg_from_table(const Table& t, int tau) {
  if (tau < 1) throw std::invalid_argument("s_reg needs tau >= 1");
  const auto w = w_weights(pq_coefficients(t, tau));
  if (!w) return std::nullopt;
  return s_reg_given_weights(t, tau, *w);
}

inline std::optional<Rational> s_reg(const OpinionGraph& g, int tau) {
  const auto table = check_distance_regular(g);
  if (!table) throw std::invalid_argument("graph is not distance-regular");
  return s_reg_from_table(*table, tau);
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

enum class Verdict { FluctuatesAndClusters, Fixates, Unknown };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::FluctuatesAndClusters: return "Fluctuates&Clusters";
    case Verdict::Fixates: return "Fixates";
    default: return "Unknown";
  }
}

struct CriteriaReport {
  std::string graph_name;
  int opinion_count = 0;
  int radius = 0;
  int diameter = 0;
  int tau = 0;
  bool uniform = false;
  std::vector<int> center;
  Rational rho_cent;
  FluctuationEvidence fluctuation;
  std::optional<Rational> expected_weight_value;
  std::optional<Rational> s_value;
  bool distance_regular = false;
  std::optional<BirthDeathSpec> bd;
  std::optional<std::vector<Rational>> w;
  std::optional<Rational> s_reg_value;
  bool fixates_for_some_densities = false;
  Verdict verdict = Verdict::Unknown;
  std::string verdict_reason;
};

// Runs every criterion on the model and aggregates the evidence.  Fluctuation
// evidence takes precedence; the S / S_reg verdicts require uniform densities;
// with non-uniform densities a positive expected weight still decides.
// `known_table` skips the distance-regularity scan when the caller already
// has the answer (sweeps over many thresholds of one graph).
inline CriteriaReport classify(
    const ThresholdModel& m,
    const std::optional<IntersectionTable>* known_table = nullptr) {
  const OpinionGraph& g = m.graph;
  CriteriaReport rep;
  rep.graph_name = g.name();
  rep.opinion_count = g.vertex_count();
  const auto [radius, diameter] = g.eccentricity_profile();
  rep.radius = radius;
  rep.diameter = diameter;
  rep.tau = m.tau;
  rep.uniform = m.uniform;
  rep.center = g.tau_center(m.tau);
  rep.rho_cent = consensus_bound(m);
  rep.fixates_for_some_densities = diameter > 2 * m.tau;

  if (m.tau == 0) {
    // No interaction ever crosses a zero threshold; every site keeps its
    // initial opinion, which is fixation in the trivial sense.
    rep.verdict = Verdict::Fixates;
    rep.verdict_reason = "tau = 0: all piles frozen from the start";
    return rep;
  }

  rep.fluctuation = fluctuation_report(g, m.tau);
  rep.s_value = s_general(g, m.tau);
  // Uniform densities: the expected weight is exactly S / F^2.
  rep.expected_weight_value =
      m.uniform ? *rep.s_value / (Rational(g.vertex_count()) * g.vertex_count())
                : expected_weight(m);
  const auto table = known_table ? *known_table : check_distance_regular(g);
  if (table) {
    rep.distance_regular = true;
    rep.bd = pq_coefficients(*table, m.tau);
    rep.w = w_weights(*rep.bd);
    if (rep.w) rep.s_reg_value = s_reg_given_weights(*table, m.tau, *rep.w);
  }

  if (rep.fluctuation.found()) {
    rep.verdict = Verdict::FluctuatesAndClusters;
    rep.verdict_reason = rep.fluctuation.kind == FluctuationEvidence::Kind::RadiusTest
                             ? "radius <= tau: tau-center vs boundary partition"
                             : "explicit partition with all cross distances <= tau";
    return rep;
  }
  if (m.uniform) {
    if (*rep.s_value > 0) {
      rep.verdict = Verdict::Fixates;
      rep.verdict_reason = "S(graph, tau) > 0";
      return rep;
    }
    if (rep.s_reg_value && *rep.s_reg_value > 0) {
      rep.verdict = Verdict::Fixates;
      rep.verdict_reason = "S_reg(graph, tau) > 0";
      return rep;
    }
  } else if (*rep.expected_weight_value > 0) {
    rep.verdict = Verdict::Fixates;
    rep.verdict_reason = "expected pile weight > 0";
    return rep;
  }
  rep.verdict = Verdict::Unknown;
  rep.verdict_reason = "no criterion fired";
  return rep;
}

}  // namespace voterct
