#pragma once

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <functional>
#include <thread>
#include <vector>

#include "voterct/criteria.hpp"
#include "voterct/dynamics.hpp"
#include "voterct/rng.hpp"

namespace voterct {

struct Estimate {
  double mean = 0;
  double standard_error = 0;
  int replica_count = 0;
  std::uint64_t seed = 0;
};

inline Estimate summarize(const std::vector<double>& values, std::uint64_t seed) {
  if (values.size() < 2)
    throw std::invalid_argument("need at least 2 replicas for an estimate");
  const int n = static_cast<int>(values.size());
  double sum = 0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  double ss = 0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1));
  return {mean, sd / std::sqrt(static_cast<double>(n)), n, seed};
}

// Runs one job per replica index on a small thread pool; results land in a
// vector slot keyed by replica, so the reduction order never depends on
// scheduling.
template <class T>
std::vector<T> run_replicas(int replicas, const std::function<T(int)>& job,
                            unsigned max_threads = 0) {
  std::vector<T> results(replicas);
  unsigned workers = max_threads ? max_threads : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min({workers, 8u, static_cast<unsigned>(replicas)}));
  if (workers == 1) {
    for (int r = 0; r < replicas; ++r) results[r] = job(r);
    return results;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int r = static_cast<int>(w); r < replicas; r += workers)
        results[r] = job(r);
    });
  for (auto& t : pool) t.join();
  return results;
}

// ---------------------------------------------------------------------------
// Consensus probability
// ---------------------------------------------------------------------------

struct ConsensusEstimate : Estimate {
  int absorbed_count = 0;
  Rational rho_cent;
  bool within_band = false;  // mean >= rho_cent - 3 SE
};

inline ConsensusEstimate estimate_consensus_probability(
    const ThresholdModel& m, const SpatialGraph& spatial, int replicas,
    std::uint64_t seed, long event_cap = 100000000L) {
  if (replicas < 2) throw std::invalid_argument("need at least 2 replicas");
  struct Outcome {
    bool absorbed = false;
    bool consensus = false;
  };
  const auto outcomes = run_replicas<Outcome>(replicas, [&](int r) {
    const auto result = run_to_absorption(m, spatial, seed, r, event_cap);
    return Outcome{result.absorbed, result.consensus};
  });
  std::vector<double> values;
  values.reserve(replicas);
  int absorbed = 0;
  for (const auto& o : outcomes) {
    values.push_back(o.consensus ? 1.0 : 0.0);
    if (o.absorbed) ++absorbed;
  }
  ConsensusEstimate estimate;
  static_cast<Estimate&>(estimate) = summarize(values, seed);
  estimate.absorbed_count = absorbed;
  estimate.rho_cent = consensus_bound(m);
  estimate.within_band =
      estimate.mean >=
      static_cast<double>(estimate.rho_cent) - 3 * estimate.standard_error;
  return estimate;
}

// ---------------------------------------------------------------------------
// Birth-death chain Monte Carlo (independent oracle for the W weights)
// ---------------------------------------------------------------------------

inline Estimate bd_simulate(const BirthDeathSpec& bd, int start, int replicas,
                            std::uint64_t seed) {
  if (start < 1 || start > bd.state_count)
    throw std::invalid_argument("start state out of range");
  if (replicas < 2) throw std::invalid_argument("need at least 2 replicas");
  const int m = bd.state_count;
  std::vector<double> down(m + 1, 0), up(m + 1, 0);
  for (int n = 2; n <= m; ++n) {
    down[n] = static_cast<double>(bd.p[n]);
    up[n] = static_cast<double>(bd.q[n]);
    if (down[n] == 0)
      throw std::invalid_argument("hitting time is infinite when some p_n = 0");
  }
  const auto steps = run_replicas<double>(replicas, [&](int r) {
    auto rng = replica_stream(seed, r);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int state = start;
    long count = 0;
    while (state > 1) {
      const double u = unit(rng);
      ++count;
      if (u < down[state]) --state;
      else if (u < down[state] + up[state]) ++state;
    }
    return static_cast<double>(count);
  });
  return summarize(steps, seed);
}

// ---------------------------------------------------------------------------
// Initial edge-type frequencies on a segment
// ---------------------------------------------------------------------------

struct EdgeTypeTable {
  int segment_length = 0;
  std::vector<std::vector<long>> counts;     // counts[i][j] of edges i -> j
  std::vector<std::vector<double>> expected; // N rho_i rho_j
  std::vector<std::vector<double>> z;        // against binomial-scale sigma

  // All off-diagonal entries within sigma_band standard deviations.
  bool within_band(double sigma_band) const {
    for (std::size_t i = 0; i < z.size(); ++i)
      for (std::size_t j = 0; j < z.size(); ++j)
        if (i != j && std::abs(z[i][j]) > sigma_band) return false;
    return true;
  }
};

inline EdgeTypeTable edge_type_frequencies(const ThresholdModel& m, int segment,
                                           std::uint64_t seed) {
  if (segment < 100) throw std::invalid_argument("segment too short (need N >= 100)");
  const int f = m.graph.vertex_count();
  auto rng = replica_stream(seed, 0);
  // N+1 iid sites form a segment with N directed edges.
  std::vector<int> sites(segment + 1);
  if (m.uniform) {
    std::uniform_int_distribution<int> pick(0, f - 1);
    for (auto& s : sites) s = pick(rng);
  } else {
    std::vector<double> cumulative(f);
    double acc = 0;
    for (int j = 0; j < f; ++j) {
      acc += static_cast<double>(m.rho[j]);
      cumulative[j] = acc;
    }
    cumulative[f - 1] = 1.0;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto& s : sites)
      s = static_cast<int>(
          std::lower_bound(cumulative.begin(), cumulative.end(), unit(rng)) -
          cumulative.begin());
  }
  EdgeTypeTable table;
  table.segment_length = segment;
  table.counts.assign(f, std::vector<long>(f, 0));
  table.expected.assign(f, std::vector<double>(f, 0));
  table.z.assign(f, std::vector<double>(f, 0));
  for (int x = 0; x < segment; ++x) ++table.counts[sites[x]][sites[x + 1]];
  for (int i = 0; i < f; ++i)
    for (int j = 0; j < f; ++j) {
      const double p = static_cast<double>(m.rho[i]) * static_cast<double>(m.rho[j]);
      table.expected[i][j] = segment * p;
      const double sigma = std::sqrt(segment * p * (1 - p));
      table.z[i][j] = (table.counts[i][j] - table.expected[i][j]) / sigma;
    }
  return table;
}

// ---------------------------------------------------------------------------
// Chi-square goodness of fit against an exact collision law
// ---------------------------------------------------------------------------

struct ChiSquareResult {
  double statistic = 0;
  int degrees_of_freedom = 0;
  double p_value = 0;
  long sample_count = 0;
};

// observed[s] = number of samples with value s; predicted[s] from the exact
// law.  Cells with expected count below 5 are pooled into their neighbor.
inline ChiSquareResult collision_chi_square(const std::vector<long>& observed,
                                            const std::vector<Rational>& predicted) {
  if (observed.size() != predicted.size())
    throw std::invalid_argument("observed/predicted size mismatch");
  long total = 0;
  for (long c : observed) total += c;
  if (total == 0) throw std::invalid_argument("no samples");

  // Mass outside the predicted support is an immediate rejection.
  for (std::size_t s = 0; s < observed.size(); ++s)
    if (observed[s] > 0 && predicted[s] == 0)
      return {std::numeric_limits<double>::infinity(), 1, 0.0, total};

  std::vector<std::pair<double, long>> cells;  // (expected, observed)
  for (std::size_t s = 0; s < observed.size(); ++s)
    if (predicted[s] > 0)
      cells.push_back({static_cast<double>(predicted[s]) * total, observed[s]});
  // Pool small-expectation cells left to right.
  std::vector<std::pair<double, long>> pooled;
  for (const auto& cell : cells) {
    if (!pooled.empty() && pooled.back().first < 5.0) {
      pooled.back().first += cell.first;
      pooled.back().second += cell.second;
    } else {
      pooled.push_back(cell);
    }
  }
  if (pooled.size() >= 2 && pooled.back().first < 5.0) {
    pooled[pooled.size() - 2].first += pooled.back().first;
    pooled[pooled.size() - 2].second += pooled.back().second;
    pooled.pop_back();
  }
  if (pooled.size() < 2)
    throw std::invalid_argument("insufficient samples after pooling");

  double statistic = 0;
  for (const auto& [expected, observed_count] : pooled) {
    const double delta = observed_count - expected;
    statistic += delta * delta / expected;
  }
  const int df = static_cast<int>(pooled.size()) - 1;
  const double p = boost::math::gamma_q(df / 2.0, statistic / 2.0);
  return {statistic, df, p, total};
}

}  // namespace voterct
