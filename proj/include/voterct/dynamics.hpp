#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "voterct/criteria.hpp"
#include "voterct/graph.hpp"
#include "voterct/rng.hpp"

namespace voterct {

// Opinion assignment on a spatial graph.
struct Configuration {
  const SpatialGraph* spatial = nullptr;
  std::vector<int> opinions;
};

// Edge-wise opinion distances on a ring; derived from a Configuration, never
// mutated independently.  Piles with 0 < size <= tau are active, larger ones
// frozen.
struct PileState {
  std::vector<int> sizes;

  long total() const {
    long sum = 0;
    for (int s : sizes) sum += s;
    return sum;
  }
};

inline Configuration sample_initial(const ThresholdModel& m,
                                    const SpatialGraph& spatial,
                                    std::mt19937_64& rng) {
  Configuration config;
  config.spatial = &spatial;
  config.opinions.resize(spatial.vertex_count());
  const int f = m.graph.vertex_count();
  if (m.uniform) {
    std::uniform_int_distribution<int> pick(0, f - 1);
    for (auto& opinion : config.opinions) opinion = pick(rng);
    return config;
  }
  std::vector<double> cumulative(f);
  double acc = 0;
  for (int j = 0; j < f; ++j) {
    acc += static_cast<double>(m.rho[j]);
    cumulative[j] = acc;
  }
  cumulative[f - 1] = 1.0;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (auto& opinion : config.opinions) {
    const double u = unit(rng);
    opinion = static_cast<int>(
        std::lower_bound(cumulative.begin(), cumulative.end(), u) -
        cumulative.begin());
  }
  return config;
}

inline Configuration sample_initial(const ThresholdModel& m,
                                    const SpatialGraph& spatial,
                                    std::uint64_t seed,
                                    std::uint64_t replica = 0) {
  auto rng = replica_stream(seed, replica);
  return sample_initial(m, spatial, rng);
}

inline PileState pile_profile(const OpinionGraph& opinion_graph,
                              const Configuration& config) {
  if (!config.spatial || !config.spatial->is_ring())
    throw std::invalid_argument("pile profile is defined on rings only");
  const int length = config.spatial->vertex_count();
  PileState piles;
  piles.sizes.resize(length);
  for (int x = 0; x < length; ++x)
    piles.sizes[x] = opinion_graph.dist(config.opinions[x],
                                        config.opinions[(x + 1) % length]);
  return piles;
}

struct CollisionSample {
  int s_minus = 0;
  int s_plus = 0;
  int s = 0;
};

struct EventRecord {
  bool flipped = false;
  int site = -1;    // vertex that updated
  int source = -1;  // neighbor it copied
  // Ring bookkeeping; only meaningful when flipped on a ring.
  int crossing_edge = -1;
  int other_edge = -1;
  int s_minus = 0;  // size of the jumping pile
  int s_plus = 0;   // size of the pile it lands on
  int s_new = 0;    // size after the collision
};

// Continuous-time dynamics: every ordered neighbor pair (y -> x) fires at
// rate one and x adopts y's opinion iff their opinion distance is <= tau.
// One global exponential clock at rate 2|E| with a uniformly chosen arrow is
// distributionally the same as independent unit-rate arrow clocks.
class OpinionProcess {
 public:
  OpinionProcess(const ThresholdModel& model, const SpatialGraph& spatial,
                 Configuration initial, std::mt19937_64 rng)
      : model_(&model),
        spatial_(&spatial),
        state_(std::move(initial.opinions)),
        rng_(std::move(rng)) {
    if (static_cast<int>(state_.size()) != spatial.vertex_count())
      throw std::invalid_argument("configuration does not match spatial graph");
    for (int opinion : state_)
      if (opinion < 0 || opinion >= model.graph.vertex_count())
        throw std::invalid_argument("configuration holds an invalid opinion id");
    const auto& edges = spatial.edges();
    edge_dist_.resize(edges.size());
    incident_.resize(spatial.vertex_count());
    for (std::size_t e = 0; e < edges.size(); ++e) {
      incident_[edges[e].first].push_back(static_cast<int>(e));
      incident_[edges[e].second].push_back(static_cast<int>(e));
    }
    flips_.assign(spatial.vertex_count(), 0);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      edge_dist_[e] = opinion_dist_edge(static_cast<int>(e));
      account(edge_dist_[e], +1);
    }
    arrow_pick_ = std::uniform_int_distribution<int>(
        0, static_cast<int>(2 * edges.size()) - 1);
    wait_ = std::exponential_distribution<double>(
        static_cast<double>(2 * edges.size()));
  }

  OpinionProcess(const ThresholdModel& model, const SpatialGraph& spatial,
                 std::uint64_t seed, std::uint64_t replica = 0)
      : OpinionProcess(model, spatial,
                       sample_initial(model, spatial, seed, replica),
                       replica_stream(seed, replica ^ 0x5DEECE66Dull)) {}

  // Time of the pending firing; drawn lazily so callers can stop cleanly at a
  // horizon without applying events that fall beyond it.
  double next_event_time() {
    if (!pending_drawn_) {
      pending_time_ = time_ + wait_(rng_);
      pending_drawn_ = true;
    }
    return pending_time_;
  }

  EventRecord step() {
    time_ = next_event_time();
    pending_drawn_ = false;
    ++events_;
    const int arrow = arrow_pick_(rng_);
    const int edge = arrow >> 1;
    const auto [a, b] = spatial_->edges()[edge];
    const int source = (arrow & 1) ? b : a;
    const int site = (arrow & 1) ? a : b;

    EventRecord record;
    record.site = site;
    record.source = source;
    const int gap = edge_dist_[edge];
    if (gap == 0 || gap > model_->tau) return record;  // inactive arrow

    record.flipped = true;
    state_[site] = state_[source];
    ++flips_[site];
    if (spatial_->is_ring()) {
      // Exactly two incident edges; the pile crosses one and lands on the other.
      const int e0 = incident_[site][0], e1 = incident_[site][1];
      record.crossing_edge = edge;
      record.other_edge = (e0 == edge) ? e1 : e0;
      record.s_minus = gap;
      record.s_plus = edge_dist_[record.other_edge];
      update_edge(record.crossing_edge);
      update_edge(record.other_edge);
      record.s_new = edge_dist_[record.other_edge];
    } else {
      for (int e : incident_[site]) update_edge(e);
    }
    return record;
  }

  double time() const { return time_; }
  long events() const { return events_; }
  const std::vector<int>& state() const { return state_; }
  const std::vector<long>& flips() const { return flips_; }
  const std::vector<int>& edge_distances() const { return edge_dist_; }
  long total_pile() const { return total_pile_; }
  long active_edges() const { return active_edges_; }
  long frozen_edges() const { return frozen_edges_; }
  long nonzero_edges() const { return nonzero_edges_; }
  bool absorbed() const { return active_edges_ == 0; }
  bool consensus() const { return nonzero_edges_ == 0; }

  double mean_pile() const {
    return static_cast<double>(total_pile_) / edge_dist_.size();
  }
  double frozen_fraction() const {
    return static_cast<double>(frozen_edges_) / edge_dist_.size();
  }

  Configuration configuration() const {
    Configuration config;
    config.spatial = spatial_;
    config.opinions = state_;
    return config;
  }

 private:
  int opinion_dist_edge(int e) const {
    const auto [u, v] = spatial_->edges()[e];
    return model_->graph.dist(state_[u], state_[v]);
  }

  void account(int dist, int sign) {
    total_pile_ += sign * dist;
    if (dist > 0) {
      nonzero_edges_ += sign;
      if (dist <= model_->tau) active_edges_ += sign;
      else frozen_edges_ += sign;
    }
  }

  void update_edge(int e) {
    account(edge_dist_[e], -1);
    edge_dist_[e] = opinion_dist_edge(e);
    account(edge_dist_[e], +1);
  }

  const ThresholdModel* model_;
  const SpatialGraph* spatial_;
  std::vector<int> state_;
  std::vector<int> edge_dist_;
  std::vector<std::vector<int>> incident_;
  std::vector<long> flips_;
  long total_pile_ = 0;
  long active_edges_ = 0;
  long frozen_edges_ = 0;
  long nonzero_edges_ = 0;
  double time_ = 0;
  double pending_time_ = 0;
  bool pending_drawn_ = false;
  long events_ = 0;
  std::mt19937_64 rng_;
  std::uniform_int_distribution<int> arrow_pick_;
  std::exponential_distribution<double> wait_;
};

// ---------------------------------------------------------------------------
// Trajectory statistics
// ---------------------------------------------------------------------------

struct TrajectorySample {
  double time = 0;
  double mean_pile = 0;
  double frozen_fraction = 0;
  long flips = 0;
};

struct TrajectoryStats {
  std::vector<long> flips_per_site;
  std::vector<TrajectorySample> series;
  std::vector<CollisionSample> collisions;
  double final_time = 0;
  double final_mean_pile = 0;
  double final_frozen_fraction = 0;
  double quiet_fraction = 0;  // sites with no flip during the second half
};

struct TrajectoryOptions {
  int sample_points = 100;
  bool record_collisions = false;
};

inline TrajectoryStats run_trajectory(const ThresholdModel& m,
                                      const SpatialGraph& spatial,
                                      double horizon, std::uint64_t seed,
                                      std::uint64_t replica = 0,
                                      TrajectoryOptions options = {}) {
  if (horizon <= 0) throw std::invalid_argument("horizon must be positive");
  OpinionProcess process(m, spatial, seed, replica);
  TrajectoryStats stats;
  const int points = std::max(1, options.sample_points);
  const double dt = horizon / points;
  long flips_total = 0;
  std::vector<long> flips_at_halftime;
  int next_sample = 1;

  auto snapshot = [&](double at) {
    stats.series.push_back({at, process.mean_pile(), process.frozen_fraction(),
                            flips_total});
  };
  snapshot(0.0);

  const bool ring = spatial.is_ring();
  bool halftime_taken = false;
  while (true) {
    const double t_next = process.next_event_time();
    while (next_sample <= points && next_sample * dt < t_next) {
      snapshot(next_sample * dt);
      ++next_sample;
    }
    if (!halftime_taken && horizon / 2 < t_next) {
      flips_at_halftime = process.flips();
      halftime_taken = true;
    }
    if (t_next > horizon) break;
    const auto event = process.step();
    if (event.flipped) {
      ++flips_total;
      if (ring && options.record_collisions && event.s_plus > 0)
        stats.collisions.push_back({event.s_minus, event.s_plus, event.s_new});
    }
  }
  stats.flips_per_site = process.flips();
  stats.final_time = horizon;
  stats.final_mean_pile = process.mean_pile();
  stats.final_frozen_fraction = process.frozen_fraction();
  long quiet = 0;
  for (std::size_t x = 0; x < stats.flips_per_site.size(); ++x)
    if (stats.flips_per_site[x] == flips_at_halftime[x]) ++quiet;
  stats.quiet_fraction = static_cast<double>(quiet) / stats.flips_per_site.size();
  return stats;
}

// ---------------------------------------------------------------------------
// Absorption
// ---------------------------------------------------------------------------

struct AbsorptionResult {
  bool absorbed = false;
  bool consensus = false;
  long events_used = 0;
  std::vector<int> final_state;
};

// Runs until no edge carries an active pile (every spatial edge at opinion
// distance 0 or > tau) or until the event cap is hit.
inline AbsorptionResult run_to_absorption(const ThresholdModel& m,
                                          const SpatialGraph& spatial,
                                          std::uint64_t seed,
                                          std::uint64_t replica = 0,
                                          long event_cap = 100000000L) {
  OpinionProcess process(m, spatial, seed, replica);
  AbsorptionResult result;
  while (!process.absorbed() && process.events() < event_cap) process.step();
  result.absorbed = process.absorbed();
  result.consensus = process.absorbed() && process.consensus();
  result.events_used = process.events();
  result.final_state = process.state();
  return result;
}

}  // namespace voterct
