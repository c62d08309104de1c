#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "coexsim/engine.hpp"

namespace coexsim {

struct collision_tally {
  long slot = 0;
  std::vector<collision_event> events;
  int total() const { return static_cast<int>(events.size()); }
};

/// Recounts collisions for one slot from the recorded masks, footprints,
/// corrected carriers and UE draws. A (sector, satellite, PRB, direction)
/// tuple collides when the corrected carrier occupies the PRB, the PRB is
/// actively transmitted, and the transmitter sits under the satellite: for
/// the downlink the footprint must overlap the sector's service region, for
/// the uplink the transmitting UE itself must be inside the footprint.
collision_tally count_collisions(const slot_record& rec, const tessellation& tess, const scenario& sc);

/// Maximal runs of slots within `wc` slots of any collision in the baseline
/// run, annotated with the sectors and satellites that collided there.
struct window_segment {
  long first = 0;
  long last = 0;                              // inclusive
  std::array<std::vector<int>, 2> sectors;    // per direction
  std::vector<int> satellite_ids;
};

std::vector<window_segment> collision_windows(const run_result& epa_run, long wc_slots);

struct sum_rate_sample {
  long slot = 0;
  link_direction direction = link_direction::downlink;
  double value_bits = 0.0;
};

/// Sum-rate capacity samples inside the given windows: per slot and
/// direction, the summed rate over the windows' affected sectors' scheduled
/// non-blanked PRBs. A sector that collides in that slot and direction is in
/// outage and contributes zero; blanked and unscheduled PRBs contribute zero.
std::vector<sum_rate_sample> sum_rate(const run_result& run, const std::vector<window_segment>& windows,
                                      const scenario& sc);

class empirical_cdf {
public:
  explicit empirical_cdf(std::vector<double> samples);

  /// Right-continuous step function P(X <= w).
  double value(double w) const;

  /// Smallest sample w with F(w) >= p.
  double quantile(double p) const;

  const std::vector<double>& sorted_samples() const { return sorted_; }

private:
  std::vector<double> sorted_;
};

struct summary_cell {
  double mean = 0.0;
  double std_error = 0.0;
  int n_seeds = 0;
};

/// (policy, seed, utilization, total collisions) per run.
using run_total = std::tuple<std::string, std::uint64_t, double, long>;

/// Mean and standard error of per-run collision totals per (policy,
/// utilization) cell; throws when the policies' (seed, utilization) grids
/// differ.
std::map<std::pair<std::string, double>, summary_cell> collision_summary(const std::vector<run_total>& runs);

} // namespace coexsim
