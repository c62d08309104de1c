#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "coexsim/geometry.hpp"
#include "coexsim/orbit.hpp"
#include "coexsim/radio.hpp"
#include "coexsim/rng.hpp"
#include "coexsim/scenario.hpp"
#include "coexsim/spectrum.hpp"

namespace coexsim {

enum class sim_policy { proposed, epa };

inline const char* to_string(sim_policy p) { return p == sim_policy::proposed ? "proposed" : "epa"; }

/// Thrown when the simulation detects a broken internal invariant.
class invariant_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Bit set over 1-based PRB numbers.
class prb_mask {
public:
  prb_mask() = default;
  explicit prb_mask(int n_prb);

  int size() const { return n_; }
  bool test(int k) const;
  void set(int k);
  void clear(int k);
  int count() const;
  bool intersects(const prb_mask& other) const;
  std::vector<int> to_list() const;

private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

enum class blank_kind { blank, unblank };

inline const char* to_string(blank_kind k) { return k == blank_kind::blank ? "blank" : "unblank"; }

struct blanking_action {
  long slot = 0;
  int sector = 0;
  link_direction direction = link_direction::downlink;
  int prb = 0;
  blank_kind action = blank_kind::blank;
  int cause_satellite = -1; // satellite id, -1 = overlap cleared
};

struct ue_sample {
  plane_point pos;
  int home_sector = 0;    // sector whose service area the UE was drawn in
  int serving_sector = 0; // sector it associated with
};

struct prb_rate_sample {
  int prb = 0;
  double sinr = 0.0;
  double rate_bits = 0.0; // bits per channel use
};

struct dir_record {
  prb_mask scheduled;
  prb_mask blanked;
  std::vector<std::int32_t> prb_ue;   // [n_prb + 1], UE index or -1
  std::vector<prb_rate_sample> rates; // scheduled PRBs of non-outaged sectors
};

struct collision_event {
  int sector = 0;
  int satellite_id = 0;
  int prb = 0;
  link_direction direction = link_direction::downlink;
};

struct sector_record {
  std::array<dir_record, 2> dir;
};

struct slot_record {
  long slot = 0;
  std::array<bool, 2> direction_active{false, false};
  std::vector<sector_record> sectors;
  std::vector<std::uint8_t> sat_in_zone;
  std::vector<satellite_footprint> footprints;                // valid when in zone
  std::vector<double> sat_altitude_m;                         // valid when in zone
  std::vector<std::vector<std::vector<double>>> corrected_hz; // [sat][carrier][sector]
  std::vector<ue_sample> ues;                                 // home-sector major
  std::vector<double> ue_ul_power_w;                          // per UE, 0 when idle
  std::vector<collision_event> collisions;
  double satellite_interference_w = 0.0; // terrestrial power landing on satellites
};

struct run_result {
  sim_policy policy = sim_policy::epa;
  std::uint64_t seed = 0;
  double utilization = 0.0;
  std::vector<blanking_action> actions;
  std::vector<slot_record> slots;
  std::shared_ptr<const tessellation> tess;
  std::vector<sector_site> sectors;
  double setup_seconds = 0.0;
  double slot_seconds = 0.0;
};

struct run_options {
  bool record_rates = true;
  /// When non-empty, SINR/rate sampling runs only on slots with a nonzero
  /// entry (collision counting is unaffected). Sampling is keyed by
  /// (seed, slot, sector, PRB, draw), so filtering never changes the values
  /// that are recorded.
  std::vector<std::uint8_t> rate_slots;
};

/// One satellite as seen at one instant: footprint, per-sector overlap flags
/// and per-carrier per-sector Doppler-corrected receive frequencies. Out-of-
/// zone satellites (too far to touch the clip bounds, guaranteed by scenario
/// validation) carry in_zone = false and no geometry.
struct sat_snapshot {
  bool in_zone = false;
  satellite_footprint footprint;
  double altitude_m = 0.0;
  std::vector<std::uint8_t> overlap;           // per sector
  std::vector<std::vector<double>> corrected;  // [carrier][sector]
};

std::vector<sat_snapshot> satellite_snapshot(const scenario& sc, const tessellation& tess,
                                             const std::vector<sector_site>& sectors, double t_s);

/// Which directions carry traffic in a slot: FDD both, TDD alternates
/// downlink on even slots and uplink on odd slots.
std::array<bool, 2> active_directions(const scenario& sc, long slot);

/// Uniform sample of round(utilization * n_prb) PRBs from the unblanked set;
/// when fewer unblanked PRBs exist, all of them are scheduled.
prb_mask schedule_prbs(double utilization, int n_prb, const prb_mask& blanked, counter_rng rng);

/// One proactive-blanking step: desired masks come from the union of the
/// current and next slot's overlap-and-occupancy, so a PRB is blanked one
/// slot before the footprint arrives and released one slot after it clears.
/// Mutates `blanked` ([sector][direction]) and returns the delta as actions.
std::vector<blanking_action> avoidance_step(long slot, const scenario& sc,
                                            const std::vector<sat_snapshot>& now,
                                            const std::vector<sat_snapshot>& next,
                                            std::vector<std::array<prb_mask, 2>>& blanked);

/// Baseline step: never blanks anything.
std::vector<blanking_action> epa_step(long slot);

run_result run(const scenario& sc, sim_policy policy, std::uint64_t seed, double utilization,
               const run_options& opt = {});

} // namespace coexsim
