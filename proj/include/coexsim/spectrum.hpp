#pragma once

#include <optional>
#include <vector>

namespace coexsim {

inline constexpr double speed_of_light_mps = 299792458.0;

enum class link_direction { downlink = 0, uplink = 1 };
enum class duplex_mode { fdd, tdd };

inline const char* to_string(link_direction d) {
  return d == link_direction::downlink ? "dl" : "ul";
}

/// Usable band geometry and PRB grid for one scenario.
/// The PRB pitch (f_end - f_start)/n_prb and the PRB occupied width
/// N_SC * scs are kept independent; when they differ a guard sliver sits
/// between consecutive PRBs and maps to no PRB.
struct band_plan {
  double f_start_hz = 0.0; // usable downlink start, guard bands excluded
  double f_end_hz = 0.0;   // usable downlink end
  int n_prb = 0;
  double subcarrier_spacing_hz = 15e3;
  int subcarriers_per_prb = 12;
  duplex_mode duplex = duplex_mode::tdd;
  double duplex_distance_hz = 0.0; // uplink = downlink - duplex_distance (FDD only)

  double prb_pitch_hz() const { return (f_end_hz - f_start_hz) / n_prb; }
  double prb_width_hz() const { return subcarriers_per_prb * subcarrier_spacing_hz; }
};

/// One satellite transmit carrier.
struct carrier_tone {
  double sky_frequency_hz = 0.0;
  double occupied_bandwidth_hz = 0.0;
};

/// 1-based PRB number plus direction.
struct prb_index {
  int k = 1;
  link_direction direction = link_direction::downlink;
};

/// Half-open frequency interval [lo, hi).
struct freq_interval {
  double lo_hz = 0.0;
  double hi_hz = 0.0;
};

enum class motion_sign { approaching, departing, stationary };

double prb_start_frequency(const prb_index& k, const band_plan& plan);
freq_interval prb_interval(const prb_index& k, const band_plan& plan);

/// Inverse map; std::nullopt when `f_hz` falls between PRBs or out of band.
std::optional<int> frequency_to_prb(double f_hz, const band_plan& plan, link_direction direction);

/// Doppler magnitude (v/c) * f0.
double doppler_correction(double ground_speed_mps, double f0_hz);

/// Receiver-side carrier frequency: f0 + correction when approaching,
/// f0 - correction when departing, f0 when stationary.
double corrected_frequency(const carrier_tone& carrier, double ground_speed_mps, motion_sign motion);

/// 1 iff the carrier interval [f - bw/2, f + bw/2] intersects PRB k's
/// interval; for bw = 0, 1 iff f lies inside the interval.
bool carrier_occupies_prb(double carrier_at_receiver_hz, double bw_hz, const prb_index& k,
                          const band_plan& plan);

/// Ascending list of every PRB the carrier occupies in the given direction.
std::vector<int> occupied_prbs(double carrier_at_receiver_hz, double bw_hz, const band_plan& plan,
                               link_direction direction);

} // namespace coexsim
