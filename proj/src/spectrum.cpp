#include "coexsim/spectrum.hpp"

#include <cmath>
#include <stdexcept>

namespace coexsim {

namespace {

void check_prb(const prb_index& k, const band_plan& plan) {
  if (k.k < 1 || k.k > plan.n_prb) {
    throw std::out_of_range("prb index out of range");
  }
}

double direction_start(const band_plan& plan, link_direction direction) {
  if (direction == link_direction::uplink && plan.duplex == duplex_mode::fdd) {
    return plan.f_start_hz - plan.duplex_distance_hz;
  }
  return plan.f_start_hz;
}

} // namespace

double prb_start_frequency(const prb_index& k, const band_plan& plan) {
  check_prb(k, plan);
  return direction_start(plan, k.direction) + plan.prb_pitch_hz() * (k.k - 1);
}

freq_interval prb_interval(const prb_index& k, const band_plan& plan) {
  const double lo = prb_start_frequency(k, plan);
  return {lo, lo + plan.prb_width_hz()};
}

std::optional<int> frequency_to_prb(double f_hz, const band_plan& plan, link_direction direction) {
  if (f_hz <= 0.0) {
    throw std::invalid_argument("frequency_to_prb: non-positive frequency");
  }
  const double start = direction_start(plan, direction);
  const double pitch = plan.prb_pitch_hz();
  if (f_hz < start) {
    return std::nullopt;
  }
  const int idx = static_cast<int>(std::floor((f_hz - start) / pitch));
  const int k = idx + 1;
  if (k < 1 || k > plan.n_prb) {
    return std::nullopt;
  }
  if (f_hz >= start + idx * pitch + plan.prb_width_hz()) {
    return std::nullopt; // guard sliver between PRBs
  }
  return k;
}

double doppler_correction(double ground_speed_mps, double f0_hz) {
  if (ground_speed_mps < 0.0) {
    throw std::invalid_argument("doppler_correction: negative speed");
  }
  if (f0_hz <= 0.0) {
    throw std::invalid_argument("doppler_correction: non-positive frequency");
  }
  return ground_speed_mps / speed_of_light_mps * f0_hz;
}

double corrected_frequency(const carrier_tone& carrier, double ground_speed_mps, motion_sign motion) {
  switch (motion) {
  case motion_sign::approaching:
    return carrier.sky_frequency_hz + doppler_correction(ground_speed_mps, carrier.sky_frequency_hz);
  case motion_sign::departing:
    return carrier.sky_frequency_hz - doppler_correction(ground_speed_mps, carrier.sky_frequency_hz);
  case motion_sign::stationary:
    return carrier.sky_frequency_hz;
  }
  throw std::invalid_argument("corrected_frequency: bad motion tag");
}

bool carrier_occupies_prb(double carrier_at_receiver_hz, double bw_hz, const prb_index& k,
                          const band_plan& plan) {
  if (bw_hz < 0.0) {
    throw std::invalid_argument("carrier_occupies_prb: negative bandwidth");
  }
  const freq_interval prb = prb_interval(k, plan);
  if (bw_hz == 0.0) {
    return carrier_at_receiver_hz >= prb.lo_hz && carrier_at_receiver_hz < prb.hi_hz;
  }
  const double lo = carrier_at_receiver_hz - 0.5 * bw_hz;
  const double hi = carrier_at_receiver_hz + 0.5 * bw_hz;
  return hi >= prb.lo_hz && lo < prb.hi_hz;
}

std::vector<int> occupied_prbs(double carrier_at_receiver_hz, double bw_hz, const band_plan& plan,
                               link_direction direction) {
  const double start = direction_start(plan, direction);
  const double pitch = plan.prb_pitch_hz();
  int k_lo = static_cast<int>(std::floor((carrier_at_receiver_hz - 0.5 * bw_hz - start) / pitch)) - 1;
  int k_hi = static_cast<int>(std::floor((carrier_at_receiver_hz + 0.5 * bw_hz - start) / pitch)) + 2;
  k_lo = std::max(k_lo, 1);
  k_hi = std::min(k_hi, plan.n_prb);
  std::vector<int> out;
  for (int k = k_lo; k <= k_hi; ++k) {
    if (carrier_occupies_prb(carrier_at_receiver_hz, bw_hz, {k, direction}, plan)) {
      out.push_back(k);
    }
  }
  return out;
}

} // namespace coexsim
