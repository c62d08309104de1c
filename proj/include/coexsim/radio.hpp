#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "coexsim/rng.hpp"

namespace coexsim {

using cvector = std::vector<std::complex<double>>;

/// Fixed grid-of-beams codebook; every beam has squared norm M.
struct beam_codebook {
  int num_antennas = 0;
  std::vector<cvector> beams;
};

/// One small-scale channel draw plus its large-scale power gain.
struct channel_realization {
  cvector h; // power-normalized: E||h||^2 = 1 over draws
  double large_scale_gain = 1.0;
};

struct link_powers {
  double tx_power_w = 0.0;
  double noise_power_w = 0.0;
};

/// Log-distance pathloss with lognormal shadowing.
struct pathloss_model {
  double exponent = 3.5;
  double ref_loss_db = 92.0;
  double ref_distance_m = 35.0;
  double shadowing_sigma_db = 6.0;
};

/// DFT beam grid: beam j has elements exp(i 2 pi m j / num_beams), scaled so
/// that ||f||^2 = num_antennas.
beam_codebook grid_of_beams(int num_antennas, int num_beams);

/// Index maximizing |h^* f|^2 over the codebook; ties break to lowest index.
std::size_t best_beam(const channel_realization& ch, const beam_codebook& cb);

/// |h^* f|^2 for one channel/beam pair.
double beamformed_power(const cvector& h, const cvector& f);

/// Single-realization SINR: numerator G P |h^* f|^2, denominator noise plus
/// each interferer's G' P' |h'^* f|^2 through the victim's beam.
double sinr(const channel_realization& serving, const link_powers& powers, const cvector& beam,
            const std::vector<std::pair<channel_realization, double>>& interferers);

/// log2(1 + sinr), bits per channel use.
double spectral_efficiency(double sinr_linear);

/// Linear power gain from the log-distance model; distances below the
/// reference distance clamp to it.
double large_scale_gain(double distance_m, const pathloss_model& model, double shadowing_db);

/// i.i.d. complex Gaussian entries with variance 1/M per antenna.
cvector draw_channel_vector(counter_rng& rng, int num_antennas);

} // namespace coexsim
