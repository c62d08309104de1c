#include "coexsim/radio.hpp"

#include <cmath>
#include <stdexcept>

namespace coexsim {

namespace {
constexpr double two_pi = 2.0 * 3.141592653589793238462643383279502884;
}

beam_codebook grid_of_beams(int num_antennas, int num_beams) {
  if (num_antennas < 1 || num_beams < 1) {
    throw std::invalid_argument("grid_of_beams: counts must be positive");
  }
  beam_codebook cb;
  cb.num_antennas = num_antennas;
  cb.beams.reserve(num_beams);
  for (int j = 0; j < num_beams; ++j) {
    cvector f(num_antennas);
    double norm_sq = 0.0;
    for (int m = 0; m < num_antennas; ++m) {
      const double phase = two_pi * m * j / num_beams;
      f[m] = {std::cos(phase), std::sin(phase)};
      norm_sq += std::norm(f[m]);
    }
    const double scale = std::sqrt(num_antennas / norm_sq);
    for (auto& e : f) {
      e *= scale;
    }
    cb.beams.push_back(std::move(f));
  }
  return cb;
}

double beamformed_power(const cvector& h, const cvector& f) {
  if (h.size() != f.size()) {
    throw std::invalid_argument("beamformed_power: dimension mismatch");
  }
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t m = 0; m < h.size(); ++m) {
    acc += std::conj(h[m]) * f[m];
  }
  return std::norm(acc);
}

std::size_t best_beam(const channel_realization& ch, const beam_codebook& cb) {
  if (cb.beams.empty()) {
    throw std::invalid_argument("best_beam: empty codebook");
  }
  std::size_t best = 0;
  double best_p = beamformed_power(ch.h, cb.beams[0]);
  for (std::size_t j = 1; j < cb.beams.size(); ++j) {
    const double p = beamformed_power(ch.h, cb.beams[j]);
    if (p > best_p) {
      best_p = p;
      best = j;
    }
  }
  return best;
}

double sinr(const channel_realization& serving, const link_powers& powers, const cvector& beam,
            const std::vector<std::pair<channel_realization, double>>& interferers) {
  if (powers.noise_power_w <= 0.0) {
    throw std::invalid_argument("sinr: noise power must be positive");
  }
  const double num = serving.large_scale_gain * powers.tx_power_w * beamformed_power(serving.h, beam);
  double den = powers.noise_power_w;
  for (const auto& [ch, tx_w] : interferers) {
    den += ch.large_scale_gain * tx_w * beamformed_power(ch.h, beam);
  }
  return num / den;
}

double spectral_efficiency(double sinr_linear) {
  if (sinr_linear < 0.0) {
    throw std::invalid_argument("spectral_efficiency: negative sinr");
  }
  return std::log1p(sinr_linear) / M_LN2;
}

double large_scale_gain(double distance_m, const pathloss_model& model, double shadowing_db) {
  const double d = std::max(distance_m, model.ref_distance_m);
  const double loss_db =
      model.ref_loss_db + 10.0 * model.exponent * std::log10(d / model.ref_distance_m);
  return std::pow(10.0, (-loss_db + shadowing_db) / 10.0);
}

cvector draw_channel_vector(counter_rng& rng, int num_antennas) {
  cvector h(num_antennas);
  const double var = 1.0 / num_antennas;
  for (auto& e : h) {
    e = rng.next_cnormal(var);
  }
  return h;
}

} // namespace coexsim
