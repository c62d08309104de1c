#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coexsim/geometry.hpp"
#include "coexsim/orbit.hpp"
#include "coexsim/radio.hpp"
#include "coexsim/spectrum.hpp"

namespace coexsim {

class scenario_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class association_mode { realistic, voronoi_ideal };

/// How interfering base stations' emissions are combined at a victim:
/// through the victim's own beam (the default) or through the interferer's
/// own serving beam.
enum class interferer_beam_mode { victim_beam, own_beam };

struct bs_site {
  int id = 0;
  geo_point position;
  std::array<double, 3> azimuths_deg{0.0, 120.0, 240.0};
};

/// Full experiment description; every field has a defined default so a file
/// only needs to pin what it cares about. Defaults the loader fills are
/// reported back so no assumption stays silent.
struct scenario {
  int version = 1;

  std::uint64_t seed = 1;
  double horizon_s = 300.0;
  double slot_s = 1.0;
  int ues_per_sector = 10;
  association_mode association = association_mode::realistic;
  std::vector<double> utilizations{0.1, 0.3, 0.5, 0.7, 0.9, 1.0};
  int channel_draws = 100;
  double bounds_margin_m = 10000.0;
  double sector_offset_m = 50.0;
  int max_interferer_sectors = 0;  // 0 = all sectors interfere
  int association_candidates = 0;  // 0 = all sectors are candidates

  geo_point origin;

  band_plan band;

  double bs_power_w = 40.0;
  double ue_power_w = 0.2;
  double noise_power_w = 0.0; // 0 = derive thermal + noise figure default
  double sat_power_w = 10.0;

  pathloss_model pathloss;
  double sat_pathloss_exponent = 2.0;

  int antennas = 4;
  int beams = 8;
  interferer_beam_mode interferer_beams = interferer_beam_mode::victim_beam;

  /// Horizontal panel pattern applied on the base-station side of every
  /// terrestrial link; 3 dB beamwidth <= 0 disables it (omni).
  double antenna_3db_beamwidth_deg = 65.0;
  double antenna_max_attenuation_db = 40.0;

  std::vector<int> non_blankable{1, 2}; // 1-based PRB numbers

  std::vector<bs_site> bs;
  std::vector<satellite_trajectory> satellites;
};

/// Thermal noise over one PRB width plus a 9 dB receiver noise figure.
double default_noise_power_w(const band_plan& band);

struct sector_site {
  int bs_id = 0;
  int sector_index = 0; // 0..2 within the site
  double azimuth_deg = 0.0;
  plane_point position;
};

/// One planar point per sector: the site displaced by sector_offset along the
/// sector azimuth (azimuth 0 = north, clockwise). Output is BS-major, three
/// per site.
std::vector<sector_site> sector_sites(const scenario& sc);

/// Axis-aligned clip bounds: the sector-site extent plus the scenario margin.
region scenario_bounds(const scenario& sc);

struct load_result {
  scenario sc;
  std::vector<std::string> warnings;                            // unknown keys etc.
  std::vector<std::pair<std::string, std::string>> defaults_filled;
  std::uint64_t file_hash = 0;
  std::string source_path;
};

load_result load_scenario(const std::string& path);
load_result parse_scenario(std::string_view text, const std::string& source_name = "<memory>");

/// Canonical text form with every field materialized; reload of the output
/// reproduces the scenario exactly.
std::string format_scenario(const scenario& sc);

/// Validates all invariants; throws scenario_error naming the offending field.
void validate_scenario(const scenario& sc);

std::uint64_t fnv1a_hash(std::string_view bytes);

} // namespace coexsim
