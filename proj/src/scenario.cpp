#include "coexsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace coexsim {

namespace {

constexpr double projection_guard_deg = 2.0;
constexpr double meters_per_deg = deg_to_rad * earth_radius_m;

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) {
    return {};
  }
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) {
    out.push_back(tok);
  }
  return out;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) {
      throw std::invalid_argument(s);
    }
    return v;
  } catch (const std::exception&) {
    throw scenario_error("invalid number '" + s + "' for " + what);
  }
}

long long parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) {
      throw std::invalid_argument(s);
    }
    return v;
  } catch (const std::exception&) {
    throw scenario_error("invalid integer '" + s + "' for " + what);
  }
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Raw key/value lines of one section, plus positional table rows.
struct section_data {
  std::map<std::string, std::string> kv;
  std::vector<std::vector<std::string>> rows; // [bs] site rows
  std::vector<std::string> row_kinds;         // [satellite] "carrier"/"waypoint" rows share kv space
  std::vector<std::vector<std::string>> typed_rows;
};

struct raw_file {
  std::map<std::string, section_data> sections; // single-instance sections
  std::vector<section_data> satellites;
  int version = -1;
  std::vector<std::string> warnings;
};

const std::set<std::string> known_sections = {"general", "origin", "band",     "powers",
                                              "pathloss", "radio",  "blanking", "bs"};

raw_file tokenize(std::string_view text, const std::string& source_name) {
  raw_file rf;
  section_data* current = nullptr;
  bool current_is_satellite = false;
  std::istringstream is{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    if (const auto hash = raw.find('#'); hash != std::string::npos) {
      raw.erase(hash);
    }
    const std::string line = trim(raw);
    if (line.empty()) {
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw scenario_error(source_name + ":" + std::to_string(lineno) + ": malformed section header");
      }
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (name == "satellite") {
        rf.satellites.emplace_back();
        current = &rf.satellites.back();
        current_is_satellite = true;
      } else {
        if (!known_sections.count(name)) {
          rf.warnings.push_back("unknown section [" + name + "]");
        }
        current = &rf.sections[name];
        current_is_satellite = false;
      }
      continue;
    }
    const auto toks = split_ws(line);
    if (current == nullptr) {
      if (toks.size() == 2 && toks[0] == "version") {
        rf.version = static_cast<int>(parse_int(toks[1], "version"));
        continue;
      }
      throw scenario_error(source_name + ":" + std::to_string(lineno) +
                           ": content before any section (only 'version N' is allowed here)");
    }
    if (current_is_satellite && (toks[0] == "carrier" || toks[0] == "waypoint")) {
      current->row_kinds.push_back(toks[0]);
      current->typed_rows.emplace_back(toks.begin() + 1, toks.end());
      continue;
    }
    if (!current_is_satellite && current == &rf.sections["bs"]) {
      current->rows.push_back(toks);
      continue;
    }
    if (toks.size() < 2) {
      throw scenario_error(source_name + ":" + std::to_string(lineno) + ": expected 'key value'");
    }
    std::string value = toks[1];
    for (std::size_t i = 2; i < toks.size(); ++i) {
      value += toks[i]; // rejoin comma lists written with spaces
    }
    current->kv[toks[0]] = value;
  }
  return rf;
}

/// Pulls one key, recording either the default fill or the consumption.
class key_reader {
public:
  key_reader(section_data* sec, std::string section_name, load_result& out)
      : sec_(sec), name_(std::move(section_name)), out_(out) {}

  bool has(const std::string& key) { return sec_ != nullptr && sec_->kv.count(key) > 0; }

  std::string take(const std::string& key, const std::string& default_value) {
    if (has(key)) {
      consumed_.insert(key);
      return sec_->kv[key];
    }
    out_.defaults_filled.emplace_back(name_ + "." + key, default_value);
    return default_value;
  }

  std::string require(const std::string& key) {
    if (!has(key)) {
      throw scenario_error("missing required key '" + key + "' in section [" + name_ + "]");
    }
    consumed_.insert(key);
    return sec_->kv[key];
  }

  void warn_unknown() {
    if (sec_ == nullptr) {
      return;
    }
    for (const auto& [k, v] : sec_->kv) {
      if (!consumed_.count(k)) {
        out_.warnings.push_back("unknown key '" + k + "' in section [" + name_ + "]");
      }
    }
  }

private:
  section_data* sec_;
  std::string name_;
  load_result& out_;
  std::set<std::string> consumed_;
};

std::string join_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += (i ? "," : "") + fmt_double(v[i]);
  }
  return s;
}

std::string join_list(const std::vector<int>& v) {
  if (v.empty()) {
    return "none";
  }
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += (i ? "," : "") + std::to_string(v[i]);
  }
  return s;
}

} // namespace

double default_noise_power_w(const band_plan& band) {
  const double noise_dbm = -174.0 + 10.0 * std::log10(band.prb_width_hz()) + 9.0;
  return std::pow(10.0, (noise_dbm - 30.0) / 10.0);
}

std::vector<sector_site> sector_sites(const scenario& sc) {
  std::vector<sector_site> out;
  out.reserve(sc.bs.size() * 3);
  for (const bs_site& b : sc.bs) {
    const plane_point base = project_to_plane(b.position, sc.origin);
    for (int s = 0; s < 3; ++s) {
      const double az = b.azimuths_deg[s] * deg_to_rad;
      out.push_back({b.id, s, b.azimuths_deg[s],
                     {base.x + sc.sector_offset_m * std::sin(az),
                      base.y + sc.sector_offset_m * std::cos(az)}});
    }
  }
  return out;
}

region scenario_bounds(const scenario& sc) {
  const auto sites = sector_sites(sc);
  double lo_x = sites[0].position.x, hi_x = lo_x;
  double lo_y = sites[0].position.y, hi_y = lo_y;
  for (const auto& s : sites) {
    lo_x = std::min(lo_x, s.position.x);
    hi_x = std::max(hi_x, s.position.x);
    lo_y = std::min(lo_y, s.position.y);
    hi_y = std::max(hi_y, s.position.y);
  }
  return region::rectangle({lo_x - sc.bounds_margin_m, lo_y - sc.bounds_margin_m},
                           {hi_x + sc.bounds_margin_m, hi_y + sc.bounds_margin_m});
}

std::uint64_t fnv1a_hash(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

load_result parse_scenario(std::string_view text, const std::string& source_name) {
  load_result out;
  out.source_path = source_name;
  out.file_hash = fnv1a_hash(text);
  raw_file rf = tokenize(text, source_name);
  out.warnings = rf.warnings;
  scenario& sc = out.sc;

  if (rf.version < 0) {
    throw scenario_error(source_name + ": missing 'version' line");
  }
  if (rf.version != 1) {
    throw scenario_error(source_name + ": unsupported version " + std::to_string(rf.version));
  }
  sc.version = rf.version;

  auto section = [&](const std::string& name) -> section_data* {
    auto it = rf.sections.find(name);
    return it == rf.sections.end() ? nullptr : &it->second;
  };

  {
    key_reader g(section("general"), "general", out);
    sc.seed = static_cast<std::uint64_t>(parse_int(g.take("seed", "1"), "general.seed"));
    sc.horizon_s = parse_double(g.take("horizon_s", "300"), "general.horizon_s");
    sc.slot_s = parse_double(g.take("slot_s", "1"), "general.slot_s");
    sc.ues_per_sector = static_cast<int>(parse_int(g.take("ues_per_sector", "10"), "general.ues_per_sector"));
    const std::string assoc = g.take("association", "realistic");
    if (assoc == "realistic") {
      sc.association = association_mode::realistic;
    } else if (assoc == "voronoi_ideal") {
      sc.association = association_mode::voronoi_ideal;
    } else {
      throw scenario_error("general.association must be 'realistic' or 'voronoi_ideal', got '" + assoc + "'");
    }
    sc.utilizations.clear();
    for (const std::string& u : split_commas(g.take("utilizations", "0.1,0.3,0.5,0.7,0.9,1"))) {
      sc.utilizations.push_back(parse_double(u, "general.utilizations"));
    }
    sc.channel_draws = static_cast<int>(parse_int(g.take("channel_draws", "100"), "general.channel_draws"));
    sc.bounds_margin_m = parse_double(g.take("bounds_margin_m", "10000"), "general.bounds_margin_m");
    sc.sector_offset_m = parse_double(g.take("sector_offset_m", "50"), "general.sector_offset_m");
    sc.max_interferer_sectors =
        static_cast<int>(parse_int(g.take("max_interferer_sectors", "0"), "general.max_interferer_sectors"));
    sc.association_candidates =
        static_cast<int>(parse_int(g.take("association_candidates", "0"), "general.association_candidates"));
    const std::string ib = g.take("interferer_beams", "victim_beam");
    if (ib == "victim_beam") {
      sc.interferer_beams = interferer_beam_mode::victim_beam;
    } else if (ib == "own_beam") {
      sc.interferer_beams = interferer_beam_mode::own_beam;
    } else {
      throw scenario_error("general.interferer_beams must be 'victim_beam' or 'own_beam', got '" + ib + "'");
    }
    g.warn_unknown();
  }

  {
    section_data* s = section("origin");
    if (s == nullptr) {
      throw scenario_error(source_name + ": missing required section [origin]");
    }
    key_reader g(s, "origin", out);
    sc.origin.lon_deg = parse_double(g.require("lon"), "origin.lon");
    sc.origin.lat_deg = parse_double(g.require("lat"), "origin.lat");
    g.warn_unknown();
  }

  {
    section_data* s = section("band");
    if (s == nullptr) {
      throw scenario_error(source_name + ": missing required section [band]");
    }
    key_reader g(s, "band", out);
    const std::string duplex = g.take("duplex", "tdd");
    if (duplex == "tdd") {
      sc.band.duplex = duplex_mode::tdd;
    } else if (duplex == "fdd") {
      sc.band.duplex = duplex_mode::fdd;
    } else {
      throw scenario_error("band.duplex must be 'fdd' or 'tdd', got '" + duplex + "'");
    }
    sc.band.f_start_hz = parse_double(g.require("f_start_hz"), "band.f_start_hz");
    sc.band.f_end_hz = parse_double(g.require("f_end_hz"), "band.f_end_hz");
    sc.band.n_prb = static_cast<int>(parse_int(g.require("n_prb"), "band.n_prb"));
    sc.band.subcarrier_spacing_hz =
        parse_double(g.take("subcarrier_spacing_hz", "15000"), "band.subcarrier_spacing_hz");
    sc.band.subcarriers_per_prb =
        static_cast<int>(parse_int(g.take("subcarriers_per_prb", "12"), "band.subcarriers_per_prb"));
    sc.band.duplex_distance_hz = parse_double(g.take("duplex_distance_hz", "0"), "band.duplex_distance_hz");
    g.warn_unknown();
  }

  {
    key_reader g(section("powers"), "powers", out);
    sc.bs_power_w = parse_double(g.take("bs_max_w", "40"), "powers.bs_max_w");
    sc.ue_power_w = parse_double(g.take("ue_max_w", "0.2"), "powers.ue_max_w");
    sc.sat_power_w = parse_double(g.take("sat_tx_w", "10"), "powers.sat_tx_w");
    if (g.has("noise_w")) {
      sc.noise_power_w = parse_double(g.take("noise_w", ""), "powers.noise_w");
    } else {
      sc.noise_power_w = default_noise_power_w(sc.band);
      out.defaults_filled.emplace_back("powers.noise_w", fmt_double(sc.noise_power_w));
    }
    g.warn_unknown();
  }

  {
    key_reader g(section("pathloss"), "pathloss", out);
    sc.pathloss.exponent = parse_double(g.take("exponent", "3.5"), "pathloss.exponent");
    sc.pathloss.ref_loss_db = parse_double(g.take("ref_loss_db", "92"), "pathloss.ref_loss_db");
    sc.pathloss.ref_distance_m = parse_double(g.take("ref_distance_m", "35"), "pathloss.ref_distance_m");
    sc.pathloss.shadowing_sigma_db =
        parse_double(g.take("shadowing_sigma_db", "6"), "pathloss.shadowing_sigma_db");
    sc.sat_pathloss_exponent = parse_double(g.take("sat_exponent", "2"), "pathloss.sat_exponent");
    g.warn_unknown();
  }

  {
    key_reader g(section("radio"), "radio", out);
    sc.antennas = static_cast<int>(parse_int(g.take("antennas", "4"), "radio.antennas"));
    sc.beams = static_cast<int>(parse_int(g.take("beams", "8"), "radio.beams"));
    sc.antenna_3db_beamwidth_deg =
        parse_double(g.take("antenna_3db_beamwidth_deg", "65"), "radio.antenna_3db_beamwidth_deg");
    sc.antenna_max_attenuation_db =
        parse_double(g.take("antenna_max_attenuation_db", "40"), "radio.antenna_max_attenuation_db");
    g.warn_unknown();
  }

  {
    key_reader g(section("blanking"), "blanking", out);
    const std::string nb = g.take("non_blankable", "1,2");
    sc.non_blankable.clear();
    if (nb != "none" && !nb.empty()) {
      for (const std::string& tok : split_commas(nb)) {
        sc.non_blankable.push_back(static_cast<int>(parse_int(tok, "blanking.non_blankable")));
      }
    }
    g.warn_unknown();
  }

  {
    section_data* s = section("bs");
    if (s == nullptr || s->rows.empty()) {
      throw scenario_error(source_name + ": missing required section [bs] with at least one site row");
    }
    for (const auto& row : s->rows) {
      if (row.size() != 6) {
        const std::string id = row.empty() ? "?" : row[0];
        throw scenario_error("bs site " + id + ": expected 'id lon lat az1 az2 az3' (exactly 3 azimuths), got " +
                             std::to_string(row.size()) + " fields");
      }
      bs_site b;
      b.id = static_cast<int>(parse_int(row[0], "bs id"));
      b.position.lon_deg = parse_double(row[1], "bs lon");
      b.position.lat_deg = parse_double(row[2], "bs lat");
      for (int i = 0; i < 3; ++i) {
        b.azimuths_deg[i] = parse_double(row[3 + i], "bs azimuth");
      }
      sc.bs.push_back(b);
    }
  }

  for (std::size_t si = 0; si < rf.satellites.size(); ++si) {
    section_data& sec = rf.satellites[si];
    key_reader g(&sec, "satellite", out);
    satellite_trajectory traj;
    traj.id = static_cast<int>(parse_int(g.require("id"), "satellite.id"));
    traj.beamwidth_deg = parse_double(g.take("beamwidth_deg", "60"), "satellite.beamwidth_deg");
    traj.ground_speed_mps = parse_double(g.take("ground_speed_mps", "7800"), "satellite.ground_speed_mps");
    for (std::size_t r = 0; r < sec.row_kinds.size(); ++r) {
      const auto& row = sec.typed_rows[r];
      if (sec.row_kinds[r] == "carrier") {
        if (row.size() != 2) {
          throw scenario_error("satellite " + std::to_string(traj.id) +
                               ": carrier row needs 'carrier f_hz bw_hz'");
        }
        traj.carriers.push_back({parse_double(row[0], "carrier f_hz"), parse_double(row[1], "carrier bw_hz")});
      } else {
        if (row.size() != 4) {
          throw scenario_error("satellite " + std::to_string(traj.id) +
                               ": waypoint row needs 'waypoint t_s lon lat alt_m'");
        }
        traj.waypoints.push_back({parse_double(row[0], "waypoint t_s"),
                                  {parse_double(row[1], "waypoint lon"), parse_double(row[2], "waypoint lat")},
                                  parse_double(row[3], "waypoint alt_m")});
      }
    }
    g.warn_unknown();
    sc.satellites.push_back(std::move(traj));
  }

  validate_scenario(sc);
  return out;
}

load_result load_scenario(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    throw scenario_error("cannot open scenario file '" + path + "'");
  }
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_scenario(buf.str(), path);
}

void validate_scenario(const scenario& sc) {
  auto fail = [](const std::string& msg) { throw scenario_error("scenario validation: " + msg); };

  if (sc.bs.empty()) {
    fail("at least one BS site is required");
  }
  {
    std::set<int> ids;
    for (const bs_site& b : sc.bs) {
      if (!ids.insert(b.id).second) {
        fail("duplicate BS id " + std::to_string(b.id));
      }
      if (std::abs(b.position.lon_deg) > 180.0 || std::abs(b.position.lat_deg) > 90.0) {
        fail("BS " + std::to_string(b.id) + ": coordinates out of range");
      }
      if (std::abs(b.position.lon_deg - sc.origin.lon_deg) > projection_guard_deg ||
          std::abs(b.position.lat_deg - sc.origin.lat_deg) > projection_guard_deg) {
        fail("BS " + std::to_string(b.id) + ": more than 2 degrees from origin");
      }
    }
    for (std::size_t i = 0; i < sc.bs.size(); ++i) {
      for (std::size_t j = i + 1; j < sc.bs.size(); ++j) {
        if (sc.bs[i].position.lon_deg == sc.bs[j].position.lon_deg &&
            sc.bs[i].position.lat_deg == sc.bs[j].position.lat_deg) {
          fail("BS " + std::to_string(sc.bs[i].id) + " and BS " + std::to_string(sc.bs[j].id) +
               " share coordinates");
        }
      }
    }
  }

  if (!(sc.slot_s > 0.0)) {
    fail("general.slot_s must be positive");
  }
  if (sc.horizon_s < sc.slot_s) {
    fail("general.horizon_s must be at least one slot");
  }
  if (sc.ues_per_sector < 1) {
    fail("general.ues_per_sector must be >= 1");
  }
  if (sc.channel_draws < 1) {
    fail("general.channel_draws must be >= 1");
  }
  if (sc.utilizations.empty()) {
    fail("general.utilizations must not be empty");
  }
  for (double u : sc.utilizations) {
    if (!(u > 0.0 && u <= 1.0)) {
      fail("utilization " + fmt_double(u) + " outside (0, 1]");
    }
  }
  if (!(sc.bounds_margin_m > 0.0)) {
    fail("general.bounds_margin_m must be positive");
  }
  if (sc.sector_offset_m < 0.0) {
    fail("general.sector_offset_m must be >= 0");
  }
  if (sc.max_interferer_sectors < 0 || sc.association_candidates < 0) {
    fail("interferer/candidate caps must be >= 0");
  }

  if (!(sc.band.f_end_hz > sc.band.f_start_hz)) {
    fail("band.f_end_hz must exceed band.f_start_hz");
  }
  if (sc.band.n_prb < 1) {
    fail("band.n_prb must be >= 1");
  }
  if (!(sc.band.subcarrier_spacing_hz > 0.0) || sc.band.subcarriers_per_prb < 1) {
    fail("band subcarrier geometry must be positive");
  }
  if (sc.band.duplex == duplex_mode::fdd && !(sc.band.duplex_distance_hz > 0.0)) {
    fail("band.duplex_distance_hz must be positive for fdd");
  }
  if (sc.band.duplex == duplex_mode::tdd && sc.band.duplex_distance_hz != 0.0) {
    fail("band.duplex_distance_hz must be 0 for tdd");
  }

  if (!(sc.bs_power_w > 0.0) || !(sc.ue_power_w > 0.0) || !(sc.sat_power_w > 0.0)) {
    fail("powers must be positive");
  }
  if (!(sc.noise_power_w > 0.0)) {
    fail("powers.noise_w must be positive");
  }
  if (!(sc.pathloss.exponent > 0.0) || !(sc.pathloss.ref_distance_m > 0.0)) {
    fail("pathloss model parameters must be positive");
  }
  if (sc.pathloss.shadowing_sigma_db < 0.0) {
    fail("pathloss.shadowing_sigma_db must be >= 0");
  }
  if (sc.antennas < 1 || sc.beams < 1) {
    fail("radio.antennas and radio.beams must be >= 1");
  }

  {
    std::set<int> nb;
    for (int k : sc.non_blankable) {
      if (k < 1 || k > sc.band.n_prb) {
        fail("blanking.non_blankable entry " + std::to_string(k) + " outside [1, n_prb]");
      }
      if (!nb.insert(k).second) {
        fail("blanking.non_blankable entry " + std::to_string(k) + " repeated");
      }
    }
  }

  const region bounds = scenario_bounds(sc);
  double bounds_reach = 0.0;
  for (const plane_point& v : bounds.vertices()) {
    bounds_reach = std::max(bounds_reach, std::hypot(v.x, v.y));
  }
  const double guard_lat_m = projection_guard_deg * meters_per_deg;
  const double guard_lon_m = guard_lat_m * std::cos(sc.origin.lat_deg * deg_to_rad);

  std::set<int> sat_ids;
  for (const satellite_trajectory& s : sc.satellites) {
    const std::string tag = "satellite " + std::to_string(s.id);
    if (!sat_ids.insert(s.id).second) {
      fail("duplicate " + tag);
    }
    if (s.waypoints.size() < 2) {
      fail(tag + ": needs at least two waypoints");
    }
    for (std::size_t i = 0; i < s.waypoints.size(); ++i) {
      if (i > 0 && !(s.waypoints[i].t_s > s.waypoints[i - 1].t_s)) {
        fail(tag + ": waypoint times must be strictly increasing");
      }
      if (!(s.waypoints[i].altitude_m > 0.0)) {
        fail(tag + ": waypoint altitude must be positive");
      }
    }
    if (!(s.ground_speed_mps > 0.0)) {
      fail(tag + ": ground_speed_mps must be positive");
    }
    if (!(s.beamwidth_deg > 0.0 && s.beamwidth_deg < 180.0)) {
      fail(tag + ": beamwidth_deg must be in (0, 180)");
    }
    if (s.carriers.empty()) {
      fail(tag + ": needs at least one carrier row");
    }
    for (const carrier_tone& c : s.carriers) {
      if (!(c.sky_frequency_hz > 0.0) || c.occupied_bandwidth_hz < 0.0) {
        fail(tag + ": carrier frequency/bandwidth out of range");
      }
    }
    if (s.waypoints.front().t_s > 0.0 || s.waypoints.back().t_s < sc.horizon_s + sc.slot_s) {
      fail(tag + ": trajectory must cover [0, horizon_s + slot_s]");
    }
    double max_alt = 0.0;
    for (const auto& w : s.waypoints) {
      max_alt = std::max(max_alt, w.altitude_m);
    }
    const double radius = footprint_radius(max_alt, s.beamwidth_deg);
    const double reach = radius + bounds_reach + s.ground_speed_mps * sc.slot_s;
    if (reach > 0.99 * std::min(guard_lat_m, guard_lon_m)) {
      fail(tag + ": footprint radius " + fmt_double(radius) +
           " m plus scenario extent exceeds the flat-plane projection guard; lower the altitude or "
           "beamwidth");
    }
  }
}

std::string format_scenario(const scenario& sc) {
  std::ostringstream os;
  os << "version " << sc.version << "\n\n";

  os << "[general]\n";
  os << "seed " << sc.seed << "\n";
  os << "horizon_s " << fmt_double(sc.horizon_s) << "\n";
  os << "slot_s " << fmt_double(sc.slot_s) << "\n";
  os << "ues_per_sector " << sc.ues_per_sector << "\n";
  os << "association " << (sc.association == association_mode::realistic ? "realistic" : "voronoi_ideal")
     << "\n";
  os << "utilizations " << join_list(sc.utilizations) << "\n";
  os << "channel_draws " << sc.channel_draws << "\n";
  os << "bounds_margin_m " << fmt_double(sc.bounds_margin_m) << "\n";
  os << "sector_offset_m " << fmt_double(sc.sector_offset_m) << "\n";
  os << "max_interferer_sectors " << sc.max_interferer_sectors << "\n";
  os << "association_candidates " << sc.association_candidates << "\n";
  os << "interferer_beams "
     << (sc.interferer_beams == interferer_beam_mode::victim_beam ? "victim_beam" : "own_beam") << "\n";

  os << "\n[origin]\n";
  os << "lon " << fmt_double(sc.origin.lon_deg) << "\n";
  os << "lat " << fmt_double(sc.origin.lat_deg) << "\n";

  os << "\n[band]\n";
  os << "duplex " << (sc.band.duplex == duplex_mode::tdd ? "tdd" : "fdd") << "\n";
  os << "f_start_hz " << fmt_double(sc.band.f_start_hz) << "\n";
  os << "f_end_hz " << fmt_double(sc.band.f_end_hz) << "\n";
  os << "n_prb " << sc.band.n_prb << "\n";
  os << "subcarrier_spacing_hz " << fmt_double(sc.band.subcarrier_spacing_hz) << "\n";
  os << "subcarriers_per_prb " << sc.band.subcarriers_per_prb << "\n";
  os << "duplex_distance_hz " << fmt_double(sc.band.duplex_distance_hz) << "\n";

  os << "\n[powers]\n";
  os << "bs_max_w " << fmt_double(sc.bs_power_w) << "\n";
  os << "ue_max_w " << fmt_double(sc.ue_power_w) << "\n";
  os << "noise_w " << fmt_double(sc.noise_power_w) << "\n";
  os << "sat_tx_w " << fmt_double(sc.sat_power_w) << "\n";

  os << "\n[pathloss]\n";
  os << "exponent " << fmt_double(sc.pathloss.exponent) << "\n";
  os << "ref_loss_db " << fmt_double(sc.pathloss.ref_loss_db) << "\n";
  os << "ref_distance_m " << fmt_double(sc.pathloss.ref_distance_m) << "\n";
  os << "shadowing_sigma_db " << fmt_double(sc.pathloss.shadowing_sigma_db) << "\n";
  os << "sat_exponent " << fmt_double(sc.sat_pathloss_exponent) << "\n";

  os << "\n[radio]\n";
  os << "antennas " << sc.antennas << "\n";
  os << "beams " << sc.beams << "\n";
  os << "antenna_3db_beamwidth_deg " << fmt_double(sc.antenna_3db_beamwidth_deg) << "\n";
  os << "antenna_max_attenuation_db " << fmt_double(sc.antenna_max_attenuation_db) << "\n";

  os << "\n[blanking]\n";
  os << "non_blankable " << join_list(sc.non_blankable) << "\n";

  os << "\n[bs]\n";
  for (const bs_site& b : sc.bs) {
    os << b.id << " " << fmt_double(b.position.lon_deg) << " " << fmt_double(b.position.lat_deg);
    for (double az : b.azimuths_deg) {
      os << " " << fmt_double(az);
    }
    os << "\n";
  }

  for (const satellite_trajectory& s : sc.satellites) {
    os << "\n[satellite]\n";
    os << "id " << s.id << "\n";
    os << "beamwidth_deg " << fmt_double(s.beamwidth_deg) << "\n";
    os << "ground_speed_mps " << fmt_double(s.ground_speed_mps) << "\n";
    for (const carrier_tone& c : s.carriers) {
      os << "carrier " << fmt_double(c.sky_frequency_hz) << " " << fmt_double(c.occupied_bandwidth_hz) << "\n";
    }
    for (const trajectory_waypoint& w : s.waypoints) {
      os << "waypoint " << fmt_double(w.t_s) << " " << fmt_double(w.position.lon_deg) << " "
         << fmt_double(w.position.lat_deg) << " " << fmt_double(w.altitude_m) << "\n";
    }
  }
  return os.str();
}

} // namespace coexsim
