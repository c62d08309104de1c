#include "coexsim/persist.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace coexsim {

namespace {

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) {
    throw std::runtime_error("cannot write '" + p.string() + "'");
  }
  return f;
}

} // namespace

std::string format_csv_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void append_run(result_set& rs, const run_result& run) {
  const std::string policy = to_string(run.policy);
  for (const slot_record& rec : run.slots) {
    for (const collision_event& ev : rec.collisions) {
      rs.collisions.push_back(
          {policy, run.seed, run.utilization, rec.slot, ev.direction, ev.sector, ev.satellite_id, ev.prb});
    }
  }
  for (const blanking_action& a : run.actions) {
    rs.actions.push_back({policy, run.seed, run.utilization, a.slot, a.sector, a.direction, a.prb,
                          to_string(a.action), a.cause_satellite < 0 ? "clear" : std::to_string(a.cause_satellite)});
  }
}

void append_sum_rates(result_set& rs, const run_result& run, const std::vector<sum_rate_sample>& samples) {
  const std::string policy = to_string(run.policy);
  for (const sum_rate_sample& s : samples) {
    auto& rows = s.direction == link_direction::downlink ? rs.sumrate_dl : rs.sumrate_ul;
    rows.push_back({policy, run.seed, run.utilization, s.slot, s.value_bits});
  }
}

manifest persist_results(const result_set& rs, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory '" + out_dir + "': " + ec.message());
  }

  manifest mf;
  mf.scenario_hash = rs.scenario_hash;

  {
    auto f = open_out(fs::path(out_dir) / "collisions.csv");
    f << "policy,seed,utilization,slot,direction,sector,satellite,prb\n";
    for (const auto& r : rs.collisions) {
      f << r.policy << ',' << r.seed << ',' << format_csv_double(r.utilization) << ',' << r.slot << ','
        << to_string(r.direction) << ',' << r.sector << ',' << r.satellite << ',' << r.prb << '\n';
    }
    mf.files.push_back({"collisions.csv", static_cast<long>(rs.collisions.size())});
  }
  for (int d = 0; d < 2; ++d) {
    const auto& rows = d == 0 ? rs.sumrate_dl : rs.sumrate_ul;
    const std::string name = d == 0 ? "sumrate_dl.csv" : "sumrate_ul.csv";
    auto f = open_out(fs::path(out_dir) / name);
    f << "policy,seed,utilization,slot,value_bits_per_cu\n";
    for (const auto& r : rows) {
      f << r.policy << ',' << r.seed << ',' << format_csv_double(r.utilization) << ',' << r.slot << ','
        << format_csv_double(r.value_bits) << '\n';
    }
    mf.files.push_back({name, static_cast<long>(rows.size())});
  }
  {
    auto f = open_out(fs::path(out_dir) / "actions.csv");
    f << "policy,seed,utilization,slot,sector,direction,prb,action,cause\n";
    for (const auto& r : rs.actions) {
      f << r.policy << ',' << r.seed << ',' << format_csv_double(r.utilization) << ',' << r.slot << ','
        << r.sector << ',' << to_string(r.direction) << ',' << r.prb << ',' << r.action << ',' << r.cause
        << '\n';
    }
    mf.files.push_back({"actions.csv", static_cast<long>(rs.actions.size())});
  }
  {
    auto f = open_out(fs::path(out_dir) / "scenario_echo.scn");
    f << rs.scenario_echo;
  }
  {
    auto f = open_out(fs::path(out_dir) / "manifest.txt");
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx", static_cast<unsigned long long>(rs.scenario_hash));
    f << "scenario_hash " << hash << "\n";
    f << "scenario_file " << rs.scenario_path << "\n";
    for (const auto& [key, value] : rs.defaults_filled) {
      f << "default " << key << " " << value << "\n";
    }
    for (const auto& e : mf.files) {
      f << "file " << e.file << " rows " << e.rows << "\n";
    }
  }
  return mf;
}

} // namespace coexsim
