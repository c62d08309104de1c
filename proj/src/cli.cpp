#include "coexsim/cli.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <thread>

#include "coexsim/metrics.hpp"
#include "coexsim/persist.hpp"
#include "coexsim/report.hpp"
#include "coexsim/scenario.hpp"

namespace coexsim {

namespace {

/// All rows produced by one (seed, utilization) grid cell.
struct cell_result {
  result_set rows;
};

cell_result run_cell(const scenario& sc, const std::vector<sim_policy>& policies, std::uint64_t seed,
                     double utilization) {
  cell_result cell;
  bool want_epa = false, want_proposed = false;
  for (sim_policy p : policies) {
    (p == sim_policy::epa ? want_epa : want_proposed) = true;
  }

  run_options no_rates;
  no_rates.record_rates = false;

  if (!(want_epa && want_proposed)) {
    // Single-policy runs carry no sum-rate samples (the collision windows
    // are defined by the baseline), so skip the SINR sampling entirely.
    for (sim_policy p : policies) {
      append_run(cell.rows, run(sc, p, seed, utilization, no_rates));
    }
    return cell;
  }

  // Pass 1: baseline collisions define the sampling windows. Pass 2 re-runs
  // both policies with SINR sampling restricted to those slots; the keyed
  // random streams make the re-run bit-identical to pass 1.
  const run_result probe = run(sc, sim_policy::epa, seed, utilization, no_rates);
  const auto windows = collision_windows(probe, default_collision_window_slots);
  run_options opt;
  opt.rate_slots.assign(probe.slots.size(), 0);
  for (const auto& seg : windows) {
    for (long t = seg.first; t <= seg.last; ++t) {
      opt.rate_slots[t] = 1;
    }
  }

  const run_result epa = run(sc, sim_policy::epa, seed, utilization, opt);
  const run_result proposed = run(sc, sim_policy::proposed, seed, utilization, opt);
  for (sim_policy p : policies) {
    append_run(cell.rows, p == sim_policy::epa ? epa : proposed);
  }
  append_sum_rates(cell.rows, epa, sum_rate(epa, windows, sc));
  append_sum_rates(cell.rows, proposed, sum_rate(proposed, windows, sc));
  return cell;
}

int worker_count(int requested, std::size_t jobs) {
  int n = requested;
  if (n <= 0) {
    if (const char* env = std::getenv("COEXSIM_WORKERS")) {
      n = std::atoi(env);
    }
  }
  if (n <= 0) {
    n = static_cast<int>(std::thread::hardware_concurrency());
  }
  if (n <= 0) {
    n = 1;
  }
  return static_cast<int>(std::min<std::size_t>(n, jobs));
}

} // namespace

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::string cur;
  auto flush = [&]() {
    if (cur.empty()) {
      return;
    }
    const auto dots = cur.find("..");
    if (dots != std::string::npos) {
      const std::uint64_t lo = std::stoull(cur.substr(0, dots));
      const std::uint64_t hi = std::stoull(cur.substr(dots + 2));
      if (hi < lo) {
        throw scenario_error("seed range '" + cur + "' is descending");
      }
      for (std::uint64_t s = lo; s <= hi; ++s) {
        out.push_back(s);
      }
    } else {
      out.push_back(std::stoull(cur));
    }
    cur.clear();
  };
  for (char c : text) {
    if (c == ',') {
      flush();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  flush();
  if (out.empty()) {
    throw scenario_error("empty seed list");
  }
  return out;
}

std::vector<sim_policy> parse_policy_list(const std::string& text) {
  std::vector<sim_policy> out;
  std::string cur;
  auto flush = [&]() {
    if (cur.empty()) {
      return;
    }
    if (cur == "proposed") {
      out.push_back(sim_policy::proposed);
    } else if (cur == "epa") {
      out.push_back(sim_policy::epa);
    } else {
      throw scenario_error("unknown policy '" + cur + "' for --policy (expected proposed,epa)");
    }
    cur.clear();
  };
  for (char c : text) {
    if (c == ',') {
      flush();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  flush();
  if (out.empty()) {
    throw scenario_error("empty policy list");
  }
  return out;
}

int cmd_run(const run_spec& spec) {
  try {
    const load_result loaded = load_scenario(spec.scenario_path);
    const scenario& sc = loaded.sc;
    for (const std::string& w : loaded.warnings) {
      std::cerr << "warning: " << w << "\n";
    }
    const std::vector<double>& utils = spec.utilizations.empty() ? sc.utilizations : spec.utilizations;
    for (double u : utils) {
      if (!(u > 0.0 && u <= 1.0)) {
        throw scenario_error("utilization override outside (0, 1]");
      }
    }

    struct job {
      std::uint64_t seed;
      double utilization;
    };
    std::vector<job> jobs;
    for (std::uint64_t seed : spec.seeds) {
      for (double u : utils) {
        jobs.push_back({seed, u});
      }
    }

    std::vector<cell_result> cells(jobs.size());
    std::vector<std::string> failures(jobs.size());
    std::atomic<std::size_t> next{0};
    const int workers = worker_count(spec.workers, jobs.size());
    auto work = [&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= jobs.size()) {
          return;
        }
        try {
          cells[i] = run_cell(sc, spec.policies, jobs[i].seed, jobs[i].utilization);
        } catch (const std::exception& e) {
          failures[i] = e.what();
        }
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back(work);
    }
    for (auto& th : pool) {
      th.join();
    }
    for (const std::string& f : failures) {
      if (!f.empty()) {
        throw invariant_error(f);
      }
    }

    result_set rs;
    rs.scenario_path = loaded.source_path;
    rs.scenario_hash = loaded.file_hash;
    rs.defaults_filled = loaded.defaults_filled;
    rs.scenario_echo = format_scenario(sc);
    for (cell_result& cell : cells) {
      auto& r = cell.rows;
      rs.collisions.insert(rs.collisions.end(), r.collisions.begin(), r.collisions.end());
      rs.actions.insert(rs.actions.end(), r.actions.begin(), r.actions.end());
      rs.sumrate_dl.insert(rs.sumrate_dl.end(), r.sumrate_dl.begin(), r.sumrate_dl.end());
      rs.sumrate_ul.insert(rs.sumrate_ul.end(), r.sumrate_ul.begin(), r.sumrate_ul.end());
    }
    const manifest mf = persist_results(rs, spec.out_dir);
    std::cout << "wrote " << mf.files.size() << " files to " << spec.out_dir << "\n";
    return exit_ok;
  } catch (const scenario_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_scenario_error;
  } catch (const invariant_error& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return exit_invariant_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_io_error;
  }
}

int cmd_report(const std::vector<std::string>& result_dirs, const std::string& out_dir,
               double utilization) {
  try {
    const report_inputs in = read_result_dirs(result_dirs);
    write_reports(in, out_dir, utilization);
    std::cout << "report written to " << out_dir << "\n";
    return exit_ok;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_io_error;
  }
}

int cmd_validate(const std::string& scenario_path) {
  try {
    const load_result loaded = load_scenario(scenario_path);
    for (const auto& [key, value] : loaded.defaults_filled) {
      std::cout << "default " << key << " = " << value << "\n";
    }
    for (const std::string& w : loaded.warnings) {
      std::cout << "warning: " << w << "\n";
    }
    std::cout << "scenario ok: " << loaded.sc.bs.size() << " sites, " << loaded.sc.satellites.size()
              << " satellites, " << loaded.sc.band.n_prb << " PRBs\n";
    return exit_ok;
  } catch (const scenario_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_scenario_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_io_error;
  }
}

} // namespace coexsim
