#pragma once

#include <map>
#include <string>
#include <vector>

#include "coexsim/metrics.hpp"

namespace coexsim {

/// Everything the report phase reads back from persisted CSVs.
struct report_inputs {
  std::vector<run_total> collision_totals; // per (policy, seed, utilization)
  // (policy, utilization) -> sum-rate samples, per direction
  std::map<std::pair<std::string, double>, std::vector<double>> sumrate_dl;
  std::map<std::pair<std::string, double>, std::vector<double>> sumrate_ul;
};

/// Loads collisions.csv / sumrate_*.csv from each result directory. Only the
/// persisted files are consulted, so reports are reproducible from disk.
report_inputs read_result_dirs(const std::vector<std::string>& dirs);

struct quantile_row {
  link_direction direction = link_direction::downlink;
  double p = 0.0;
  double epa = 0.0;
  double proposed = 0.0;
  double ratio_proposed_over_epa = 0.0;
};

/// F^-1(0.6) and F^-1(0.8) per policy and direction at one utilization.
std::vector<quantile_row> quantile_table(const report_inputs& in, double utilization);

/// 512 evenly spaced abscissae over [0, max sample] merged with the exact
/// sample points.
std::vector<double> cdf_abscissae(const empirical_cdf& cdf, int even_points = 512);

/// Writes collision_summary.csv, quantiles.csv, cdf_{dl,ul}.csv and the SVG
/// figures into `out_dir`. `utilization` < 0 selects the largest utilization
/// present. Throws std::runtime_error when a policy's data is missing.
void write_reports(const report_inputs& in, const std::string& out_dir, double utilization = -1.0);

/// Minimal standalone SVG line chart; `step` renders staircase curves.
struct chart_series {
  std::string name;
  std::vector<std::pair<double, double>> points;
};
std::string render_svg_chart(const std::string& title, const std::string& x_label,
                             const std::string& y_label, const std::vector<chart_series>& series,
                             bool step);

} // namespace coexsim
