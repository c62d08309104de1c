#include "coexsim/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "coexsim/persist.hpp"

namespace coexsim {

namespace {

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& p) {
  std::ifstream f(p);
  if (!f) {
    throw std::runtime_error("cannot read '" + p.string() + "'");
  }
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool header = true;
  while (std::getline(f, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) {
      continue;
    }
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        cells.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    cells.push_back(cur);
    rows.push_back(std::move(cells));
  }
  return rows;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) {
    throw std::runtime_error("cannot write '" + p.string() + "'");
  }
  return f;
}

double quantile_of(const std::vector<double>& samples, double p) {
  return empirical_cdf(samples).quantile(p);
}

} // namespace

report_inputs read_result_dirs(const std::vector<std::string>& dirs) {
  namespace fs = std::filesystem;
  report_inputs in;
  // (policy, seed, util) -> total collisions; zero-collision runs are
  // recovered from the sum-rate / action files' (policy, seed, util) keys.
  std::map<std::tuple<std::string, std::uint64_t, double>, long> totals;
  std::set<std::tuple<std::string, std::uint64_t, double>> keys;

  for (const std::string& dir : dirs) {
    for (const auto& r : read_csv(fs::path(dir) / "collisions.csv")) {
      const auto key = std::make_tuple(r[0], static_cast<std::uint64_t>(std::stoull(r[1])), std::stod(r[2]));
      keys.insert(key);
      ++totals[key];
    }
    for (int d = 0; d < 2; ++d) {
      const auto name = d == 0 ? "sumrate_dl.csv" : "sumrate_ul.csv";
      auto& dest = d == 0 ? in.sumrate_dl : in.sumrate_ul;
      for (const auto& r : read_csv(fs::path(dir) / name)) {
        const auto key = std::make_tuple(r[0], static_cast<std::uint64_t>(std::stoull(r[1])), std::stod(r[2]));
        keys.insert(key);
        totals.try_emplace(key, 0);
        dest[{r[0], std::stod(r[2])}].push_back(std::stod(r[4]));
      }
    }
    for (const auto& r : read_csv(fs::path(dir) / "actions.csv")) {
      const auto key = std::make_tuple(r[0], static_cast<std::uint64_t>(std::stoull(r[1])), std::stod(r[2]));
      keys.insert(key);
      totals.try_emplace(key, 0);
    }
  }
  for (const auto& key : keys) {
    in.collision_totals.emplace_back(std::get<0>(key), std::get<1>(key), std::get<2>(key), totals[key]);
  }
  return in;
}

std::vector<quantile_row> quantile_table(const report_inputs& in, double utilization) {
  std::vector<quantile_row> out;
  for (int d = 0; d < 2; ++d) {
    const auto& src = d == 0 ? in.sumrate_dl : in.sumrate_ul;
    const auto epa_it = src.find({"epa", utilization});
    const auto prop_it = src.find({"proposed", utilization});
    if (epa_it == src.end() || prop_it == src.end() || epa_it->second.empty() || prop_it->second.empty()) {
      throw std::runtime_error("quantile_table: missing policy data for direction " +
                               std::string(d == 0 ? "dl" : "ul"));
    }
    for (double p : {0.6, 0.8}) {
      quantile_row row;
      row.direction = static_cast<link_direction>(d);
      row.p = p;
      row.epa = quantile_of(epa_it->second, p);
      row.proposed = quantile_of(prop_it->second, p);
      row.ratio_proposed_over_epa = row.epa == 0.0 ? std::numeric_limits<double>::infinity()
                                                   : row.proposed / row.epa;
      out.push_back(row);
    }
  }
  return out;
}

std::vector<double> cdf_abscissae(const empirical_cdf& cdf, int even_points) {
  const double hi = cdf.sorted_samples().back();
  std::vector<double> xs;
  xs.reserve(even_points + cdf.sorted_samples().size());
  for (int i = 0; i < even_points; ++i) {
    xs.push_back(even_points == 1 ? 0.0 : hi * i / (even_points - 1));
  }
  xs.insert(xs.end(), cdf.sorted_samples().begin(), cdf.sorted_samples().end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

std::string render_svg_chart(const std::string& title, const std::string& x_label,
                             const std::string& y_label, const std::vector<chart_series>& series,
                             bool step) {
  const double width = 720, height = 480;
  const double ml = 70, mr = 20, mt = 40, mb = 50;
  double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
  bool first = true;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if (first) {
        x_lo = x_hi = x;
        y_lo = y_hi = y;
        first = false;
      }
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  if (x_hi == x_lo) {
    x_hi = x_lo + 1;
  }
  if (y_hi == y_lo) {
    y_hi = y_lo + 1;
  }
  auto px = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * (width - ml - mr); };
  auto py = [&](double y) { return height - mb - (y - y_lo) / (y_hi - y_lo) * (height - mt - mb); };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"16\">" << title
     << "</text>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr << "\" y2=\""
     << height - mb << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << height - mb
     << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = x_lo + (x_hi - x_lo) * i / 4;
    const double fy = y_lo + (y_hi - y_lo) * i / 4;
    os << "<text x=\"" << px(fx) << "\" y=\"" << height - mb + 18
       << "\" text-anchor=\"middle\" font-size=\"11\">" << format_csv_double(fx) << "</text>\n";
    os << "<text x=\"" << ml - 8 << "\" y=\"" << py(fy) + 4
       << "\" text-anchor=\"end\" font-size=\"11\">" << format_csv_double(fy) << "</text>\n";
  }
  os << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 12
     << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label << "</text>\n";
  os << "<text x=\"16\" y=\"" << (mt + height - mb) / 2
     << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 " << (mt + height - mb) / 2
     << ")\">" << y_label << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& pts = series[si].points;
    if (pts.empty()) {
      continue;
    }
    os << "<polyline fill=\"none\" stroke=\"" << colors[si % 4] << "\" stroke-width=\"1.8\" points=\"";
    double prev_y = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (step && i > 0) {
        os << px(pts[i].first) << "," << py(prev_y) << " ";
      }
      os << px(pts[i].first) << "," << py(pts[i].second) << " ";
      prev_y = pts[i].second;
    }
    os << "\"/>\n";
    os << "<text x=\"" << width - mr - 8 << "\" y=\"" << mt + 18 * (si + 1)
       << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << colors[si % 4] << "\">" << series[si].name
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_reports(const report_inputs& in, const std::string& out_dir, double utilization) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create report directory '" + out_dir + "': " + ec.message());
  }

  const auto summary = collision_summary(in.collision_totals);
  if (summary.empty()) {
    throw std::runtime_error("write_reports: no collision data found");
  }
  {
    auto f = open_out(fs::path(out_dir) / "collision_summary.csv");
    f << "policy,utilization,mean_collisions,std_error,n_seeds\n";
    for (const auto& [key, cell] : summary) {
      f << key.first << ',' << format_csv_double(key.second) << ',' << format_csv_double(cell.mean) << ','
        << format_csv_double(cell.std_error) << ',' << cell.n_seeds << '\n';
    }
  }
  {
    std::map<std::string, chart_series> per_policy;
    for (const auto& [key, cell] : summary) {
      auto& s = per_policy[key.first];
      s.name = key.first;
      s.points.emplace_back(key.second, cell.mean);
    }
    std::vector<chart_series> series;
    for (auto& [name, s] : per_policy) {
      std::sort(s.points.begin(), s.points.end());
      series.push_back(std::move(s));
    }
    auto f = open_out(fs::path(out_dir) / "fig_collisions.svg");
    f << render_svg_chart("Mean collisions per run", "utilization", "collisions", series, false);
  }

  if (utilization < 0.0) {
    for (const auto& [key, samples] : in.sumrate_dl) {
      utilization = std::max(utilization, key.second);
    }
  }
  if (utilization < 0.0) {
    return; // no sum-rate data persisted (single-policy runs)
  }

  const auto quantiles = quantile_table(in, utilization);
  {
    auto f = open_out(fs::path(out_dir) / "quantiles.csv");
    f << "direction,p,epa,proposed,ratio_proposed_over_epa\n";
    for (const auto& q : quantiles) {
      f << to_string(q.direction) << ',' << format_csv_double(q.p) << ',' << format_csv_double(q.epa) << ','
        << format_csv_double(q.proposed) << ',' << format_csv_double(q.ratio_proposed_over_epa) << '\n';
    }
  }

  for (int d = 0; d < 2; ++d) {
    const auto& src = d == 0 ? in.sumrate_dl : in.sumrate_ul;
    const std::string dir_name = d == 0 ? "dl" : "ul";
    std::vector<chart_series> series;
    auto f = open_out(fs::path(out_dir) / ("cdf_" + dir_name + ".csv"));
    f << "policy,w,F\n";
    for (const std::string policy : {"epa", "proposed"}) {
      const auto it = src.find({policy, utilization});
      if (it == src.end() || it->second.empty()) {
        throw std::runtime_error("write_reports: missing " + policy + " sum-rate data (" + dir_name + ")");
      }
      const empirical_cdf cdf(it->second);
      chart_series s;
      s.name = policy;
      for (double w : cdf_abscissae(cdf)) {
        const double F = cdf.value(w);
        f << policy << ',' << format_csv_double(w) << ',' << format_csv_double(F) << '\n';
        s.points.emplace_back(w, F);
      }
      series.push_back(std::move(s));
    }
    auto fig = open_out(fs::path(out_dir) / ("fig_cdf_" + dir_name + ".svg"));
    fig << render_svg_chart("Sum-rate capacity CDF (" + dir_name + ")", "bits per channel use", "F(w)",
                            series, true);
  }
}

} // namespace coexsim
