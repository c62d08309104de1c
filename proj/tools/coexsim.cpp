#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coexsim/cli.hpp"
#include "coexsim/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"coexsim — system-level simulator for terrestrial/LEO spectrum coexistence"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string policy_text = "proposed,epa";
  std::string seed_text = "1";
  std::string util_text;
  std::string out_dir;
  int workers = 0;

  CLI::App* run_cmd = app.add_subcommand("run", "run the (policy x seed x utilization) grid");
  run_cmd->add_option("--scenario", scenario_path, "scenario file")->required();
  run_cmd->add_option("--policy", policy_text, "comma list: proposed,epa");
  run_cmd->add_option("--seeds", seed_text, "seed list, e.g. 1..20 or 1,5,9");
  run_cmd->add_option("--utils", util_text, "utilization overrides, e.g. 0.1,1.0");
  run_cmd->add_option("--out", out_dir, "output directory")->required();
  run_cmd->add_option("--workers", workers, "worker pool size (or COEXSIM_WORKERS)");

  std::vector<std::string> report_dirs;
  std::string report_out;
  double report_util = -1.0;
  CLI::App* report_cmd = app.add_subcommand("report", "summaries, quantiles and figures from result dirs");
  report_cmd->add_option("dirs", report_dirs, "result directories")->required()->expected(-1);
  report_cmd->add_option("--out", report_out, "report output directory (default: first result dir)");
  report_cmd->add_option("--utilization", report_util, "utilization for CDF/quantiles (default: largest)");

  std::string validate_path;
  CLI::App* validate_cmd = app.add_subcommand("validate", "validate a scenario file");
  validate_cmd->add_option("path", validate_path, "scenario file")->required();

  CLI11_PARSE(app, argc, argv);

  if (run_cmd->parsed()) {
    coexsim::run_spec spec;
    spec.scenario_path = scenario_path;
    spec.out_dir = out_dir;
    spec.workers = workers;
    try {
      spec.policies = coexsim::parse_policy_list(policy_text);
      spec.seeds = coexsim::parse_seed_list(seed_text);
      if (!util_text.empty()) {
        for (const std::string& tok : {util_text}) {
          std::string cur;
          for (char c : tok + ",") {
            if (c == ',') {
              if (!cur.empty()) {
                spec.utilizations.push_back(std::stod(cur));
                cur.clear();
              }
            } else {
              cur += c;
            }
          }
        }
      }
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return coexsim::exit_scenario_error;
    }
    return coexsim::cmd_run(spec);
  }
  if (report_cmd->parsed()) {
    if (report_out.empty()) {
      report_out = report_dirs.front();
    }
    return coexsim::cmd_report(report_dirs, report_out, report_util);
  }
  return coexsim::cmd_validate(validate_path);
}
