// Copyright 2026 The dacbf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line front end: single runs, delay sweeps and a default-config dump.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dacbf/trace_io.hpp"

namespace
{

dacbf::RunConfig config_from(const std::string& path)
{
  return path.empty() ? dacbf::RunConfig{} : dacbf::load_config(path);
}

std::vector<double> parse_delays(const std::string& text)
{
  std::vector<double> out;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw dacbf::ConfigError("--delays: cannot parse '" + item + "'");
    }
  }
  if (out.empty()) throw dacbf::ConfigError("--delays: empty list");
  return out;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Delay-adaptive safety filter simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string mode;
  std::string out_dir = "out";
  auto* run_cmd = app.add_subcommand("run", "Simulate one configuration and write its trace");
  run_cmd->add_option("--config", config_path, "INI configuration file (defaults when omitted)");
  run_cmd->add_option("--mode", mode, "dacbf_baseline | proposed | unfiltered | delay_free");
  run_cmd->add_option("--out", out_dir, "Output directory");

  std::string delays_text = "0.1,0.2,0.3,0.4,0.5";
  std::string sweep_config;
  std::string sweep_out = "sweep";
  unsigned workers = 0;
  auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate average h over delays for baseline and proposed");
  sweep_cmd->add_option("--config", sweep_config, "INI configuration file (defaults when omitted)");
  sweep_cmd->add_option("--delays", delays_text, "Comma-separated true delays in seconds");
  sweep_cmd->add_option("--out", sweep_out, "Output directory");
  sweep_cmd->add_option("--workers", workers, "Worker threads (0 = hardware concurrency)");

  auto* dump_cmd = app.add_subcommand("defaults", "Print the default configuration as INI");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*dump_cmd) {
      std::cout << dacbf::to_ini(dacbf::RunConfig{});
      return 0;
    }
    if (*run_cmd) {
      dacbf::RunConfig cfg = config_from(config_path);
      if (!mode.empty()) cfg.mode = dacbf::parse_mode(mode);
      const dacbf::RunTrace trace = dacbf::run(cfg);
      dacbf::export_trace(trace, out_dir);
      const auto& s = trace.summary;
      std::cout << "mode=" << dacbf::to_string(cfg.mode) << " D=" << cfg.true_delay << " avg_h=" << s.avg_h
                << " min_h=" << s.min_h << " infeasible_steps=" << s.infeasible_steps << " bounds=[" << s.final_lo
                << ", " << s.final_hi << "] d_hat=" << s.final_d_hat << '\n';
      for (const auto& d : trace.diagnostics) std::cerr << "warning: " << d << '\n';
      if (dacbf::is_asserting(cfg.mode) && s.min_h < 0.0) {
        std::cerr << "safety violated: min h = " << s.min_h << '\n';
        return 2;
      }
      return 0;
    }
    if (*sweep_cmd) {
      const dacbf::RunConfig cfg = config_from(sweep_config);
      const auto delays = parse_delays(delays_text);
      const dacbf::SweepTable table =
          dacbf::sweep(cfg, delays, {dacbf::Mode::dacbf_baseline, dacbf::Mode::proposed}, workers);
      std::filesystem::create_directories(sweep_out);
      std::ofstream f(std::filesystem::path(sweep_out) / "table.csv");
      if (!f) throw std::runtime_error(sweep_out + "/table.csv: cannot open");
      dacbf::write_sweep(f, table);
      dacbf::write_sweep(std::cout, table);
      int code = 0;
      for (const auto& c : table.cells) {
        if (!c.ok) {
          std::cerr << "cell " << dacbf::to_string(c.mode) << " D=" << c.delay << " failed: " << c.error << '\n';
          code = 1;
        } else if (c.summary.min_h < 0.0 && code == 0) {
          std::cerr << "safety violated: " << dacbf::to_string(c.mode) << " D=" << c.delay
                    << " min h = " << c.summary.min_h << '\n';
          code = 2;
        }
      }
      return code;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
