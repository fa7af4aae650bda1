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


#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "dacbf/trace_io.hpp"

using namespace dacbf;

namespace
{
RunConfig short_run(Mode mode = Mode::proposed)
{
  RunConfig cfg;
  cfg.mode = mode;
  cfg.sim.t_end = 3.0;
  return cfg;
}

std::string steps_text(const RunTrace& tr)
{
  std::ostringstream os;
  write_steps(os, tr.steps);
  return os.str();
}

std::filesystem::path scratch(const std::string& name)
{
  const auto p = std::filesystem::temp_directory_path() / ("dacbf_cli_" + name);
  std::filesystem::remove_all(p);
  return p;
}
}  // namespace

TEST_SUITE("cli")
{
  TEST_CASE("INI round trip preserves every field")
  {
    RunConfig cfg;
    cfg.true_delay = 0.3;
    cfg.mode = Mode::dacbf_baseline;
    cfg.scenario.lead.brake_accel = -2.25;
    cfg.estimator.gamma = 12.5;
    cfg.x0(0) = 33.0;
    cfg.safety.udot_max = 0.1 / 3.0;
    const RunConfig back = parse_config(to_ini(cfg));
    CHECK(echo(back) == echo(cfg));
    CHECK(back.safety.udot_max == cfg.safety.udot_max);
  }

  TEST_CASE("unknown keys and sections are rejected with their path")
  {
    try {
      parse_config("[run]\nmode = proposed\nbogus = 1\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("run.bogus") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("[nowhere]\nx = 1\n"), ConfigError);
  }

  TEST_CASE("malformed values are rejected")
  {
    CHECK_THROWS_AS(parse_config("[estimator]\ngamma = fast\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[run]\nmode = sideways\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[sim]\ndt = 0.0015\nt_end = 1\n"), ConfigError);
  }

  TEST_CASE("true delay must lie in the initial bounds for asserting modes only")
  {
    CHECK_THROWS_AS(parse_config("[run]\ntrue_delay = 2.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[bounds]\nlo0 = 0.6\nactivation = 2.6\n"), ConfigError);
    CHECK_NOTHROW(parse_config("[run]\nmode = unfiltered\ntrue_delay = 2.5\n"));
  }

  TEST_CASE("observer gain must respect the step size")
  {
    CHECK_THROWS_AS(parse_config("[observer]\nalpha_h = 600\nc = 20\n"), ConfigError);
  }

  TEST_CASE("runs are deterministic")
  {
    const RunConfig cfg = short_run();
    CHECK(steps_text(run(cfg)) == steps_text(run(cfg)));
  }

  TEST_CASE("export and re-import reproduce the records exactly")
  {
    const RunTrace tr = run(short_run());
    const auto dir = scratch("export");
    export_trace(tr, dir.string());
    for (const char* f : {"steps.csv", "epochs.csv", "summary.csv", "header.ini"})
      CHECK(std::filesystem::exists(dir / f));
    const auto steps = read_steps((dir / "steps.csv").string());
    REQUIRE(steps.size() == tr.steps.size());
    for (std::size_t i = 0; i < steps.size(); ++i) {
      CHECK(steps[i].t == tr.steps[i].t);
      CHECK(steps[i].h == tr.steps[i].h);
      CHECK(steps[i].u == tr.steps[i].u);
      CHECK(steps[i].d_hat == tr.steps[i].d_hat);
      CHECK(steps[i].feasible == tr.steps[i].feasible);
    }
    const auto epochs = read_epochs((dir / "epochs.csv").string());
    REQUIRE(epochs.size() == tr.epochs.size());
    for (std::size_t i = 0; i < epochs.size(); ++i) {
      CHECK(epochs[i].lo == tr.epochs[i].lo);
      CHECK(epochs[i].hi == tr.epochs[i].hi);
    }
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("trace invariants: record count, epoch nesting, summary recomputation")
  {
    const RunConfig cfg = short_run();
    const RunTrace tr = run(cfg);
    CHECK(tr.steps.size() == 3001);
    REQUIRE_FALSE(tr.epochs.empty());
    for (std::size_t i = 1; i < tr.epochs.size(); ++i) {
      CHECK(tr.epochs[i].epoch == tr.epochs[i - 1].epoch + 1);
      CHECK(tr.epochs[i].lo >= tr.epochs[i - 1].lo);
      CHECK(tr.epochs[i].hi <= tr.epochs[i - 1].hi);
    }
    const RunSummary s = summarize(tr.steps, tr.epochs, cfg.true_delay);
    double acc = 0.0;
    long n = 0;
    for (const auto& r : tr.steps) {
      if (r.t >= cfg.true_delay - 1e-9) {
        acc += r.h;
        ++n;
      }
    }
    CHECK(s.avg_h == doctest::Approx(acc / n).epsilon(1e-12));
    CHECK(s.avg_h == tr.summary.avg_h);
    CHECK(s.epochs == static_cast<long>(tr.epochs.size()));
  }

  TEST_CASE("header carries every configuration field and the code version")
  {
    const RunConfig cfg = short_run(Mode::delay_free);
    const RunTrace tr = run(cfg);
    std::set<std::string> keys;
    for (const auto& kv : tr.header) keys.insert(kv.first);
    for (const auto& kv : echo(cfg)) CHECK(keys.count(kv.first) == 1);
    bool has_version = false;
    for (const auto& kv : tr.header)
      if (kv.second == code_version()) has_version = true;
    CHECK(has_version);
  }

  TEST_CASE("sweep table shape, ratio row and isolated failures")
  {
    RunConfig base = short_run();
    const SweepTable t = sweep(base, {0.2, 2.5}, {Mode::delay_free, Mode::dacbf_baseline}, 2);
    REQUIRE(t.cells.size() == 4);
    CHECK(t.cell(0, 0).ok);
    CHECK(t.cell(0, 1).ok);  // delay-free ignores the bound rule
    CHECK(t.cell(1, 0).ok);
    CHECK_FALSE(t.cell(1, 1).ok);
    CHECK(t.cell(1, 1).error.find("true_delay") != std::string::npos);
    CHECK(t.row_average(1) == t.cell(1, 0).summary.avg_h);

    const SweepTable both = sweep(base, {0.2, 0.4}, {Mode::dacbf_baseline, Mode::proposed}, 2);
    std::ostringstream os;
    write_sweep(os, both);
    std::istringstream is(os.str());
    std::vector<std::string> lines;
    for (std::string l; std::getline(is, l);) lines.push_back(l);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0].rfind("method", 0) == 0);
    CHECK(lines[3].rfind("ratio_proposed_over_dacbf_baseline", 0) == 0);
    const double ratio = std::stod(lines[3].substr(lines[3].rfind(',') + 1));
    CHECK(ratio == doctest::Approx(both.row_average(1) / both.row_average(0)).epsilon(1e-12));
  }

  TEST_CASE("mode names round trip")
  {
    for (Mode m : {Mode::dacbf_baseline, Mode::proposed, Mode::unfiltered, Mode::delay_free})
      CHECK(parse_mode(to_string(m)) == m);
    CHECK(is_asserting(Mode::proposed));
    CHECK_FALSE(is_asserting(Mode::unfiltered));
  }
}
