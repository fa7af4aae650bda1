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


#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dacbf/bound_updater.hpp"
#include "dacbf/config.hpp"

namespace dacbf
{

/// One control step. Columns of steps.csv, in this order.
struct StepRecord
{
  Seconds t = 0.0;
  double xi = 0.0;
  double v = 0.0;
  double v_lead = 0.0;
  double h = 0.0;
  double u_nom = 0.0;
  double u = 0.0;
  double d_e = 0.0;
  double d_e_initial = 0.0;  // margin the same step would carry with the initial bound set
  double e_tj_max = 0.0;
  double e_max_val = 0.0;
  double delta_y_max = 0.0;
  bool feasible = true;
  Seconds d_hat = 0.0;       // estimate used by the controller at this step
  Seconds d_err = 0.0;       // true delay minus the estimate before this step's update
  double rho = 0.0;          // update direction at this step (0 while the estimator is idle)
  Seconds d_tilde_max = 0.0;
  double dist_hat = 0.0;     // observed disturbance
  double con_a = 0.0;        // barrier constraint a u >= b
  double con_b = 0.0;
};

/// One bound update. Columns of epochs.csv.
struct EpochRecord
{
  long epoch = 0;
  Seconds t = 0.0;
  Seconds lo = 0.0;
  Seconds hi = 0.0;
  Seconds d_tilde_max = 0.0;
  double residual_B = 0.0;
  double disturbance_term = 0.0;
  double total = 0.0;
  double ep_true = 0.0;   // prediction error of the true delay
  bool premise = true;    // ep_true <= total
  bool contains_true = true;
  bool feasible_empty = false;
  double e_tj_max = 0.0;      // live margin input at this step
  double e_tj_max_ref = 0.0;  // margin input on the trajectory frozen at the first epoch
};

struct RunSummary
{
  double avg_h = 0.0;  // mean of h over steps with t >= true delay
  double min_h = 0.0;  // same window
  long steps = 0;
  long infeasible_steps = 0;
  long epochs = 0;
  long premise_failures = 0;
  long empty_updates = 0;
  Seconds final_lo = 0.0;
  Seconds final_hi = 0.0;
  Seconds final_d_hat = 0.0;
};

struct RunTrace
{
  std::vector<std::pair<std::string, std::string>> header;
  std::vector<StepRecord> steps;
  std::vector<EpochRecord> epochs;
  std::vector<std::string> diagnostics;
  RunSummary summary;
};

std::string code_version();

RunTrace run(const RunConfig& cfg);

/// Recompute the summary from the step and epoch records.
RunSummary summarize(const std::vector<StepRecord>& steps, const std::vector<EpochRecord>& epochs,
                     Seconds true_delay);

struct SweepCell
{
  Seconds delay = 0.0;
  Mode mode = Mode::proposed;
  bool ok = false;
  std::string error;
  RunSummary summary;
};

struct SweepTable
{
  std::vector<Seconds> delays;
  std::vector<Mode> modes;
  std::vector<SweepCell> cells;  // mode-major: cells[i_mode * delays.size() + i_delay]

  const SweepCell& cell(std::size_t i_mode, std::size_t i_delay) const
  {
    return cells[i_mode * delays.size() + i_delay];
  }
  /// Mean avg_h over the successful cells of a mode row.
  double row_average(std::size_t i_mode) const;
};

/// Runs every (mode, delay) cell on a worker pool; a failing cell is marked, siblings continue.
SweepTable sweep(const RunConfig& base, const std::vector<Seconds>& delays, const std::vector<Mode>& modes,
                 unsigned workers = 0);

}  // namespace dacbf
