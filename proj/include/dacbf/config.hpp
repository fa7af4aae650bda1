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

#include "dacbf/predictor.hpp"
#include "dacbf/truck.hpp"

namespace dacbf
{

enum class Mode
{
  dacbf_baseline,
  proposed,
  unfiltered,
  delay_free,
};

std::string to_string(Mode m);
Mode parse_mode(const std::string& s);

/// Modes whose runs are expected to stay safe (and whose delay bounds must contain the true delay).
bool is_asserting(Mode m);

struct EstimatorConfig
{
  double gamma = 40.0;
  Seconds d_hat0 = 0.0;
};

struct ObserverConfig
{
  double alpha_h = 20.0;
  double c = 20.0;
  double w1_floor = 0.1;
};

struct BoundsConfig
{
  Seconds lo0 = 0.0;
  Seconds hi0 = 2.0;
  int n_grid = 201;
  Seconds tol = 1e-3;
  Seconds t_update = 0.1;
  Seconds activation = 2.5;  // >= beta + hi0
};

struct SafetyConfig
{
  double alpha0 = 1.0;
  int n_scan = 41;
  int n_quad = 64;             // trapezoid nodes for e_max
  double udot_max = 0.05;      // m/s^3
  double udot_max_ceiling = 10.0;
  Seconds forward_step = 0.01;  // step of the forward nominal simulation
};

struct SimConfig
{
  Seconds dt = 1e-3;
  Seconds t_end = 20.0;
  unsigned long seed = 1;
};

struct RunConfig
{
  truck::TruckParams scenario;
  Vec x0 = truck::default_initial_state();
  Seconds true_delay = 0.5;
  Mode mode = Mode::proposed;
  EstimatorConfig estimator;
  ObserverConfig observer;
  PredictorConfig predictor;
  BoundsConfig bounds;
  SafetyConfig safety;
  SimConfig sim;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Read an INI file over the defaults. Unknown sections or keys are rejected.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text);

/// Every field as ("section.key", value), in a fixed order; numbers use 17 significant digits.
std::vector<std::pair<std::string, std::string>> echo(const RunConfig& cfg);

/// INI text that parses back to `cfg`.
std::string to_ini(const RunConfig& cfg);

}  // namespace dacbf
