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

#include <functional>
#include <vector>

#include "dacbf/history.hpp"
#include "dacbf/types.hpp"

namespace dacbf
{

/// Known, state-independent forcing term e(t) added to the drift.
struct ExogenousSignal
{
  std::function<Vec(Seconds)> value;
  /// Exact mean of value() over [t0, t1].
  std::function<Vec(Seconds, Seconds)> average;
};

/**
 * Control-affine model  x' = f(x, t) + g(x) u(t - D)  with
 * f(x, t) = drift(x) + exogenous(t).
 *
 * The Lipschitz constants refer to the state dependence (Euclidean norm for
 * vectors, induced 2-norm for g).
 */
struct SystemModel
{
  int n = 0;
  int m = 0;
  std::function<Vec(const Vec&)> drift;
  std::function<Mat(const Vec&)> input_gain;
  ExogenousSignal exogenous;  // empty functions mean zero forcing
  double lipschitz_f = 0.0;
  double lipschitz_g = 0.0;

  Vec f(const Vec& x, Seconds t) const;
  Mat g(const Vec& x) const { return input_gain(x); }
  Vec exo_value(Seconds t) const;
  Vec exo_average(Seconds t0, Seconds t1) const;
};

struct PlantState
{
  Seconds t = 0.0;
  Vec x;
};

using Trajectory = std::vector<PlantState>;

/// One classical RK4 step with input u and forcing w held over the step.
Vec rk4_held(const SystemModel& model, const Vec& x, const Vec& u, const Vec& w, double h);

/**
 * Advance the delayed plant by dt. The delayed input over the step is the
 * exact mean of the held history on [t - delay, t + dt - delay]; for delays
 * on the sample grid this is the sample taken at step start.
 */
PlantState step(const SystemModel& model, const PlantState& state, const TimedInputBuffer& buffer,
                Seconds delay, Seconds dt);

/**
 * Integrate x' = f + g u(tau - delay) from (t0, x0) to t1 with steps of at most
 * h (the last step is shortened). When `out` is non-null every node, including
 * the start, is appended.
 */
Vec integrate_delayed(const SystemModel& model, const TimedInputBuffer& buffer, const Vec& x0,
                      Seconds t0, Seconds t1, Seconds delay, Seconds h, Trajectory* out = nullptr);

using StateFeedback = std::function<Vec(Seconds, const Vec&)>;

/**
 * Closed-loop run: at every step the controller output is pushed into a fresh
 * input buffer, then the delayed plant is advanced. Returns t_end/dt + 1 states.
 */
Trajectory simulate(const SystemModel& model, const Vec& x0, const StateFeedback& controller,
                    Seconds delay, Seconds t_end, Seconds dt, const Vec* pre_run = nullptr);

/// Induced 2-norm (largest singular value).
double operator_norm(const Mat& a);

/// Round t/dt to a step count, rejecting values that are not multiples of dt.
long steps_for(Seconds span, Seconds dt);

}  // namespace dacbf
