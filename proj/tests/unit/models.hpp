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

#include <cmath>
#include <functional>
#include <vector>

#include "dacbf/dynamics.hpp"
#include "dacbf/truck.hpp"

namespace testing_models
{

using dacbf::Mat;
using dacbf::Seconds;
using dacbf::Vec;

/// x' = a x + u (scalar).
inline dacbf::SystemModel scalar_model(double a = 0.0)
{
  dacbf::SystemModel m;
  m.n = 1;
  m.m = 1;
  m.drift = [a](const Vec& x) { return Vec::Constant(1, a * x(0)); };
  m.input_gain = [](const Vec&) { return Mat::Constant(1, 1, 1.0); };
  m.lipschitz_f = std::abs(a);
  return m;
}

/// Open-loop run of a model under a known input signal, keeping the full input history.
struct Recorded
{
  dacbf::TimedInputBuffer inputs;
  std::vector<Vec> xs;
  Seconds dt;

  const Vec& at(Seconds t) const { return xs[static_cast<std::size_t>(std::lround(t / dt))]; }
};

inline Recorded record(const dacbf::SystemModel& model, const Vec& x0, const std::function<double(Seconds)>& u,
                       Seconds delay, Seconds t_end, Seconds dt = 1e-3)
{
  Recorded r{dacbf::TimedInputBuffer(model.m, t_end + 10.0, dt, 0.0, Vec::Zero(model.m)), {x0}, dt};
  dacbf::PlantState s{0.0, x0};
  const long n = dacbf::steps_for(t_end, dt);
  for (long k = 0; k < n; ++k) {
    s.t = k * dt;
    r.inputs.push(s.t, Vec::Constant(model.m, u(s.t)));
    s = dacbf::step(model, s, r.inputs, delay, dt);
    r.xs.push_back(s.x);
  }
  return r;
}

/// Smooth, non-constant input used across predictor tests.
inline double wavy(Seconds t) { return 0.8 * std::sin(1.7 * t) + 0.5 * std::cos(3.1 * t + 0.4) - 0.2; }

inline Vec truck_x0() { return (Vec(3) << 30.0, 10.0, 12.0).finished(); }

}  // namespace testing_models
