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

#include "dacbf/dynamics.hpp"

#include <cmath>
#include <sstream>

namespace dacbf
{

Vec SystemModel::exo_value(Seconds t) const
{
  if (!exogenous.value) return Vec::Zero(n);
  return exogenous.value(t);
}

Vec SystemModel::exo_average(Seconds t0, Seconds t1) const
{
  if (!exogenous.average) return exo_value(t0);
  if (t1 - t0 <= 0.0) return exo_value(t0);
  return exogenous.average(t0, t1);
}

Vec SystemModel::f(const Vec& x, Seconds t) const { return drift(x) + exo_value(t); }

Vec rk4_held(const SystemModel& model, const Vec& x, const Vec& u, const Vec& w, double h)
{
  auto rhs = [&](const Vec& s) -> Vec { return model.drift(s) + model.input_gain(s) * u + w; };
  const Vec k1 = rhs(x);
  const Vec k2 = rhs(x + 0.5 * h * k1);
  const Vec k3 = rhs(x + 0.5 * h * k2);
  const Vec k4 = rhs(x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

PlantState step(const SystemModel& model, const PlantState& state, const TimedInputBuffer& buffer,
                Seconds delay, Seconds dt)
{
  if (!(dt > 0.0)) throw ContractError("step: dt must be positive");
  const Vec u = buffer.average(state.t - delay, state.t + dt - delay);
  const Vec w = model.exo_average(state.t, state.t + dt);
  return {state.t + dt, rk4_held(model, state.x, u, w, dt)};
}

Vec integrate_delayed(const SystemModel& model, const TimedInputBuffer& buffer, const Vec& x0,
                      Seconds t0, Seconds t1, Seconds delay, Seconds h, Trajectory* out)
{
  if (!(h > 0.0)) throw ContractError("integrate_delayed: step must be positive");
  Vec x = x0;
  Seconds t = t0;
  if (out) out->push_back({t, x});
  while (t < t1 - kTimeEps) {
    const Seconds next = std::min(t1, t + h);
    const Vec u = buffer.average(t - delay, next - delay);
    const Vec w = model.exo_average(t, next);
    x = rk4_held(model, x, u, w, next - t);
    t = next;
    if (out) out->push_back({t, x});
  }
  return x;
}

double operator_norm(const Mat& a)
{
  if (a.size() == 0) return 0.0;
  if (a.cols() == 1) return a.col(0).norm();
  if (a.rows() == 1) return a.row(0).norm();
  return Eigen::JacobiSVD<Mat>(a).singularValues()(0);
}

long steps_for(Seconds span, Seconds dt)
{
  if (!(dt > 0.0)) throw ContractError("steps_for: dt must be positive");
  const double ratio = span / dt;
  const long n = std::lround(ratio);
  if (std::abs(ratio - static_cast<double>(n)) > 1e-6) {
    std::ostringstream os;
    os << "span " << span << " is not a multiple of dt " << dt;
    throw ContractError(os.str());
  }
  return n;
}

Trajectory simulate(const SystemModel& model, const Vec& x0, const StateFeedback& controller,
                    Seconds delay, Seconds t_end, Seconds dt, const Vec* pre_run)
{
  if (delay < 0.0) throw ContractError("simulate: negative delay");
  const long n_steps = steps_for(t_end, dt);
  std::optional<Vec> pre;
  if (pre_run) pre = *pre_run;
  TimedInputBuffer buffer(model.m, delay + 2.0 * dt + 1.0, dt, 0.0, pre);

  Trajectory traj;
  traj.reserve(static_cast<std::size_t>(n_steps + 1));
  PlantState state{0.0, x0};
  traj.push_back(state);
  for (long k = 0; k < n_steps; ++k) {
    state.t = static_cast<double>(k) * dt;
    buffer.push(state.t, controller(state.t, state.x));
    state = step(model, state, buffer, delay, dt);
    state.t = static_cast<double>(k + 1) * dt;
    if (!all_finite(state.x)) {
      std::ostringstream os;
      os << "simulate: non-finite state after step " << k;
      throw DivergenceError(os.str(), k);
    }
    traj.push_back(state);
  }
  return traj;
}

}  // namespace dacbf
