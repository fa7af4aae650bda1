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

#include "dacbf/observer.hpp"

#include <cmath>

namespace dacbf
{

DisturbanceObserverState make_observer(const GainFunctions& gains, const Vec& x0, const Vec& d_hat0,
                                       double alpha_h, double c, double w1, double e_d0_bound)
{
  if (!(alpha_h > 0.0)) throw ContractError("observer.alpha_h must be > 0");
  if (!(c > 0.0 && c < 2.0 * alpha_h)) throw ContractError("observer.c must satisfy 0 < c < 2 alpha_h");
  if (w1 < 0.0 || e_d0_bound < 0.0) throw ContractError("observer: w1 and e_d0_bound must be >= 0");
  DisturbanceObserverState obs;
  obs.alpha_h = alpha_h;
  obs.c = c;
  obs.w1 = w1;
  obs.e_d0_bound = e_d0_bound;
  obs.d_hat = d_hat0;
  obs.z = d_hat0 - alpha_h * gains.P(x0);
  return obs;
}

DisturbanceObserverState refresh(const DisturbanceObserverState& obs, const GainFunctions& gains, const Vec& x)
{
  DisturbanceObserverState next = obs;
  next.d_hat = obs.z + obs.alpha_h * gains.P(x);
  return next;
}

DisturbanceObserverState observer_step(const DisturbanceObserverState& obs, const GainFunctions& gains,
                                       const SystemModel& model, const Vec& x, Seconds t,
                                       const Vec& u_delayed_by_dhat, Seconds dt)
{
  if (!(dt > 0.0)) throw ContractError("observer_step: dt must be positive");
  DisturbanceObserverState next = refresh(obs, gains, x);
  const Vec fx = model.drift(x) + model.exo_average(t, t + dt);
  const Vec z_dot = -obs.alpha_h * gains.L_d(x) * (fx + model.g(x) * (u_delayed_by_dhat + next.d_hat));
  next.z = obs.z + dt * z_dot;
  return next;
}

double envelope(const DisturbanceObserverState& obs, Seconds t)
{
  const double k = obs.k();
  const double ck2 = 2.0 * obs.c * k;
  const double decay = std::exp(-2.0 * k * t);
  const double e0 = obs.e_d0_bound;
  return std::sqrt((ck2 * e0 * e0 * decay + obs.w1 * obs.w1 * (1.0 - decay)) / ck2);
}

double envelope_limit(const DisturbanceObserverState& obs)
{
  return obs.w1 / std::sqrt(2.0 * obs.c * obs.k());
}

}  // namespace dacbf
