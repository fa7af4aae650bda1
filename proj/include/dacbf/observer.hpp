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

#include "dacbf/dynamics.hpp"

namespace dacbf
{

/// Observer gains; dP/dx must equal L_d and L_d(x) g(x) must dominate the identity.
struct GainFunctions
{
  std::function<Vec(const Vec&)> P;
  std::function<Mat(const Vec&)> L_d;
};

/**
 * Nonlinear disturbance observer for the matched mismatch
 * d(t) = u(t - D) - u(t - D_hat) acting on the D_hat-delayed model:
 *
 *   d_hat = z + alpha_h P(x)
 *   z'    = -alpha_h L_d(x) (f(x) + g(x)(u(t - D_hat) + d_hat))
 *
 * `w1` bounds |d'| and `e_d0_bound` bounds the initial error; both only feed
 * the analytic error envelope.
 */
struct DisturbanceObserverState
{
  Vec z;
  Vec d_hat;
  double alpha_h = 20.0;
  double c = 20.0;
  double w1 = 0.0;
  double e_d0_bound = 0.0;

  double k() const { return alpha_h - 0.5 * c; }
};

/// Validates 0 < c < 2 alpha_h and sets z so that d_hat(x0) = d_hat0.
DisturbanceObserverState make_observer(const GainFunctions& gains, const Vec& x0, const Vec& d_hat0,
                                       double alpha_h, double c, double w1, double e_d0_bound);

/// Recompute d_hat = z + alpha_h P(x) for the current measurement.
DisturbanceObserverState refresh(const DisturbanceObserverState& obs, const GainFunctions& gains, const Vec& x);

/**
 * One explicit-Euler step of z over [t, t + dt], using the current d_hat
 * (refreshed from x first). The returned state carries the advanced z and the
 * d_hat that was used; call refresh() with the next measurement to read d_hat.
 */
DisturbanceObserverState observer_step(const DisturbanceObserverState& obs, const GainFunctions& gains,
                                       const SystemModel& model, const Vec& x, Seconds t,
                                       const Vec& u_delayed_by_dhat, Seconds dt);

/// Error envelope M_d(t), t measured from observer start.
double envelope(const DisturbanceObserverState& obs, Seconds t);

/// Steady-state value of the envelope, w1 / sqrt(2 c k).
double envelope_limit(const DisturbanceObserverState& obs);

}  // namespace dacbf
