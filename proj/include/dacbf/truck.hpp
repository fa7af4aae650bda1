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

#include "dacbf/observer.hpp"
#include "dacbf/safety.hpp"

namespace dacbf::truck
{

/// Lead vehicle acceleration: `cruise_accel` except on [brake_start, brake_end).
struct LeadProfile
{
  double cruise_accel = 0.0;
  Seconds brake_start = 5.0;
  Seconds brake_end = 8.0;
  double brake_accel = -3.0;

  double accel(Seconds t) const;
  /// Exact mean acceleration over [t0, t1].
  double mean_accel(Seconds t0, Seconds t1) const;
};

/// Following-truck scenario; state x = [gap xi, follower speed v, lead speed v_L].
struct TruckParams
{
  double xi_sf = 5.0;      // m, stop distance
  double T_headway = 1.0;  // s
  double xi_st = 5.0;      // m
  double k_gain = 1.0;     // 1/s
  double v_max = 15.0;     // m/s
  double A_gain = 0.4;     // 1/s
  double B_gain = 0.5;     // 1/s
  double u_min = -6.0;     // m/s^2
  double u_max = 3.0;      // m/s^2
  LeadProfile lead;

  void validate() const;
  InputBox box() const;
  /// Largest input magnitude the box allows.
  double u_bound() const;
};

Vec default_initial_state();

SystemModel truck_model(const TruckParams& params);

/// h = xi - xi_sf - T v with alpha(s) = alpha0 s.
BarrierFunction barrier(const TruckParams& params, double alpha0);

/// Unclamped nominal acceleration A (V(xi) - v) + B (W(v_L) - v).
Vec nominal(const TruckParams& params, const Vec& x);

double V_policy(const TruckParams& params, double xi);
double W_policy(const TruckParams& params, double v_lead);

/// P(x) = v, L_d = [0 1 0]: L_d g = 1.
GainFunctions observer_gains();

}  // namespace dacbf::truck
