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

#include "dacbf/truck.hpp"

#include <algorithm>
#include <cmath>

namespace dacbf::truck
{

double LeadProfile::accel(Seconds t) const
{
  return (t >= brake_start && t < brake_end) ? brake_accel : cruise_accel;
}

double LeadProfile::mean_accel(Seconds t0, Seconds t1) const
{
  if (t1 <= t0) return accel(t0);
  const double overlap = std::max(0.0, std::min(t1, brake_end) - std::max(t0, brake_start));
  return (brake_accel * overlap + cruise_accel * ((t1 - t0) - overlap)) / (t1 - t0);
}

void TruckParams::validate() const
{
  if (!(xi_sf > 0.0)) throw ContractError("scenario.xi_sf must be > 0");
  if (!(T_headway > 0.0)) throw ContractError("scenario.T_headway must be > 0");
  if (!(v_max > 0.0)) throw ContractError("scenario.v_max must be > 0");
  if (!(u_min < 0.0 && 0.0 < u_max)) throw ContractError("scenario: need u_min < 0 < u_max");
  if (lead.brake_end < lead.brake_start) throw ContractError("scenario.lead: brake_end before brake_start");
}

InputBox TruckParams::box() const { return {Vec::Constant(1, u_min), Vec::Constant(1, u_max)}; }

double TruckParams::u_bound() const { return std::max(std::abs(u_min), std::abs(u_max)); }

Vec default_initial_state() { return (Vec(3) << 31.0, 10.0, 12.0).finished(); }

SystemModel truck_model(const TruckParams& params)
{
  SystemModel m;
  m.n = 3;
  m.m = 1;
  m.drift = [](const Vec& x) { return (Vec(3) << x(2) - x(1), 0.0, 0.0).finished(); };
  m.input_gain = [](const Vec&) { return (Mat(3, 1) << 0.0, 1.0, 0.0).finished(); };
  const LeadProfile lead = params.lead;
  m.exogenous.value = [lead](Seconds t) { return (Vec(3) << 0.0, 0.0, lead.accel(t)).finished(); };
  m.exogenous.average = [lead](Seconds t0, Seconds t1) {
    return (Vec(3) << 0.0, 0.0, lead.mean_accel(t0, t1)).finished();
  };
  // Jacobian of the drift is the constant [[0,-1,1],[0,0,0],[0,0,0]].
  m.lipschitz_f = std::sqrt(2.0);
  m.lipschitz_g = 0.0;
  return m;
}

BarrierFunction barrier(const TruckParams& params, double alpha0)
{
  const double T = params.T_headway;
  const double xi_sf = params.xi_sf;
  BarrierFunction bf;
  bf.h = [T, xi_sf](const Vec& x) { return x(0) - xi_sf - T * x(1); };
  bf.grad_h = [T](const Vec&) { return (Vec(3) << 1.0, -T, 0.0).finished(); };
  bf.alpha = linear_alpha(alpha0);
  bf.lip_Lfh = std::sqrt(2.0);  // L_f h = v_L - v
  bf.lip_Lgh = 0.0;             // L_g h = -T
  bf.lip_alpha_h = alpha0 * std::sqrt(1.0 + T * T);
  return bf;
}

double V_policy(const TruckParams& p, double xi) { return std::min(p.k_gain * (xi - p.xi_st), p.v_max); }

double W_policy(const TruckParams& p, double v_lead) { return std::min(v_lead, p.v_max); }

Vec nominal(const TruckParams& p, const Vec& x)
{
  const double v = x(1);
  return Vec::Constant(1, p.A_gain * (V_policy(p, x(0)) - v) + p.B_gain * (W_policy(p, x(2)) - v));
}

GainFunctions observer_gains()
{
  GainFunctions g;
  g.P = [](const Vec& x) { return Vec::Constant(1, x(1)); };
  g.L_d = [](const Vec&) { return (Mat(1, 3) << 0.0, 1.0, 0.0).finished(); };
  return g;
}

}  // namespace dacbf::truck
