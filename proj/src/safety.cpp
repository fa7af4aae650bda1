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

#include "dacbf/safety.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dacbf
{

double BarrierFunction::Lfh(const SystemModel& model, const Vec& x, Seconds t) const
{
  return grad_h(x).dot(model.f(x, t));
}

Vec BarrierFunction::Lgh(const SystemModel& model, const Vec& x) const
{
  return model.g(x).transpose() * grad_h(x);
}

std::function<double(double)> linear_alpha(double alpha0)
{
  if (!(alpha0 > 0.0)) throw ContractError("alpha0 must be > 0");
  return [alpha0](double s) { return alpha0 * s; };
}

double e_max(const SystemModel& model, const TrajectoryFn& y, Seconds t1, Seconds t2, double eps_max,
             double u_max, int n_quad)
{
  if (!(t1 < t2)) throw ContractError("e_max: need t1 < t2");
  if (n_quad < 2) throw ContractError("e_max: n_quad must be >= 2");
  if (eps_max == 0.0) return 0.0;
  const double a = model.lipschitz_f + model.lipschitz_g * (u_max + eps_max);
  const double h = (t2 - t1) / (n_quad - 1);
  double acc = 0.0;
  for (int i = 0; i < n_quad; ++i) {
    const Seconds tau = (i == n_quad - 1) ? t2 : t1 + h * i;
    const double w = (i == 0 || i == n_quad - 1) ? 0.5 : 1.0;
    acc += w * std::exp(a * (t2 - tau)) * operator_norm(model.g(y(tau)));
  }
  return eps_max * h * acc;
}

double delta_y_max(const TrajectoryFn& y, Seconds t, Seconds d_hat, Seconds d_tilde_max, int n_scan)
{
  if (d_tilde_max <= 0.0) return 0.0;
  if (n_scan < 2) throw ContractError("delta_y_max: n_scan must be >= 2");
  const Seconds center = t + d_hat;
  const Vec y0 = y(center);
  double best = 0.0;
  for (int i = 0; i < n_scan; ++i) {
    const double s = -d_tilde_max + 2.0 * d_tilde_max * i / (n_scan - 1);
    best = std::max(best, (y(center + s) - y0).norm());
  }
  return best;
}

double robust_margin(const BarrierFunction& bf, const SafetyMargins& margins, double u_norm)
{
  return (bf.lip_Lfh + bf.lip_alpha_h) * margins.e_tj_max + bf.lip_Lgh * margins.e_tj_max * u_norm;
}

BarrierConstraint barrier_constraint(const BarrierFunction& bf, const SystemModel& model, const Vec& x_pred,
                                     Seconds t_pred, double d_e)
{
  BarrierConstraint c;
  c.a = bf.Lgh(model, x_pred);
  c.b = -bf.alpha(bf.h(x_pred)) - bf.Lfh(model, x_pred, t_pred) + d_e;
  return c;
}

namespace
{

Vec clamp_box(const Vec& u, const InputBox& box) { return u.cwiseMax(box.lo).cwiseMin(box.hi); }

Vec max_slack_corner(const BarrierConstraint& con, const Vec& u_nom, const InputBox& box)
{
  Vec u = clamp_box(u_nom, box);
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (con.a(i) > 0.0) u(i) = box.hi(i);
    if (con.a(i) < 0.0) u(i) = box.lo(i);
  }
  return u;
}

}  // namespace

FilterResult filter(const BarrierConstraint& con, const Vec& u_nom, const InputBox& box)
{
  if ((box.lo.array() > box.hi.array()).any()) throw ContractError("filter: empty input box");
  FilterResult r;

  if (u_nom.size() == 1) {
    const double a = con.a(0);
    double lo = box.lo(0);
    double hi = box.hi(0);
    if (a > 0.0) lo = std::max(lo, con.b / a);
    if (a < 0.0) hi = std::min(hi, con.b / a);
    if (a == 0.0 && con.b > 0.0) lo = hi + 1.0;  // constraint unsatisfiable by any input
    if (lo <= hi) {
      r.u = Vec::Constant(1, std::clamp(u_nom(0), lo, hi));
    } else {
      r.u = max_slack_corner(con, u_nom, box);
      r.feasible = false;
    }
    r.slack = con.slack(r.u);
    return r;
  }

  // KKT: u(lambda) = clamp(u_nom + lambda a); a . u(lambda) is non-decreasing in lambda.
  const Vec start = clamp_box(u_nom, box);
  if (con.slack(start) >= 0.0) {
    r.u = start;
    r.slack = con.slack(start);
    return r;
  }
  const Vec corner = max_slack_corner(con, u_nom, box);
  if (con.slack(corner) < 0.0 || con.a.squaredNorm() == 0.0) {
    r.u = corner;
    r.feasible = false;
    r.slack = con.slack(corner);
    return r;
  }
  double lam_lo = 0.0;
  double lam_hi = 1.0;
  while (con.slack(clamp_box(u_nom + lam_hi * con.a, box)) < 0.0) lam_hi *= 2.0;
  for (int it = 0; it < 200 && lam_hi - lam_lo > 1e-15 * std::max(1.0, lam_hi); ++it) {
    const double mid = 0.5 * (lam_lo + lam_hi);
    if (con.slack(clamp_box(u_nom + mid * con.a, box)) < 0.0) {
      lam_lo = mid;
    } else {
      lam_hi = mid;
    }
  }
  r.u = clamp_box(u_nom + lam_hi * con.a, box);
  r.slack = con.slack(r.u);
  return r;
}

FilterResult filter(const BarrierFunction& bf, const SystemModel& model, const Vec& x_pred, Seconds t_pred,
                    const Vec& u_nom, double d_e, const InputBox& box)
{
  return filter(barrier_constraint(bf, model, x_pred, t_pred, d_e), u_nom, box);
}

SampledTrajectory::SampledTrajectory(Trajectory nodes) : nodes_(std::move(nodes)) {}

Vec SampledTrajectory::operator()(Seconds tau) const
{
  if (nodes_.empty()) throw ContractError("SampledTrajectory: no nodes");
  if (tau < nodes_.front().t - 1e-9 || tau > nodes_.back().t + 1e-9) {
    throw LookbackError("trajectory queried outside [" + std::to_string(nodes_.front().t) + ", " +
                            std::to_string(nodes_.back().t) + "]",
                        tau, tau < nodes_.front().t ? nodes_.front().t : nodes_.back().t);
  }
  return clamped(tau);
}

Vec SampledTrajectory::clamped(Seconds tau) const
{
  if (nodes_.empty()) throw ContractError("SampledTrajectory: no nodes");
  if (tau <= nodes_.front().t) return nodes_.front().x;
  if (tau >= nodes_.back().t) return nodes_.back().x;
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), tau,
                             [](Seconds v, const PlantState& s) { return v < s.t; });
  const PlantState& b = *it;
  const PlantState& a = *(it - 1);
  const double w = (tau - a.t) / (b.t - a.t);
  return (1.0 - w) * a.x + w * b.x;
}

double delta_y_max_exact(const SampledTrajectory& y, Seconds t, Seconds d_hat, Seconds d_tilde_max)
{
  if (d_tilde_max <= 0.0) return 0.0;
  const Seconds c = t + d_hat;
  const Seconds a = c - d_tilde_max;
  const Seconds b = c + d_tilde_max;
  const Vec y0 = y(c);
  double best = std::max((y(a) - y0).norm(), (y(b) - y0).norm());
  for (const PlantState& s : y.nodes()) {
    if (s.t > a && s.t < b) best = std::max(best, (s.x - y0).norm());
  }
  return best;
}

}  // namespace dacbf
