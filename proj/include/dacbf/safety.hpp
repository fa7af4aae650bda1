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

#include "dacbf/dynamics.hpp"

namespace dacbf
{

/**
 * Barrier function h with its Lipschitz ledger.
 *
 * lip_Lfh, lip_Lgh and lip_alpha_h are the Lipschitz constants of L_f h,
 * L_g h and alpha(h(.)) over the admissible set; they scale the robustness
 * margin.
 */
struct BarrierFunction
{
  std::function<double(const Vec&)> h;
  std::function<Vec(const Vec&)> grad_h;
  std::function<double(double)> alpha;
  double lip_Lfh = 0.0;
  double lip_Lgh = 0.0;
  double lip_alpha_h = 0.0;

  double Lfh(const SystemModel& model, const Vec& x, Seconds t) const;
  Vec Lgh(const SystemModel& model, const Vec& x) const;
};

/// Linear class-K_inf function s -> alpha0 * s.
std::function<double(double)> linear_alpha(double alpha0);

struct SafetyMargins
{
  double e_max_val = 0.0;    // trajectory divergence bound at t + d_hat + d_tilde_max
  double delta_y_max = 0.0;  // worst shift of the nominal trajectory within +-d_tilde_max
  double e_tj_max = 0.0;     // e_max_val + delta_y_max
  double d_e = 0.0;
  double eps_max = 0.0;      // udot_max * d_tilde_max
  double a_const = 0.0;      // L_f + L_g (u_max + eps_max)
  double u_max = 0.0;
  double udot_max = 0.0;
};

using TrajectoryFn = std::function<Vec(Seconds)>;

/**
 * Divergence bound between solutions driven by inputs that differ by at most
 * eps_max:  eps_max * int_{t1}^{t2} exp(a (t2 - tau)) |g(y(tau))| dtau, by the
 * trapezoid rule on n_quad nodes.
 */
double e_max(const SystemModel& model, const TrajectoryFn& y, Seconds t1, Seconds t2, double eps_max,
             double u_max, int n_quad);

/// max over n_scan uniform shifts s in [-d_tilde_max, d_tilde_max] of |y(t + d_hat + s) - y(t + d_hat)|.
double delta_y_max(const TrajectoryFn& y, Seconds t, Seconds d_hat, Seconds d_tilde_max, int n_scan);

/// (L_Lfh + L_alpha_h) e_tj_max + L_Lgh e_tj_max |u|.
double robust_margin(const BarrierFunction& bf, const SafetyMargins& margins, double u_norm);

struct InputBox
{
  Vec lo;
  Vec hi;
};

/// Affine constraint  a . u >= b  imposed by the barrier condition.
struct BarrierConstraint
{
  Vec a;
  double b = 0.0;
  double slack(const Vec& u) const { return a.dot(u) - b; }
};

/// L_f h(x_p) + L_g h(x_p) u - d_e >= -alpha(h(x_p)) rewritten as a . u >= b.
BarrierConstraint barrier_constraint(const BarrierFunction& bf, const SystemModel& model, const Vec& x_pred,
                                     Seconds t_pred, double d_e);

struct FilterResult
{
  Vec u;
  bool feasible = true;
  double slack = 0.0;
};

/**
 * Closest input to u_nom inside the box that satisfies the barrier
 * constraint. If the constraint and the box do not intersect, the box point
 * with the largest slack is returned and `feasible` is false.
 */
FilterResult filter(const BarrierConstraint& con, const Vec& u_nom, const InputBox& box);

FilterResult filter(const BarrierFunction& bf, const SystemModel& model, const Vec& x_pred, Seconds t_pred,
                    const Vec& u_nom, double d_e, const InputBox& box);

/// Piecewise-linear interpolation over time-sorted nodes.
class SampledTrajectory
{
public:
  SampledTrajectory() = default;
  explicit SampledTrajectory(Trajectory nodes);
  void append(const PlantState& s) { nodes_.push_back(s); }
  /// Throws LookbackError outside the node range.
  Vec operator()(Seconds tau) const;
  /// Holds the end values outside the node range.
  Vec clamped(Seconds tau) const;
  Seconds t_begin() const { return nodes_.front().t; }
  Seconds t_end() const { return nodes_.back().t; }
  bool empty() const { return nodes_.empty(); }
  const Trajectory& nodes() const { return nodes_; }

private:
  Trajectory nodes_;
};

/**
 * Exact maximum of |y(c + s) - y(c)| over |s| <= d_tilde_max, c = t + d_hat,
 * for a piecewise-linear trajectory: the distance is convex on every segment,
 * so only nodes inside the range and the two range ends need checking.
 */
double delta_y_max_exact(const SampledTrajectory& y, Seconds t, Seconds d_hat, Seconds d_tilde_max);

}  // namespace dacbf
