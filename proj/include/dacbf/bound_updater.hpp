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
#include <string>

#include "dacbf/observer.hpp"
#include "dacbf/predictor.hpp"

namespace dacbf
{

/// Interval of delays still consistent with the observed prediction errors.
struct DelayBoundSet
{
  Seconds lo = 0.0;
  Seconds hi = 2.0;
  long epoch = 0;
  Seconds d_tilde_max = 2.0;

  static DelayBoundSet initial(Seconds lo, Seconds hi);
  bool contains(Seconds d) const { return lo <= d && d <= hi; }
};

/// Upper bound on the prediction residual of the true delay.
struct PredictionErrorBudget
{
  double residual_B = 0.0;        // |B(t)|: D_hat prediction corrected by the observed disturbance
  double disturbance_term = 0.0;  // beta * int_0^1 sigma_max(g(x_p)) M_d dy
  double total = 0.0;
};

struct BoundSolverConfig
{
  int n_grid = 201;
  Seconds tol = 1e-3;
};

struct BoundUpdate
{
  DelayBoundSet set;
  bool feasible_empty = false;  // no grid point satisfied the budget; set left unchanged
  std::string diagnostic;
  int evaluations = 0;
};

using PredictionErrorFn = std::function<double(Seconds)>;

/// Norm of the window-prediction residual for a candidate delay.
double prediction_error(const SystemModel& model, const TimedInputBuffer& buffer, const Vec& x_t,
                        const Vec& x_t_minus_beta, Seconds t, Seconds delay, const PredictorConfig& cfg);

/**
 * Residual bound at time t built from the estimated delay, the disturbance
 * estimate and the observer error envelope.
 *
 * @param dhat_history  logged d_hat signal; window parts it does not cover use obs.d_hat
 * @param observer_start  time origin of the envelope M_d
 */
PredictionErrorBudget error_budget(const SystemModel& model, const TimedInputBuffer& buffer, const Vec& x_t,
                                   const Vec& x_t_minus_beta, Seconds t, Seconds d_hat,
                                   const DisturbanceObserverState& obs, const PredictorConfig& cfg,
                                   const TimedInputBuffer* dhat_history = nullptr, Seconds observer_start = 0.0);

/**
 * Shrink the set to the extreme feasible delays
 *   lo' = min { D in [lo, hi] : ep_fn(D) <= budget.total }
 *   hi' = max { ... }
 * by a uniform grid over [lo, hi] followed by bisection of each boundary cell
 * down to `tol`. Feasible set connectivity is not assumed. An empty feasible
 * grid leaves the set unchanged and reports a diagnostic.
 */
BoundUpdate update_bounds(const DelayBoundSet& set, const PredictionErrorBudget& budget,
                          const PredictionErrorFn& ep_fn, const BoundSolverConfig& cfg = {});

Seconds d_tilde_max(const DelayBoundSet& set);

}  // namespace dacbf
