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

#include "dacbf/dynamics.hpp"

namespace dacbf
{

/**
 * Window predictor: starting from the measured x(t - beta), the model is
 * integrated across the window [t - beta, t] with the input history shifted
 * by a candidate delay. With the true delay the prediction reproduces x(t),
 * which is what makes the residual usable for delay identification.
 */
struct PredictorConfig
{
  Seconds beta = 0.5;
  int n_quad = 64;
  Seconds fd_eps = 1e-4;

  void validate() const;
  Seconds step() const { return beta / n_quad; }
};

struct PredictionResult
{
  Vec x_pred;
  double cost = 0.0;  // 0.5 * |x_pred - x(t)|^2
  double grad = 0.0;  // dJ/dD
  double rho = 0.0;   // -grad / (1 + |dx_pred/dD|^2)
  Vec sensitivity;    // dx_pred/dD
};

/// Prediction of x(t) from x(t - beta) assuming the input delay is `delay`.
Vec predict_state(const SystemModel& model, const TimedInputBuffer& buffer, const Vec& x_t_minus_beta,
                  Seconds t, Seconds delay, const PredictorConfig& cfg);

double cost(const SystemModel& model, const TimedInputBuffer& buffer, const Vec& x_t,
            const Vec& x_t_minus_beta, Seconds t, Seconds delay, const PredictorConfig& cfg);

/// Finite-difference sensitivity of the prediction to the delay; one-sided
/// (forward) when the central stencil would need a negative delay.
Vec prediction_sensitivity(const SystemModel& model, const TimedInputBuffer& buffer,
                           const Vec& x_t_minus_beta, Seconds t, Seconds delay, const PredictorConfig& cfg);

/// Prediction, cost, gradient and the normalized descent direction at d_hat.
PredictionResult rho(const SystemModel& model, const TimedInputBuffer& buffer, const Vec& x_t,
                     const Vec& x_t_minus_beta, Seconds t, Seconds d_hat, const PredictorConfig& cfg);

}  // namespace dacbf
