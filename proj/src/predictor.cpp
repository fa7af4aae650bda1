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

#include "dacbf/predictor.hpp"

namespace dacbf
{

void PredictorConfig::validate() const
{
  if (!(beta > 0.0)) throw ContractError("predictor.beta must be > 0");
  if (n_quad < 16) throw ContractError("predictor.n_quad must be >= 16");
  if (!(fd_eps > 0.0)) throw ContractError("predictor.fd_eps must be > 0");
}

Vec predict_state(const SystemModel& model, const TimedInputBuffer& buffer, const Vec& x_t_minus_beta,
                  Seconds t, Seconds delay, const PredictorConfig& cfg)
{
  if (delay < 0.0) throw ContractError("predict_state: negative candidate delay");
  return integrate_delayed(model, buffer, x_t_minus_beta, t - cfg.beta, t, delay, cfg.step());
}

double cost(const SystemModel& model, const TimedInputBuffer& buffer, const Vec& x_t,
            const Vec& x_t_minus_beta, Seconds t, Seconds delay, const PredictorConfig& cfg)
{
  const Vec r = predict_state(model, buffer, x_t_minus_beta, t, delay, cfg) - x_t;
  return 0.5 * r.squaredNorm();
}

Vec prediction_sensitivity(const SystemModel& model, const TimedInputBuffer& buffer,
                           const Vec& x_t_minus_beta, Seconds t, Seconds delay, const PredictorConfig& cfg)
{
  const double h = cfg.fd_eps;
  const Vec hi = predict_state(model, buffer, x_t_minus_beta, t, delay + h, cfg);
  if (delay - h >= 0.0) {
    const Vec lo = predict_state(model, buffer, x_t_minus_beta, t, delay - h, cfg);
    return (hi - lo) / (2.0 * h);
  }
  const Vec mid = predict_state(model, buffer, x_t_minus_beta, t, delay, cfg);
  return (hi - mid) / h;
}

PredictionResult rho(const SystemModel& model, const TimedInputBuffer& buffer, const Vec& x_t,
                     const Vec& x_t_minus_beta, Seconds t, Seconds d_hat, const PredictorConfig& cfg)
{
  PredictionResult r;
  r.x_pred = predict_state(model, buffer, x_t_minus_beta, t, d_hat, cfg);
  const Vec residual = r.x_pred - x_t;
  r.cost = 0.5 * residual.squaredNorm();
  r.sensitivity = prediction_sensitivity(model, buffer, x_t_minus_beta, t, d_hat, cfg);
  r.grad = residual.dot(r.sensitivity);
  r.rho = -r.grad / (1.0 + r.sensitivity.squaredNorm());
  return r;
}

}  // namespace dacbf
