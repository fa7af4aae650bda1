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


#include <doctest.h>

#include <cmath>
#include <random>

#include "dacbf/predictor.hpp"
#include "models.hpp"
#include "oracle.hpp"

using namespace dacbf;
using testing_models::record;
using testing_models::scalar_model;

namespace
{
PredictorConfig window(double beta = 0.5)
{
  PredictorConfig c;
  c.beta = beta;
  return c;
}

// Step at t = 1 through an integrator: the window answer is piecewise quadratic.
double step_input(Seconds t) { return t >= 1.0 ? 1.0 : 0.0; }
}  // namespace

TEST_SUITE("predictor")
{
  TEST_CASE("true delay reproduces the measured state")
  {
    // Window substeps are not aligned with the input samples; the residual is quadrature error only.
    const SystemModel m = truck::truck_model({});
    const auto rec = record(m, testing_models::truck_x0(), testing_models::wavy, 0.5, 3.0);
    const PredictorConfig cfg = window();
    for (double t : {1.0, 1.7, 2.5, 3.0}) {
      const Vec xp = predict_state(m, rec.inputs, rec.at(t - cfg.beta), t, 0.5, cfg);
      CHECK((xp - rec.at(t)).norm() < 2e-5);
    }
  }

  TEST_CASE("no dynamics and no input leaves the state unchanged")
  {
    const SystemModel m = scalar_model();
    const auto rec = record(m, Vec::Constant(1, 2.0), [](Seconds) { return 0.0; }, 0.3, 2.0);
    for (double d : {0.0, 0.3, 1.1}) {
      CHECK(predict_state(m, rec.inputs, rec.at(1.5), 2.0, d, window())(0) == 2.0);
      CHECK(cost(m, rec.inputs, rec.at(2.0), rec.at(1.5), 2.0, d, window()) == 0.0);
    }
  }

  TEST_CASE("constant input integrates in closed form for any delay")
  {
    const SystemModel m = scalar_model();
    testing_models::Recorded rec{TimedInputBuffer(1, 10.0, 1e-3, 0.0, Vec::Constant(1, 1.5)), {}, 1e-3};
    for (int k = 0; k < 2000; ++k) rec.inputs.push(k * 1e-3, Vec::Constant(1, 1.5));
    for (double d : {0.0, 0.2, 0.77}) {
      const Vec xp = predict_state(m, rec.inputs, Vec::Constant(1, 4.0), 1.9, d, window());
      CHECK(xp(0) == doctest::Approx(4.0 + 1.5 * 0.5).epsilon(1e-13));
    }
  }

  TEST_CASE("step input cost matches the closed form")
  {
    const SystemModel m = scalar_model();
    const auto rec = record(m, Vec::Zero(1), step_input, 0.5, 2.5);
    const double t = 1.8;
    // Inside [0.3, 0.8] the prediction error is 0.5 - d.
    for (double d : {0.3, 0.35, 0.5, 0.62, 0.8}) {
      const double j = cost(m, rec.inputs, rec.at(t), rec.at(t - 0.5), t, d, window());
      CHECK(j == doctest::Approx(0.5 * (0.5 - d) * (0.5 - d)).epsilon(1e-9).scale(1e-12));
    }
  }

  TEST_CASE("rho points toward the true delay")
  {
    const SystemModel m = scalar_model();
    const auto rec = record(m, Vec::Zero(1), step_input, 0.5, 2.5);
    // J = (0.5 - d)^2 / 2 and dx/dD = -1, so rho = (0.5 - d) / 2
    const auto below = rho(m, rec.inputs, rec.at(1.8), rec.at(1.3), 1.8, 0.35, window());
    const auto above = rho(m, rec.inputs, rec.at(1.8), rec.at(1.3), 1.8, 0.65, window());
    CHECK(below.rho == doctest::Approx(0.075).epsilon(1e-6));
    CHECK(above.rho == doctest::Approx(-0.075).epsilon(1e-6));
    CHECK(below.sensitivity(0) == doctest::Approx(-1.0).epsilon(1e-6));
  }

  TEST_CASE("forward difference is used next to zero delay")
  {
    const SystemModel m = scalar_model();
    const auto rec = record(m, Vec::Zero(1), testing_models::wavy, 0.0, 2.0);
    const PredictorConfig cfg = window();
    const Vec s = prediction_sensitivity(m, rec.inputs, rec.at(1.5), 2.0, 0.0, cfg);
    const Vec hi = predict_state(m, rec.inputs, rec.at(1.5), 2.0, cfg.fd_eps, cfg);
    const Vec mid = predict_state(m, rec.inputs, rec.at(1.5), 2.0, 0.0, cfg);
    CHECK(s(0) == doctest::Approx((hi(0) - mid(0)) / cfg.fd_eps));
    CHECK_THROWS_AS(predict_state(m, rec.inputs, rec.at(1.5), 2.0, -0.1, cfg), ContractError);
  }

  TEST_CASE("property: gradient agrees with an extrapolated difference and rho is damped")
  {
    const SystemModel m = truck::truck_model({});
    const auto rec = record(m, testing_models::truck_x0(), testing_models::wavy, 0.5, 4.0);
    const PredictorConfig cfg = window();
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dd(0.05, 1.2), tt(1.0, 4.0);
    for (int i = 0; i < 100; ++i) {
      const double t = std::round(tt(rng) * 1000.0) / 1000.0;
      const double d = dd(rng);
      const auto r = rho(m, rec.inputs, rec.at(t), rec.at(t - cfg.beta), t, d, cfg);
      const double ref = oracle::richardson_derivative(
          [&](double dv) { return cost(m, rec.inputs, rec.at(t), rec.at(t - cfg.beta), t, dv, cfg); }, d, 1e-4);
      CHECK(std::abs(r.grad - ref) <= 1e-2 * std::abs(ref) + 1e-6);
      CHECK(std::abs(r.rho) <= std::abs(r.grad) + 1e-15);
      CHECK(r.rho * r.grad <= 0.0);
    }
  }

  TEST_CASE("config validation")
  {
    PredictorConfig c;
    CHECK_NOTHROW(c.validate());
    c.n_quad = 4;
    CHECK_THROWS_AS(c.validate(), ContractError);
    c = {};
    c.beta = 0.0;
    CHECK_THROWS_AS(c.validate(), ContractError);
  }
}
