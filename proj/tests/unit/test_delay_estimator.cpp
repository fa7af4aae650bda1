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

#include "dacbf/delay_estimator.hpp"
#include "dacbf/predictor.hpp"
#include "models.hpp"

using namespace dacbf;

TEST_SUITE("delay_estimator")
{
  TEST_CASE("projection blocks only outward rates at the ends")
  {
    CHECK(proj(0.5, 0.0, 1.0, -2.0) == -2.0);
    CHECK(proj(0.0, 0.0, 1.0, -2.0) == 0.0);
    CHECK(proj(0.0, 0.0, 1.0, 2.0) == 2.0);
    CHECK(proj(1.0, 0.0, 1.0, 2.0) == 0.0);
    CHECK(proj(1.0, 0.0, 1.0, -2.0) == -2.0);
    CHECK_THROWS_AS(proj(1.5, 0.0, 1.0, 0.0), ContractError);
    CHECK_THROWS_AS(proj(0.5, 1.0, 0.0, 0.0), ContractError);
  }

  TEST_CASE("euler update and clamping")
  {
    DelayEstimate e{0.5, 40.0, 0.0, 2.0};
    CHECK(update(e, 0.1, 1e-3).d_hat == doctest::Approx(0.504));
    e.d_hat = 1.999;
    CHECK(update(e, 1.0, 1e-3).d_hat == 2.0);
    e.d_hat = 0.0;
    CHECK(update(e, -1.0, 1e-3).d_hat == 0.0);
    CHECK_THROWS_AS(update(e, 0.0, 0.0), ContractError);
  }

  TEST_CASE("property: estimate never leaves the interval")
  {
    DelayEstimate e{0.3, 40.0, 0.2, 0.9};
    for (int k = 0; k < 10000; ++k) {
      e = update(e, 5.0 * std::sin(0.01 * k * k), 1e-3);
      REQUIRE(e.d_hat >= 0.2);
      REQUIRE(e.d_hat <= 0.9);
    }
  }

  TEST_CASE("reproject pulls the estimate into a shrunken interval")
  {
    const DelayEstimate e{0.3, 40.0, 0.0, 2.0};
    const DelayEstimate r = reproject(e, 0.45, 0.55);
    CHECK(r.d_hat == 0.45);
    CHECK(r.proj_lo == 0.45);
    CHECK(reproject(e, 0.1, 0.5).d_hat == 0.3);
    CHECK_THROWS_AS(reproject(e, 0.6, 0.5), ContractError);
  }

  TEST_CASE("online estimate converges to the cost minimizer")
  {
    const SystemModel m = truck::truck_model({});
    const double D = 0.5;
    const auto rec = testing_models::record(m, testing_models::truck_x0(), testing_models::wavy, D, 3.0);
    PredictorConfig cfg;
    DelayEstimate est{0.2, 40.0, 0.0, 2.0};
    const double dt = 1e-3;
    for (long k = 500; k < 2500; ++k) {
      const double t = k * dt;
      const auto r = rho(m, rec.inputs, rec.at(t), rec.at(t - cfg.beta), t, est.d_hat, cfg);
      est = update(est, r.rho, dt);
    }
    // Grid minimizer of J at the final time.
    const double t = 2.5;
    double best = 0.0, best_j = 1e300;
    for (int i = 0; i <= 2000; ++i) {
      const double d = i * 1e-3;
      const double j = cost(m, rec.inputs, rec.at(t), rec.at(t - cfg.beta), t, d, cfg);
      if (j < best_j) {
        best_j = j;
        best = d;
      }
    }
    CHECK(std::abs(best - D) <= 1e-3);
    CHECK(std::abs(est.d_hat - best) <= 1e-2);
  }
}
