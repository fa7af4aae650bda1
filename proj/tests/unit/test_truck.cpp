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

#include "dacbf/runner.hpp"
#include "dacbf/truck.hpp"

using namespace dacbf;

TEST_SUITE("truck")
{
  TEST_CASE("matched speeds and zero input give a zero derivative")
  {
    const truck::TruckParams p;
    const SystemModel m = truck::truck_model(p);
    const Vec x = (Vec(3) << 25.0, 8.0, 8.0).finished();
    CHECK((m.f(x, 1.0) + m.g(x) * Vec::Zero(1)).norm() == 0.0);
    // the lead brakes on [5, 8)
    CHECK(m.f(x, 6.0)(2) == -3.0);
    CHECK(m.exo_average(4.0, 6.0)(2) == doctest::Approx(-1.5));
  }

  TEST_CASE("property: drift and input gain respect their Lipschitz constants")
  {
    const SystemModel m = truck::truck_model({});
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const Vec x = (Vec(3) << u(rng), u(rng), u(rng)).finished();
      const Vec y = (Vec(3) << u(rng), u(rng), u(rng)).finished();
      worst = std::max(worst, (m.drift(x) - m.drift(y)).norm() / (x - y).norm());
      CHECK((m.g(x) - m.g(y)).norm() == 0.0);
    }
    CHECK(worst <= m.lipschitz_f + 1e-12);
    CHECK(worst >= 0.99 * m.lipschitz_f);
  }

  TEST_CASE("barrier: zero on the boundary, gradient matches differences")
  {
    const truck::TruckParams p;
    const BarrierFunction bf = truck::barrier(p, 1.0);
    CHECK(bf.h((Vec(3) << 15.0, 10.0, 0.0).finished()) == 0.0);
    CHECK(bf.h((Vec(3) << 16.0, 10.0, 0.0).finished()) == 1.0);
    const Vec x = (Vec(3) << 17.0, 4.0, 9.0).finished();
    for (int j = 0; j < 3; ++j) {
      Vec e = Vec::Zero(3);
      e(j) = 1e-6;
      CHECK((bf.h(x + e) - bf.h(x - e)) / 2e-6 == doctest::Approx(bf.grad_h(x)(j)).scale(1.0));
    }
    const SystemModel m = truck::truck_model(p);
    CHECK(bf.Lgh(m, x)(0) == -1.0);
    CHECK(bf.Lfh(m, x, 0.0) == doctest::Approx(5.0));
  }

  TEST_CASE("nominal controller examples")
  {
    const truck::TruckParams p;
    // V = min(1 * (30 - 5), 15) = 15, W = min(12, 15) = 12
    CHECK(truck::nominal(p, (Vec(3) << 30.0, 10.0, 12.0).finished())(0) == doctest::Approx(0.4 * 5.0 + 0.5 * 2.0));
    // V = 1 * (8 - 5) = 3, W = 15 (lead faster than v_max)
    CHECK(truck::nominal(p, (Vec(3) << 8.0, 6.0, 20.0).finished())(0) == doctest::Approx(0.4 * -3.0 + 0.5 * 9.0));
    CHECK(truck::V_policy(p, 100.0) == 15.0);
    CHECK(truck::W_policy(p, 3.0) == 3.0);
  }

  TEST_CASE("property: speed policies are Lipschitz")
  {
    const truck::TruckParams p;
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    for (int i = 0; i < 1000; ++i) {
      const double a = u(rng), b = u(rng);
      CHECK(std::abs(truck::V_policy(p, a) - truck::V_policy(p, b)) <= p.k_gain * std::abs(a - b) + 1e-12);
      CHECK(std::abs(truck::W_policy(p, a) - truck::W_policy(p, b)) <= std::abs(a - b) + 1e-12);
    }
  }

  TEST_CASE("lead profile mean over partial overlaps")
  {
    const truck::LeadProfile lp;
    CHECK(lp.mean_accel(0.0, 1.0) == 0.0);
    CHECK(lp.mean_accel(6.0, 7.0) == -3.0);
    CHECK(lp.mean_accel(7.0, 9.0) == doctest::Approx(-1.5));
    CHECK(lp.mean_accel(2.0, 2.0) == 0.0);
  }

  TEST_CASE("parameter validation")
  {
    truck::TruckParams p;
    CHECK_NOTHROW(p.validate());
    p.u_min = 1.0;
    CHECK_THROWS_AS(p.validate(), ContractError);
    p = {};
    p.T_headway = 0.0;
    CHECK_THROWS_AS(p.validate(), ContractError);
    CHECK(truck::TruckParams{}.u_bound() == 6.0);
  }

  TEST_CASE("delay-free filtered scenario stays safe")
  {
    RunConfig cfg;
    cfg.mode = Mode::delay_free;
    const RunTrace tr = run(cfg);
    CHECK(tr.summary.min_h >= -1e-6);
    CHECK(tr.summary.infeasible_steps == 0);
  }

  TEST_CASE("unfiltered nominal controller with delay is unsafe")
  {
    RunConfig cfg;
    cfg.mode = Mode::unfiltered;
    cfg.true_delay = 0.5;
    const RunTrace tr = run(cfg);
    CHECK(tr.summary.min_h < 0.0);
  }
}
