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

#include "dacbf/types.hpp"

namespace dacbf
{

/// Delay estimate with its adaptation gain and the projection interval it lives in.
struct DelayEstimate
{
  Seconds d_hat = 0.0;
  double gamma = 40.0;
  Seconds proj_lo = 0.0;
  Seconds proj_hi = 2.0;
};

/// Boundary projection: blocks a rate that would push f out of [a, b].
double proj(double f, double a, double b, double g);

/// Explicit-Euler step of d_hat' = gamma * proj(d_hat, lo, hi, rho), clamped to [lo, hi].
DelayEstimate update(const DelayEstimate& est, double rho, Seconds dt);

/// Replace the projection interval and pull d_hat back inside it.
DelayEstimate reproject(const DelayEstimate& est, Seconds lo, Seconds hi);

}  // namespace dacbf
