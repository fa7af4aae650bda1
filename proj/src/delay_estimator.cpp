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

#include "dacbf/delay_estimator.hpp"

#include <algorithm>
#include <sstream>

namespace dacbf
{

double proj(double f, double a, double b, double g)
{
  if (a > b || f < a || f > b) {
    std::ostringstream os;
    os << "proj: " << f << " outside [" << a << ", " << b << "]";
    throw ContractError(os.str());
  }
  if (f == a && g < 0.0) return 0.0;
  if (f == b && g > 0.0) return 0.0;
  return g;
}

DelayEstimate update(const DelayEstimate& est, double rho, Seconds dt)
{
  if (!(dt > 0.0)) throw ContractError("update: dt must be positive");
  DelayEstimate next = est;
  const double rate = est.gamma * proj(est.d_hat, est.proj_lo, est.proj_hi, rho);
  next.d_hat = std::clamp(est.d_hat + dt * rate, est.proj_lo, est.proj_hi);
  return next;
}

DelayEstimate reproject(const DelayEstimate& est, Seconds lo, Seconds hi)
{
  if (lo > hi) throw ContractError("reproject: empty interval");
  DelayEstimate next = est;
  next.proj_lo = lo;
  next.proj_hi = hi;
  next.d_hat = std::clamp(est.d_hat, lo, hi);
  return next;
}

}  // namespace dacbf
