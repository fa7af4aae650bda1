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

#include <deque>
#include <optional>

#include "dacbf/types.hpp"

namespace dacbf
{

/**
 * Timestamped, piecewise-constant (zero-order hold) signal history.
 *
 * Sample i holds its value on [t_i, t_{i+1}); the newest sample holds on
 * [t_last, t_last + dt]. Before the run start the signal equals the pre-run
 * value. Samples older than (newest - horizon) are evicted, and queries
 * reaching behind the oldest retained sample throw LookbackError.
 */
class TimedInputBuffer
{
public:
  /// @param run_start  time of the first sample; queries before it return pre_run
  TimedInputBuffer(int dim, Seconds horizon, Seconds dt, Seconds run_start = 0.0,
                   std::optional<Vec> pre_run = std::nullopt);

  void push(Seconds t, const Vec& u);

  /// ZOH value at tau.
  Vec sample(Seconds tau) const;

  /// Exact integral of the held signal over [t0, t1]; t0 <= t1.
  Vec integral(Seconds t0, Seconds t1) const;

  /// integral(t0, t1) / (t1 - t0); falls back to sample(t0) on an empty interval.
  Vec average(Seconds t0, Seconds t1) const;

  bool empty() const { return samples_.empty(); }
  std::size_t size() const { return samples_.size(); }
  int dim() const { return dim_; }
  Seconds horizon() const { return horizon_; }
  Seconds dt() const { return dt_; }
  Seconds run_start() const { return run_start_; }
  const Vec& pre_run() const { return pre_run_; }

  /// Oldest time a query may reach (run start while nothing was evicted).
  Seconds oldest_time() const;
  /// Latest time covered by the newest sample, i.e. t_last + dt.
  Seconds coverage_end() const;
  Seconds newest_time() const;

private:
  struct Sample
  {
    Seconds t;
    Vec u;
  };

  // Index of the last sample with time <= tau, or -1 when tau is before all samples.
  long locate(Seconds tau) const;
  void check_range(Seconds t0, Seconds t1) const;

  int dim_;
  Seconds horizon_;
  Seconds dt_;
  Seconds run_start_;
  Vec pre_run_;
  bool evicted_ = false;
  std::deque<Sample> samples_;
};

}  // namespace dacbf
