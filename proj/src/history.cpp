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

#include "dacbf/history.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace dacbf
{

TimedInputBuffer::TimedInputBuffer(int dim, Seconds horizon, Seconds dt, Seconds run_start,
                                   std::optional<Vec> pre_run)
    : dim_(dim), horizon_(horizon), dt_(dt), run_start_(run_start)
{
  if (dim <= 0) throw ContractError("TimedInputBuffer: dim must be positive");
  if (!(horizon > 0.0)) throw ContractError("TimedInputBuffer: horizon must be positive");
  if (!(dt > 0.0)) throw ContractError("TimedInputBuffer: dt must be positive");
  pre_run_ = pre_run.value_or(Vec::Zero(dim));
  if (pre_run_.size() != dim) throw ContractError("TimedInputBuffer: pre-run input has wrong size");
}

void TimedInputBuffer::push(Seconds t, const Vec& u)
{
  if (u.size() != dim_) throw ContractError("TimedInputBuffer::push: input has wrong size");
  if (!samples_.empty() && !(t > samples_.back().t)) {
    std::ostringstream os;
    os << "TimedInputBuffer::push: time " << t << " not after last sample " << samples_.back().t;
    throw ContractError(os.str());
  }
  samples_.push_back({t, u});

  // Keep the sample that is active at the cutoff so the whole horizon stays answerable.
  const Seconds cutoff = t - horizon_;
  while (samples_.size() > 1 && samples_[1].t <= cutoff) {
    samples_.pop_front();
    evicted_ = true;
  }
}

Seconds TimedInputBuffer::oldest_time() const
{
  if (!evicted_) return -std::numeric_limits<double>::infinity();
  return samples_.front().t;
}

Seconds TimedInputBuffer::newest_time() const
{
  return samples_.empty() ? run_start_ : samples_.back().t;
}

Seconds TimedInputBuffer::coverage_end() const
{
  return samples_.empty() ? run_start_ : samples_.back().t + dt_;
}

long TimedInputBuffer::locate(Seconds tau) const
{
  auto it = std::upper_bound(samples_.begin(), samples_.end(), tau + kTimeEps,
                             [](Seconds v, const Sample& s) { return v < s.t; });
  return static_cast<long>(it - samples_.begin()) - 1;
}

void TimedInputBuffer::check_range(Seconds t0, Seconds t1) const
{
  if (t0 < oldest_time() - kTimeEps) {
    std::ostringstream os;
    os << "lookback to t=" << t0 << " but history only retained from t=" << oldest_time()
       << " (missing span " << (oldest_time() - t0) << " s)";
    throw LookbackError(os.str(), t0, oldest_time());
  }
  if (t1 > coverage_end() + kTimeEps) {
    std::ostringstream os;
    os << "query to t=" << t1 << " but inputs are only known up to t=" << coverage_end();
    throw LookbackError(os.str(), t1, coverage_end());
  }
}

Vec TimedInputBuffer::sample(Seconds tau) const
{
  check_range(tau, tau);
  const long i = locate(tau);
  if (i < 0) {
    if (tau < run_start_ + kTimeEps && (samples_.empty() || tau < samples_.front().t)) return pre_run_;
    throw LookbackError("TimedInputBuffer::sample: no sample at or before requested time", tau,
                        samples_.empty() ? run_start_ : samples_.front().t);
  }
  return samples_[static_cast<std::size_t>(i)].u;
}

Vec TimedInputBuffer::integral(Seconds t0, Seconds t1) const
{
  if (t1 < t0) throw ContractError("TimedInputBuffer::integral: t1 < t0");
  check_range(t0, t1);
  Vec acc = Vec::Zero(dim_);
  Seconds a = t0;

  // Pre-run stretch.
  const Seconds first = samples_.empty() ? run_start_ : samples_.front().t;
  if (!evicted_ && a < first) {
    const Seconds b = std::min(t1, first);
    acc += (b - a) * pre_run_;
    a = b;
  }
  if (a >= t1) return acc;

  long i = std::max(locate(a), 0L);
  const long n = static_cast<long>(samples_.size());
  while (a < t1 && i < n) {
    const Seconds seg_end = (i + 1 < n) ? samples_[static_cast<std::size_t>(i + 1)].t : t1;
    const Seconds b = std::min(t1, seg_end);
    if (b > a) acc += (b - a) * samples_[static_cast<std::size_t>(i)].u;
    a = std::max(a, b);
    ++i;
  }
  return acc;
}

Vec TimedInputBuffer::average(Seconds t0, Seconds t1) const
{
  const Seconds span = t1 - t0;
  if (span <= 0.0) return sample(t0);
  return integral(t0, t1) / span;
}

}  // namespace dacbf
