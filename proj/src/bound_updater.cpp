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

#include "dacbf/bound_updater.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dacbf
{

DelayBoundSet DelayBoundSet::initial(Seconds lo, Seconds hi)
{
  if (!(0.0 <= lo && lo <= hi)) throw ContractError("DelayBoundSet: need 0 <= lo <= hi");
  return {lo, hi, 0, hi - lo};
}

Seconds d_tilde_max(const DelayBoundSet& set) { return set.hi - set.lo; }

double prediction_error(const SystemModel& model, const TimedInputBuffer& buffer, const Vec& x_t,
                        const Vec& x_t_minus_beta, Seconds t, Seconds delay, const PredictorConfig& cfg)
{
  return (predict_state(model, buffer, x_t_minus_beta, t, delay, cfg) - x_t).norm();
}

namespace
{

Vec dhat_average(const TimedInputBuffer* hist, const Vec& current, Seconds a, Seconds b)
{
  if (hist == nullptr || hist->empty()) return current;
  const Seconds first = std::max(hist->run_start(), hist->oldest_time());
  const Seconds last = hist->coverage_end();
  if (b <= first || a >= last) return current;
  // Split into the uncovered head/tail (current value) and the logged part.
  const Seconds lo = std::max(a, first);
  const Seconds hi = std::min(b, last);
  Vec acc = hist->integral(lo, hi);
  acc += (lo - a) * current;
  acc += (b - hi) * current;
  return acc / (b - a);
}

}  // namespace

PredictionErrorBudget error_budget(const SystemModel& model, const TimedInputBuffer& buffer, const Vec& x_t,
                                   const Vec& x_t_minus_beta, Seconds t, Seconds d_hat,
                                   const DisturbanceObserverState& obs, const PredictorConfig& cfg,
                                   const TimedInputBuffer* dhat_history, Seconds observer_start)
{
  const int n = model.n;
  const double h_nom = cfg.step();

  // Augmented state: [predicted state; int g d_hat; int sigma_max(g) M_d].
  Vec s = Vec::Zero(2 * n + 1);
  s.head(n) = x_t_minus_beta;

  Seconds tau = t - cfg.beta;
  for (int i = 0; i < cfg.n_quad; ++i) {
    const Seconds next = (i + 1 == cfg.n_quad) ? t : tau + h_nom;
    const double h = next - tau;
    const Vec u = buffer.average(tau - d_hat, next - d_hat);
    const Vec w = model.exo_average(tau, next);
    const Vec dh = dhat_average(dhat_history, obs.d_hat, tau, next);

    auto rhs = [&](const Vec& st, Seconds at) -> Vec {
      const Vec xp = st.head(n);
      const Mat g = model.g(xp);
      Vec out(2 * n + 1);
      out.head(n) = model.drift(xp) + g * u + w;
      out.segment(n, n) = g * dh;
      out(2 * n) = operator_norm(g) * envelope(obs, std::max(0.0, at - observer_start));
      return out;
    };
    const Vec k1 = rhs(s, tau);
    const Vec k2 = rhs(s + 0.5 * h * k1, tau + 0.5 * h);
    const Vec k3 = rhs(s + 0.5 * h * k2, tau + 0.5 * h);
    const Vec k4 = rhs(s + h * k3, next);
    s += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    tau = next;
  }

  PredictionErrorBudget b;
  b.residual_B = (s.head(n) + s.segment(n, n) - x_t).norm();
  b.disturbance_term = std::max(0.0, s(2 * n));
  b.total = b.residual_B + b.disturbance_term;
  return b;
}

BoundUpdate update_bounds(const DelayBoundSet& set, const PredictionErrorBudget& budget,
                          const PredictionErrorFn& ep_fn, const BoundSolverConfig& cfg)
{
  if (set.lo > set.hi) throw ContractError("update_bounds: lo > hi");
  if (cfg.n_grid < 2) throw ContractError("update_bounds: n_grid must be >= 2");
  if (!(cfg.tol > 0.0)) throw ContractError("update_bounds: tol must be > 0");

  BoundUpdate out;
  out.set = set;
  auto feasible = [&](Seconds d) {
    ++out.evaluations;
    return ep_fn(d) <= budget.total;
  };

  const int n = (set.hi > set.lo) ? cfg.n_grid : 1;
  const double spacing = (n > 1) ? (set.hi - set.lo) / (n - 1) : 0.0;
  auto node = [&](int i) { return (i == n - 1) ? set.hi : set.lo + spacing * i; };

  std::vector<char> ok(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ok[static_cast<std::size_t>(i)] = feasible(node(i)) ? 1 : 0;

  const auto first = std::find(ok.begin(), ok.end(), 1);
  if (first == ok.end()) {
    out.feasible_empty = true;
    out.set.epoch = set.epoch + 1;
    std::ostringstream os;
    os << "no feasible delay on the grid over [" << set.lo << ", " << set.hi
       << "] with budget " << budget.total << "; set kept";
    out.diagnostic = os.str();
    return out;
  }
  const int i_first = static_cast<int>(first - ok.begin());
  const int i_last = n - 1 - static_cast<int>(std::find(ok.rbegin(), ok.rend(), 1) - ok.rbegin());

  // Bisect between an infeasible node `bad` and a feasible node `good`; returns a feasible point.
  auto refine = [&](Seconds bad, Seconds good) {
    while (std::abs(good - bad) > cfg.tol) {
      const Seconds mid = 0.5 * (bad + good);
      if (feasible(mid)) {
        good = mid;
      } else {
        bad = mid;
      }
    }
    return good;
  };

  Seconds lo = node(i_first);
  if (i_first > 0) lo = refine(node(i_first - 1), lo);
  Seconds hi = node(i_last);
  if (i_last < n - 1) hi = refine(node(i_last + 1), hi);

  out.set.lo = std::max(set.lo, lo);
  out.set.hi = std::min(set.hi, hi);
  out.set.epoch = set.epoch + 1;
  out.set.d_tilde_max = out.set.hi - out.set.lo;
  return out;
}

}  // namespace dacbf
