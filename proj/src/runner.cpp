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


#include "dacbf/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "dacbf/delay_estimator.hpp"

namespace dacbf
{

std::string code_version() { return "dacbf 0.1.0"; }

namespace
{

/// Logged plant states on the k * dt grid, linearly interpolated; held at x0 before the start.
class PastStates
{
public:
  PastStates(const std::vector<Vec>& xs, Seconds dt) : xs_(xs), dt_(dt) {}

  Vec operator()(Seconds tau) const
  {
    if (tau <= 0.0) return xs_.front();
    const double pos = tau / dt_;
    const auto i = static_cast<std::size_t>(std::floor(pos));
    if (i + 1 >= xs_.size()) return xs_.back();
    const double w = pos - static_cast<double>(i);
    return (1.0 - w) * xs_[i] + w * xs_[i + 1];
  }

private:
  const std::vector<Vec>& xs_;
  Seconds dt_;
};

/**
 * Forward trajectory from x(t): the committed inputs delayed by d_hat up to
 * t + d_hat, then the nominal loop acting on the prediction itself.
 */
SampledTrajectory forward_nominal(const SystemModel& model, const truck::TruckParams& params,
                                  const TimedInputBuffer& inputs, const Vec& x, Seconds t, Seconds d_hat,
                                  Seconds beyond, Seconds step)
{
  Trajectory nodes;
  nodes.reserve(static_cast<std::size_t>((d_hat + beyond) / step) + 4);
  Vec y = integrate_delayed(model, inputs, x, t, t + d_hat, d_hat, step, &nodes);
  Seconds tau = t + d_hat;
  const Seconds end = tau + beyond;
  Vec u(1);
  while (tau < end - kTimeEps) {
    const Seconds next = std::min(end, tau + step);
    u(0) = std::clamp(truck::nominal(params, y)(0), params.u_min, params.u_max);
    y = rk4_held(model, y, u, model.exo_average(tau, next), next - tau);
    tau = next;
    nodes.push_back({tau, y});
  }
  return SampledTrajectory(std::move(nodes));
}

SafetyMargins margins_for(const SystemModel& model, const BarrierFunction& bf, const TrajectoryFn& y, Seconds t,
                          Seconds d_hat, Seconds d_tilde, double delta_y, const RunConfig& cfg, double u_bound)
{
  SafetyMargins m;
  m.udot_max = cfg.safety.udot_max;
  m.u_max = u_bound;
  m.eps_max = m.udot_max * d_tilde;
  m.a_const = model.lipschitz_f + model.lipschitz_g * (m.u_max + m.eps_max);
  m.e_max_val =
      (d_hat + d_tilde > 0.0) ? e_max(model, y, t, t + d_hat + d_tilde, m.eps_max, m.u_max, cfg.safety.n_quad) : 0.0;
  m.delta_y_max = delta_y;
  m.e_tj_max = m.e_max_val + m.delta_y_max;
  m.d_e = robust_margin(bf, m, u_bound);
  return m;
}

/// Trajectory frozen at the first bound update; later epochs re-evaluate their margin on it.
struct FrozenReference
{
  bool set = false;
  Seconds t = 0.0;
  Seconds d_hat = 0.0;
  SampledTrajectory y;
};

double reference_margin(const SystemModel& model, const FrozenReference& ref, Seconds d_tilde,
                        const RunConfig& cfg, double u_bound)
{
  const double eps = cfg.safety.udot_max * d_tilde;
  const TrajectoryFn y = [&ref](Seconds tau) { return ref.y(tau); };
  const double e = (ref.d_hat + d_tilde > 0.0)
                       ? e_max(model, y, ref.t, ref.t + ref.d_hat + d_tilde, eps, u_bound, cfg.safety.n_quad)
                       : 0.0;
  return e + delta_y_max_exact(ref.y, ref.t, ref.d_hat, d_tilde);
}

}  // namespace

RunSummary summarize(const std::vector<StepRecord>& steps, const std::vector<EpochRecord>& epochs,
                     Seconds true_delay)
{
  RunSummary s;
  double acc = 0.0;
  long n = 0;
  s.min_h = std::numeric_limits<double>::infinity();
  for (const StepRecord& r : steps) {
    if (!r.feasible) ++s.infeasible_steps;
    if (r.t < true_delay - kTimeEps) continue;
    acc += r.h;
    ++n;
    s.min_h = std::min(s.min_h, r.h);
  }
  s.steps = static_cast<long>(steps.size());
  s.avg_h = n > 0 ? acc / static_cast<double>(n) : 0.0;
  s.epochs = static_cast<long>(epochs.size());
  for (const EpochRecord& e : epochs) {
    if (!e.premise) ++s.premise_failures;
    if (e.feasible_empty) ++s.empty_updates;
  }
  if (!steps.empty()) s.final_d_hat = steps.back().d_hat;
  return s;
}

RunTrace run(const RunConfig& cfg)
{
  cfg.validate();
  const truck::TruckParams& params = cfg.scenario;
  const SystemModel model = truck::truck_model(params);
  const BarrierFunction bf = truck::barrier(params, cfg.safety.alpha0);
  const GainFunctions gains = truck::observer_gains();
  const InputBox box = params.box();
  const double u_bound = params.u_bound();
  const Mode mode = cfg.mode;
  const Seconds dt = cfg.sim.dt;
  const Seconds plant_delay = (mode == Mode::delay_free) ? 0.0 : cfg.true_delay;
  const bool estimating = is_asserting(mode);
  const PredictorConfig& pcfg = cfg.predictor;
  const BoundSolverConfig bcfg{cfg.bounds.n_grid, cfg.bounds.tol};
  const Seconds d_tilde0 = cfg.bounds.hi0 - cfg.bounds.lo0;

  const long n_steps = steps_for(cfg.sim.t_end, dt);
  const long k_beta = steps_for(pcfg.beta, dt);
  const long k_act = steps_for(cfg.bounds.activation, dt);
  const long k_upd = steps_for(cfg.bounds.t_update, dt);

  RunTrace trace;
  trace.header.emplace_back("code_version", code_version());
  for (auto& kv : echo(cfg)) trace.header.push_back(std::move(kv));
  trace.steps.reserve(static_cast<std::size_t>(n_steps + 1));

  const Vec zero_u = Vec::Zero(1);
  const Seconds lookback = std::max(cfg.bounds.hi0, plant_delay) + pcfg.beta + 0.05;
  TimedInputBuffer inputs(1, lookback, dt, 0.0, zero_u);
  TimedInputBuffer dhat_log(1, pcfg.beta + 0.05, dt, 0.0, zero_u);

  std::vector<Vec> xs;
  xs.reserve(static_cast<std::size_t>(n_steps + 1));
  xs.push_back(cfg.x0);
  Vec x = cfg.x0;

  // |d| <= 2 max|u| with d_hat(0) = 0, and |d'| <= 2 u_dot_max.
  const double w1 = std::max(2.0 * cfg.safety.udot_max, cfg.observer.w1_floor);
  DisturbanceObserverState obs =
      make_observer(gains, x, zero_u, cfg.observer.alpha_h, cfg.observer.c, w1, 2.0 * u_bound);
  DelayEstimate est{cfg.estimator.d_hat0, cfg.estimator.gamma, cfg.bounds.lo0, cfg.bounds.hi0};
  DelayBoundSet bounds = DelayBoundSet::initial(cfg.bounds.lo0, cfg.bounds.hi0);
  FrozenReference ref;
  const PastStates past(xs, dt);

  for (long k = 0; k <= n_steps; ++k) {
    const Seconds t = static_cast<double>(k) * dt;
    StepRecord rec;
    rec.t = t;
    rec.xi = x(0);
    rec.v = x(1);
    rec.v_lead = x(2);
    rec.h = bf.h(x);

    obs = refresh(obs, gains, x);
    dhat_log.push(t, obs.d_hat);
    rec.dist_hat = obs.d_hat(0);

    rec.d_err = cfg.true_delay - est.d_hat;
    if (estimating && k >= k_beta) {
      const Vec& x_tmb = xs[static_cast<std::size_t>(k - k_beta)];
      const PredictionResult pr = rho(model, inputs, x, x_tmb, t, est.d_hat, pcfg);
      rec.rho = pr.rho;
      est = update(est, pr.rho, dt);
    }

    bool epoch_now = false;
    if (mode == Mode::proposed && k >= k_act && (k - k_act) % k_upd == 0) {
      const Vec& x_tmb = xs[static_cast<std::size_t>(k - k_beta)];
      const PredictionErrorBudget budget =
          error_budget(model, inputs, x, x_tmb, t, est.d_hat, obs, pcfg, &dhat_log, 0.0);
      const PredictionErrorFn ep_fn = [&](Seconds d) {
        return prediction_error(model, inputs, x, x_tmb, t, d, pcfg);
      };
      const BoundUpdate upd = update_bounds(bounds, budget, ep_fn, bcfg);
      if (upd.feasible_empty) {
        std::ostringstream os;
        os << "t=" << t << ": " << upd.diagnostic;
        trace.diagnostics.push_back(os.str());
      }
      EpochRecord e;
      e.epoch = upd.set.epoch;
      e.t = t;
      e.lo = upd.set.lo;
      e.hi = upd.set.hi;
      e.d_tilde_max = upd.set.d_tilde_max;
      e.residual_B = budget.residual_B;
      e.disturbance_term = budget.disturbance_term;
      e.total = budget.total;
      e.ep_true = ep_fn(cfg.true_delay);
      e.premise = e.ep_true <= budget.total;
      e.contains_true = upd.set.contains(cfg.true_delay);
      e.feasible_empty = upd.feasible_empty;
      trace.epochs.push_back(e);
      bounds = upd.set;
      est = reproject(est, bounds.lo, bounds.hi);
      epoch_now = true;
    }

    const Seconds d_hat = (mode == Mode::delay_free) ? 0.0 : est.d_hat;
    const Seconds d_tilde = (mode == Mode::proposed) ? bounds.d_tilde_max : d_tilde0;
    rec.d_hat = d_hat;
    rec.d_tilde_max = d_tilde;

    Vec u(1);
    if (mode == Mode::unfiltered) {
      const Vec un = truck::nominal(params, x);
      rec.u_nom = un(0);
      u(0) = std::clamp(un(0), params.u_min, params.u_max);
    } else {
      Vec x_pred = x;
      double d_e = 0.0;
      if (mode != Mode::delay_free) {
        const Seconds beyond = std::max(d_tilde, d_tilde0);
        const SampledTrajectory fwd =
            forward_nominal(model, params, inputs, x, t, d_hat, beyond, cfg.safety.forward_step);
        const TrajectoryFn y = [&](Seconds tau) { return tau >= t ? fwd(tau) : past(tau); };
        x_pred = fwd(t + d_hat);

        const double dy = delta_y_max(y, t, d_hat, d_tilde, cfg.safety.n_scan);
        const SafetyMargins live = margins_for(model, bf, y, t, d_hat, d_tilde, dy, cfg, u_bound);
        d_e = live.d_e;
        rec.e_max_val = live.e_max_val;
        rec.delta_y_max = live.delta_y_max;
        rec.e_tj_max = live.e_tj_max;
        if (d_tilde == d_tilde0) {
          rec.d_e_initial = d_e;
        } else {
          // The initial-set scan also covers the live scan points: the true
          // maximum over the wider interval dominates both.
          const double dy0 = std::max(dy, delta_y_max(y, t, d_hat, d_tilde0, cfg.safety.n_scan));
          rec.d_e_initial = margins_for(model, bf, y, t, d_hat, d_tilde0, dy0, cfg, u_bound).d_e;
        }

        if (epoch_now) {
          if (!ref.set) {
            Trajectory nodes;
            const Seconds from = t + d_hat - d_tilde0;
            if (from < 0.0) nodes.push_back({from, xs.front()});
            for (long j = std::max(0L, static_cast<long>(std::floor(from / dt))); j < k; ++j) {
              nodes.push_back({static_cast<double>(j) * dt, xs[static_cast<std::size_t>(j)]});
            }
            for (const PlantState& s : fwd.nodes()) nodes.push_back(s);
            ref = {true, t, d_hat, SampledTrajectory(std::move(nodes))};
          }
          trace.epochs.back().e_tj_max = live.e_tj_max;
          trace.epochs.back().e_tj_max_ref = reference_margin(model, ref, d_tilde, cfg, u_bound);
        }
      }
      const Vec un = truck::nominal(params, x_pred);
      rec.u_nom = un(0);
      const BarrierConstraint con = barrier_constraint(bf, model, x_pred, t + d_hat, d_e);
      const FilterResult fr = filter(con, un, box);
      u = fr.u;
      rec.d_e = d_e;
      rec.feasible = fr.feasible;
      rec.con_a = con.a(0);
      rec.con_b = con.b;
    }
    rec.u = u(0);
    trace.steps.push_back(rec);
    if (k == n_steps) break;

    inputs.push(t, u);
    const Vec u_obs = inputs.average(t - est.d_hat, t + dt - est.d_hat);
    obs = observer_step(obs, gains, model, x, t, u_obs, dt);
    x = step(model, {t, x}, inputs, plant_delay, dt).x;
    if (!all_finite(x)) {
      std::ostringstream os;
      os << "run: non-finite state after step " << k;
      throw DivergenceError(os.str(), k);
    }
    xs.push_back(x);
  }

  trace.summary = summarize(trace.steps, trace.epochs, plant_delay);
  trace.summary.final_lo = bounds.lo;
  trace.summary.final_hi = bounds.hi;
  return trace;
}

double SweepTable::row_average(std::size_t i_mode) const
{
  double acc = 0.0;
  int n = 0;
  for (std::size_t j = 0; j < delays.size(); ++j) {
    const SweepCell& c = cell(i_mode, j);
    if (!c.ok) continue;
    acc += c.summary.avg_h;
    ++n;
  }
  return n > 0 ? acc / n : std::numeric_limits<double>::quiet_NaN();
}

SweepTable sweep(const RunConfig& base, const std::vector<Seconds>& delays, const std::vector<Mode>& modes,
                 unsigned workers)
{
  if (delays.empty()) throw ConfigError("sweep: no delays given");
  if (modes.empty()) throw ConfigError("sweep: no modes given");
  SweepTable table;
  table.delays = delays;
  table.modes = modes;
  for (Mode m : modes) {
    for (Seconds d : delays) table.cells.push_back({d, m, false, "", {}});
  }

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < table.cells.size(); i = next++) {
      SweepCell& c = table.cells[i];
      try {
        RunConfig cfg = base;
        cfg.true_delay = c.delay;
        cfg.mode = c.mode;
        c.summary = run(cfg).summary;
        c.ok = true;
      } catch (const std::exception& e) {
        c.error = e.what();
      }
    }
  };
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(table.cells.size()));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < workers; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return table;
}

}  // namespace dacbf
