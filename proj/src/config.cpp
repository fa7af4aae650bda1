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


#include "dacbf/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <variant>

namespace dacbf
{

std::string to_string(Mode m)
{
  switch (m) {
    case Mode::dacbf_baseline: return "dacbf_baseline";
    case Mode::proposed: return "proposed";
    case Mode::unfiltered: return "unfiltered";
    case Mode::delay_free: return "delay_free";
  }
  return "?";
}

Mode parse_mode(const std::string& s)
{
  for (Mode m : {Mode::dacbf_baseline, Mode::proposed, Mode::unfiltered, Mode::delay_free}) {
    if (to_string(m) == s) return m;
  }
  throw ConfigError("run.mode: unknown mode '" + s +
                    "' (expected dacbf_baseline, proposed, unfiltered or delay_free)");
}

bool is_asserting(Mode m) { return m == Mode::dacbf_baseline || m == Mode::proposed; }

namespace
{

using FieldRef = std::variant<double*, int*, unsigned long*, Mode*>;

struct Field
{
  std::string section;
  std::string key;
  FieldRef ref;
};

std::vector<Field> fields(RunConfig& c)
{
  auto& s = c.scenario;
  return {
      {"run", "mode", &c.mode},
      {"run", "true_delay", &c.true_delay},
      {"scenario", "xi_sf", &s.xi_sf},
      {"scenario", "T_headway", &s.T_headway},
      {"scenario", "xi_st", &s.xi_st},
      {"scenario", "k_gain", &s.k_gain},
      {"scenario", "v_max", &s.v_max},
      {"scenario", "A_gain", &s.A_gain},
      {"scenario", "B_gain", &s.B_gain},
      {"scenario", "u_min", &s.u_min},
      {"scenario", "u_max", &s.u_max},
      {"scenario", "x0_xi", &c.x0(0)},
      {"scenario", "x0_v", &c.x0(1)},
      {"scenario", "x0_vL", &c.x0(2)},
      {"lead", "cruise_accel", &s.lead.cruise_accel},
      {"lead", "brake_start", &s.lead.brake_start},
      {"lead", "brake_end", &s.lead.brake_end},
      {"lead", "brake_accel", &s.lead.brake_accel},
      {"estimator", "gamma", &c.estimator.gamma},
      {"estimator", "d_hat0", &c.estimator.d_hat0},
      {"observer", "alpha_h", &c.observer.alpha_h},
      {"observer", "c", &c.observer.c},
      {"observer", "w1_floor", &c.observer.w1_floor},
      {"predictor", "beta", &c.predictor.beta},
      {"predictor", "n_quad", &c.predictor.n_quad},
      {"predictor", "fd_eps", &c.predictor.fd_eps},
      {"bounds", "lo0", &c.bounds.lo0},
      {"bounds", "hi0", &c.bounds.hi0},
      {"bounds", "n_grid", &c.bounds.n_grid},
      {"bounds", "tol", &c.bounds.tol},
      {"bounds", "t_update", &c.bounds.t_update},
      {"bounds", "activation", &c.bounds.activation},
      {"safety", "alpha0", &c.safety.alpha0},
      {"safety", "n_scan", &c.safety.n_scan},
      {"safety", "n_quad", &c.safety.n_quad},
      {"safety", "udot_max", &c.safety.udot_max},
      {"safety", "udot_max_ceiling", &c.safety.udot_max_ceiling},
      {"safety", "forward_step", &c.safety.forward_step},
      {"sim", "dt", &c.sim.dt},
      {"sim", "t_end", &c.sim.t_end},
      {"sim", "seed", &c.sim.seed},
  };
}

std::string format_number(double v)
{
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string format(const FieldRef& ref)
{
  return std::visit(
      [](auto* p) -> std::string {
        using T = std::remove_pointer_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Mode>) {
          return to_string(*p);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_number(*p);
        } else {
          return std::to_string(*p);
        }
      },
      ref);
}

void assign(const FieldRef& ref, const std::string& path, const std::string& text)
{
  std::visit(
      [&](auto* p) {
        using T = std::remove_pointer_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Mode>) {
          *p = parse_mode(text);
        } else {
          std::istringstream is(text);
          T v{};
          is >> v;
          std::string rest;
          if (is.fail() || (is >> rest)) throw ConfigError(path + ": cannot parse '" + text + "'");
          *p = v;
        }
      },
      ref);
}

void require(bool ok, const std::string& msg)
{
  if (!ok) throw ConfigError(msg);
}

bool on_grid(double span, double dt)
{
  const double k = std::round(span / dt);
  return std::abs(k * dt - span) <= 1e-9 * std::max(1.0, std::abs(span));
}

RunConfig parse_tree(const boost::property_tree::ptree& tree)
{
  RunConfig cfg;
  std::map<std::string, FieldRef> index;
  for (const Field& f : fields(cfg)) index.emplace(f.section + "." + f.key, f.ref);

  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) throw ConfigError(section + ": key outside any section");
    for (const auto& [key, value] : body) {
      const std::string path = section + "." + key;
      auto it = index.find(path);
      if (it == index.end()) throw ConfigError(path + ": unknown key");
      assign(it->second, path, value.data());
    }
  }
  cfg.validate();
  return cfg;
}

}  // namespace

void RunConfig::validate() const
{
  try {
    scenario.validate();
  } catch (const ContractError& e) {
    throw ConfigError(e.what());
  }
  require(x0.size() == 3 && x0.allFinite(), "scenario.x0: need three finite values");
  require(scenario.lead.brake_start >= 0.0, "lead.brake_start must be >= 0");
  require(true_delay >= 0.0, "run.true_delay must be >= 0");
  require(estimator.gamma > 0.0, "estimator.gamma must be > 0");
  require(observer.alpha_h > 0.0, "observer.alpha_h must be > 0");
  require(observer.alpha_h * sim.dt <= 0.5, "observer.alpha_h must be <= 1 / (2 sim.dt) for the Euler step");
  require(observer.c > 0.0 && observer.c < 2.0 * observer.alpha_h, "observer.c must lie in (0, 2 alpha_h)");
  require(observer.w1_floor >= 0.0, "observer.w1_floor must be >= 0");
  try {
    predictor.validate();
  } catch (const ContractError& e) {
    throw ConfigError(e.what());
  }
  require(0.0 <= bounds.lo0 && bounds.lo0 <= bounds.hi0, "bounds: need 0 <= lo0 <= hi0");
  require(estimator.d_hat0 >= bounds.lo0 && estimator.d_hat0 <= bounds.hi0,
          "estimator.d_hat0 must lie in [bounds.lo0, bounds.hi0]");
  require(bounds.n_grid >= 2, "bounds.n_grid must be >= 2");
  require(bounds.tol > 0.0, "bounds.tol must be > 0");
  require(bounds.t_update > 0.0, "bounds.t_update must be > 0");
  require(bounds.activation >= predictor.beta + bounds.hi0 - 1e-12,
          "bounds.activation must be >= predictor.beta + bounds.hi0");
  require(safety.alpha0 > 0.0, "safety.alpha0 must be > 0");
  require(safety.n_scan >= 2, "safety.n_scan must be >= 2");
  require(safety.n_quad >= 2, "safety.n_quad must be >= 2");
  require(safety.udot_max >= 0.0, "safety.udot_max must be >= 0");
  require(safety.udot_max <= safety.udot_max_ceiling, "safety.udot_max exceeds safety.udot_max_ceiling");
  require(safety.forward_step > 0.0, "safety.forward_step must be > 0");
  require(sim.dt > 0.0, "sim.dt must be > 0");
  require(sim.t_end > 0.0 && on_grid(sim.t_end, sim.dt), "sim.t_end must be a positive multiple of sim.dt");
  require(on_grid(predictor.beta, sim.dt), "predictor.beta must be a multiple of sim.dt");
  require(on_grid(bounds.t_update, sim.dt), "bounds.t_update must be a multiple of sim.dt");
  require(on_grid(bounds.activation, sim.dt), "bounds.activation must be a multiple of sim.dt");
  if (is_asserting(mode)) {
    require(bounds.lo0 <= true_delay && true_delay <= bounds.hi0,
            "run.true_delay must lie in [bounds.lo0, bounds.hi0] for mode " + to_string(mode));
  }
}

RunConfig parse_config(const std::string& text)
{
  boost::property_tree::ptree tree;
  std::istringstream is(text);
  try {
    boost::property_tree::ini_parser::read_ini(is, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return parse_tree(tree);
}

RunConfig load_config(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::vector<std::pair<std::string, std::string>> echo(const RunConfig& cfg)
{
  RunConfig copy = cfg;
  std::vector<std::pair<std::string, std::string>> out;
  for (const Field& f : fields(copy)) out.emplace_back(f.section + "." + f.key, format(f.ref));
  return out;
}

std::string to_ini(const RunConfig& cfg)
{
  RunConfig copy = cfg;
  std::ostringstream os;
  std::string current;
  for (const Field& f : fields(copy)) {
    if (f.section != current) {
      if (!current.empty()) os << '\n';
      os << '[' << f.section << "]\n";
      current = f.section;
    }
    os << f.key << " = " << format(f.ref) << '\n';
  }
  return os.str();
}

}  // namespace dacbf
