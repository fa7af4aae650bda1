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

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace dacbf
{

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Seconds. Kept as a plain alias; the code base mixes times and delays freely.
using Seconds = double;

/// Slack used when comparing sample times that were produced by k * dt.
inline constexpr double kTimeEps = 1e-9;

/// Query reached past the retained input history.
class LookbackError : public std::runtime_error
{
public:
  LookbackError(const std::string& what, double requested, double available)
      : std::runtime_error(what), requested_(requested), available_(available)
  {
  }
  double requested() const { return requested_; }
  double available() const { return available_; }

private:
  double requested_;
  double available_;
};

/// Caller broke a documented precondition.
class ContractError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Simulation produced a non-finite state.
class DivergenceError : public std::runtime_error
{
public:
  DivergenceError(const std::string& what, long step) : std::runtime_error(what), step_(step) {}
  long step() const { return step_; }

private:
  long step_;
};

/// Invalid run configuration; `what()` carries the offending field path.
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

inline bool all_finite(const Vec& v) { return v.allFinite(); }

}  // namespace dacbf
