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


#include "dacbf/trace_io.hpp"

#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace dacbf
{

namespace
{

class CsvRow
{
public:
  explicit CsvRow(std::ostream& os) : os_(os) { os_ << std::setprecision(17); }
  ~CsvRow() { os_ << '\n'; }

  template <class T>
  CsvRow& operator<<(const T& v)
  {
    if (!first_) os_ << ',';
    first_ = false;
    os_ << v;
    return *this;
  }

private:
  std::ostream& os_;
  bool first_ = true;
};

void write_header(std::ostream& os, const std::vector<std::string>& cols)
{
  CsvRow row(os);
  for (const auto& c : cols) row << c;
}

std::ofstream open_out(const std::filesystem::path& p)
{
  std::ofstream f(p);
  if (!f) throw std::runtime_error(p.string() + ": " + std::strerror(errno));
  return f;
}

std::vector<std::vector<double>> read_table(const std::string& path, std::size_t n_cols)
{
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": " + std::strerror(errno));
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != n_cols) throw std::runtime_error(path + ": malformed row '" + line + "'");
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

const std::vector<std::string>& step_columns()
{
  static const std::vector<std::string> cols = {
      "t",     "xi",     "v",         "v_lead",      "h",           "u_nom",   "u",
      "d_e",   "d_e_initial", "e_tj_max", "e_max_val", "delta_y_max", "feasible", "d_hat",
      "d_err", "rho",    "d_tilde_max", "dist_hat",  "con_a",       "con_b"};
  return cols;
}

const std::vector<std::string>& epoch_columns()
{
  static const std::vector<std::string> cols = {
      "epoch", "t",       "lo",      "hi",       "d_tilde_max",    "residual_B",     "disturbance_term",
      "total", "ep_true", "premise", "contains_true", "feasible_empty", "e_tj_max", "e_tj_max_ref"};
  return cols;
}

const std::vector<std::string>& summary_columns()
{
  static const std::vector<std::string> cols = {
      "avg_h",           "min_h",         "steps",    "infeasible_steps", "epochs", "premise_failures",
      "empty_updates",   "final_lo",      "final_hi", "final_d_hat"};
  return cols;
}

void write_steps(std::ostream& os, const std::vector<StepRecord>& steps)
{
  write_header(os, step_columns());
  for (const StepRecord& r : steps) {
    CsvRow(os) << r.t << r.xi << r.v << r.v_lead << r.h << r.u_nom << r.u << r.d_e << r.d_e_initial
               << r.e_tj_max << r.e_max_val << r.delta_y_max << (r.feasible ? 1 : 0) << r.d_hat << r.d_err
               << r.rho << r.d_tilde_max << r.dist_hat << r.con_a << r.con_b;
  }
}

void write_epochs(std::ostream& os, const std::vector<EpochRecord>& epochs)
{
  write_header(os, epoch_columns());
  for (const EpochRecord& e : epochs) {
    CsvRow(os) << e.epoch << e.t << e.lo << e.hi << e.d_tilde_max << e.residual_B << e.disturbance_term
               << e.total << e.ep_true << (e.premise ? 1 : 0) << (e.contains_true ? 1 : 0)
               << (e.feasible_empty ? 1 : 0) << e.e_tj_max << e.e_tj_max_ref;
  }
}

void write_summary(std::ostream& os, const RunSummary& s)
{
  write_header(os, summary_columns());
  CsvRow(os) << s.avg_h << s.min_h << s.steps << s.infeasible_steps << s.epochs << s.premise_failures
             << s.empty_updates << s.final_lo << s.final_hi << s.final_d_hat;
}

void export_trace(const RunTrace& trace, const std::string& dir)
{
  const std::filesystem::path root(dir);
  std::filesystem::create_directories(root);
  {
    auto f = open_out(root / "header.ini");
    for (const auto& [k, v] : trace.header) f << k << " = " << v << '\n';
    for (const auto& d : trace.diagnostics) f << "# " << d << '\n';
  }
  {
    auto f = open_out(root / "steps.csv");
    write_steps(f, trace.steps);
  }
  {
    auto f = open_out(root / "epochs.csv");
    write_epochs(f, trace.epochs);
  }
  {
    auto f = open_out(root / "summary.csv");
    write_summary(f, trace.summary);
  }
}

std::vector<StepRecord> read_steps(const std::string& path)
{
  std::vector<StepRecord> out;
  for (const auto& c : read_table(path, step_columns().size())) {
    StepRecord r;
    r.t = c[0];
    r.xi = c[1];
    r.v = c[2];
    r.v_lead = c[3];
    r.h = c[4];
    r.u_nom = c[5];
    r.u = c[6];
    r.d_e = c[7];
    r.d_e_initial = c[8];
    r.e_tj_max = c[9];
    r.e_max_val = c[10];
    r.delta_y_max = c[11];
    r.feasible = c[12] != 0.0;
    r.d_hat = c[13];
    r.d_err = c[14];
    r.rho = c[15];
    r.d_tilde_max = c[16];
    r.dist_hat = c[17];
    r.con_a = c[18];
    r.con_b = c[19];
    out.push_back(r);
  }
  return out;
}

std::vector<EpochRecord> read_epochs(const std::string& path)
{
  std::vector<EpochRecord> out;
  for (const auto& c : read_table(path, epoch_columns().size())) {
    EpochRecord e;
    e.epoch = static_cast<long>(c[0]);
    e.t = c[1];
    e.lo = c[2];
    e.hi = c[3];
    e.d_tilde_max = c[4];
    e.residual_B = c[5];
    e.disturbance_term = c[6];
    e.total = c[7];
    e.ep_true = c[8];
    e.premise = c[9] != 0.0;
    e.contains_true = c[10] != 0.0;
    e.feasible_empty = c[11] != 0.0;
    e.e_tj_max = c[12];
    e.e_tj_max_ref = c[13];
    out.push_back(e);
  }
  return out;
}

void write_sweep(std::ostream& os, const SweepTable& table)
{
  {
    CsvRow row(os);
    row << "method";
    for (Seconds d : table.delays) row << ("D=" + [&] {
      std::ostringstream s;
      s << d;
      return s.str();
    }());
    row << "average";
  }
  for (std::size_t i = 0; i < table.modes.size(); ++i) {
    CsvRow row(os);
    row << to_string(table.modes[i]);
    for (std::size_t j = 0; j < table.delays.size(); ++j) {
      const SweepCell& c = table.cell(i, j);
      if (c.ok) {
        row << c.summary.avg_h;
      } else {
        row << "failed";
      }
    }
    row << table.row_average(i);
  }
  if (table.modes.size() >= 2) {
    CsvRow row(os);
    row << ("ratio_" + to_string(table.modes[1]) + "_over_" + to_string(table.modes[0]));
    for (std::size_t j = 0; j < table.delays.size(); ++j) {
      const SweepCell& a = table.cell(0, j);
      const SweepCell& b = table.cell(1, j);
      if (a.ok && b.ok) {
        row << b.summary.avg_h / a.summary.avg_h;
      } else {
        row << "failed";
      }
    }
    row << table.row_average(1) / table.row_average(0);
  }
}

}  // namespace dacbf
