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

#include <iosfwd>
#include <string>
#include <vector>

#include "dacbf/runner.hpp"

namespace dacbf
{

/// Column names of steps.csv, epochs.csv and summary.csv.
const std::vector<std::string>& step_columns();
const std::vector<std::string>& epoch_columns();
const std::vector<std::string>& summary_columns();

/**
 * Write steps.csv, epochs.csv, summary.csv and header.ini into `dir`
 * (created if missing). Numbers carry 17 significant digits, so a reader
 * recovers the exact doubles.
 */
void export_trace(const RunTrace& trace, const std::string& dir);

void write_steps(std::ostream& os, const std::vector<StepRecord>& steps);
void write_epochs(std::ostream& os, const std::vector<EpochRecord>& epochs);
void write_summary(std::ostream& os, const RunSummary& s);

std::vector<StepRecord> read_steps(const std::string& path);
std::vector<EpochRecord> read_epochs(const std::string& path);

/// Table-1 style layout: one row per mode, one column per delay, an average column, then a ratio row.
void write_sweep(std::ostream& os, const SweepTable& table);

}  // namespace dacbf
