// Copyright 2026 The syneval Authors. All Rights Reserved.
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

#ifndef SYNEVAL_RUNNER_H_
#define SYNEVAL_RUNNER_H_

#include <cstddef>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "syneval/config.h"
#include "syneval/error.h"

namespace syneval {

inline constexpr const char* kSummarySchema = "syneval.summary/1";

// Process exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitJobFailed = 2;
inline constexpr int kExitIo = 3;

int exit_code_for(ErrorCode code);

struct RunOptions {
  bool force = false;         // recompute jobs whose report is current
  std::size_t threads = 1;    // concurrent jobs
  std::ostream* log = nullptr;
};

struct JobOutcome {
  std::string name;
  std::string axis;
  std::string status;  // "ok", "skipped" or "failed"
  std::filesystem::path report;
  std::string job_hash;
  double wall_clock_s = 0.0;
  std::string error;
};

struct RunResult {
  std::vector<JobOutcome> jobs;
  std::filesystem::path summary;
  int exit_code = kExitOk;
};

// Runs every job of a validated config. Datasets are loaded and embedded
// once, then jobs run on a pool. A job whose report already carries the
// same job hash is skipped unless options.force is set. Writes
// reports/<job>.json, pairs/<job>/, tables/, plots/ and summary.json under
// the config's output_dir. Job failures are recorded, not thrown.
RunResult run_config(const RunConfig& config, const RunOptions& options = {});

// Checks that everything a run needs is present: manifests parse, media
// files and external containers exist, requested FVs resolve from the
// manifest or are computable. Returns human-readable problems.
std::vector<std::string> validate_inputs(const RunConfig& config);

// Rebuilds tables (and plots) from the reports under dir.
std::vector<std::filesystem::path> rebuild_tables(const std::filesystem::path& results_dir,
                                                  const std::filesystem::path& out_dir);
std::vector<std::filesystem::path> rebuild_plots(const std::filesystem::path& results_dir,
                                                 const std::filesystem::path& out_dir);

}  // namespace syneval

#endif  // SYNEVAL_RUNNER_H_
