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

#ifndef SYNEVAL_REPORT_H_
#define SYNEVAL_REPORT_H_

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "syneval/axes.h"

namespace syneval {

inline constexpr const char* kAxisReportSchema = "syneval.axis_report/1";

nlohmann::json report_to_json(const AxisReport& report);
// Throws kVersion on a schema other than kAxisReportSchema and kParse on
// malformed content.
AxisReport report_from_json(const nlohmann::json& j);

void write_report(const std::filesystem::path& path, const AxisReport& report);
AxisReport read_report(const std::filesystem::path& path);

// Reports under dir/reports (or dir itself when it has no reports/
// subdirectory), sorted by file name. Throws kInput when there are none and
// kVersion when schemas are mixed.
std::vector<AxisReport> load_reports(const std::filesystem::path& dir);

// Flat tables. Numbers use %.9g so identical inputs give identical bytes.
std::string axis_results_csv(const std::vector<AxisReport>& reports);
std::string invariance_curves_csv(const std::vector<AxisReport>& reports);
std::string disentanglement_buckets_csv(const std::vector<AxisReport>& reports);

// Reports ordered by job name, the order every table and plot uses.
std::vector<AxisReport> sorted_by_job(std::vector<AxisReport> reports);

// Writes the three tables into out_dir; returns the written paths.
std::vector<std::filesystem::path> write_tables(const std::filesystem::path& out_dir,
                                                const std::vector<AxisReport>& reports);

std::string format_number(double value);

}  // namespace syneval

#endif  // SYNEVAL_REPORT_H_
