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

#ifndef SYNEVAL_PLOT_H_
#define SYNEVAL_PLOT_H_

#include <filesystem>
#include <string>
#include <vector>

#include "syneval/axes.h"

namespace syneval {

struct Series {
  std::string label;
  std::vector<CurvePoint> points;
};

// Standalone SVG documents. Output depends only on the arguments, so
// identical inputs give identical bytes.
std::string svg_bar_chart(const std::string& title, const std::string& y_label,
                          const std::vector<std::pair<std::string, double>>& bars);
std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<Series>& series);
std::string svg_bucket_grid(const std::string& title, const std::vector<std::string>& row_labels,
                            const std::vector<std::vector<BucketResult>>& rows);

// Figures for a set of reports: one bar chart per probe axis, one line
// chart per invariance transform (a curve per extractor), one bucket grid
// per disentanglement transform. Returns the written paths.
std::vector<std::filesystem::path> write_plots(const std::filesystem::path& out_dir,
                                               const std::vector<AxisReport>& reports);

}  // namespace syneval

#endif  // SYNEVAL_PLOT_H_
