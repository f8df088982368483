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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <string>

#include "syneval/plot.h"
#include "syneval/report.h"
#include "test_util.h"

namespace syneval {
namespace {

using syneval::testing::read_file;
using syneval::testing::TempDir;
using syneval::testing::write_file;

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

AxisReport informativeness_report(const std::string& job, double rmse) {
  AxisReport r;
  r.job_name = job;
  r.job_hash = "h-" + job;
  r.axis = Axis::kInformativeness;
  r.extractor_id = "toy/image";
  r.fv = "hue";
  r.probe = ProbeKind::kSlp;
  r.metrics = {{"rmse", rmse}, {"baseline_rmse", 0.3}};
  r.seeds = {{"probe", 7}};
  r.provenance = {"note"};
  return r;
}

AxisReport invariance_report(const std::string& job, const std::string& extractor) {
  AxisReport r;
  r.job_name = job;
  r.axis = Axis::kInvariance;
  r.extractor_id = extractor;
  r.transform = "hue_shift";
  r.curve = {{-0.5, 0.9}, {0.0, 1.0}, {0.5, 0.8}};
  r.metrics = {{"cosine_mean", 0.9}};
  return r;
}

TEST(ReportTest, JsonRoundTrip) {
  AxisReport r = informativeness_report("a", 0.125);
  r.buckets = {{"--", -1, -0.5, 0.2, 0.05}};
  r.curve = {{0.25, 0.5}};
  r.config = {{"probe", {{"kind", "slp"}}}};
  const AxisReport back = report_from_json(report_to_json(r));
  EXPECT_EQ(report_to_json(back), report_to_json(r));
  EXPECT_EQ(back.metrics, r.metrics);
  EXPECT_EQ(back.seeds, r.seeds);
  EXPECT_EQ(back.buckets[0].label, "--");
  EXPECT_EQ(report_to_json(r)["schema"], kAxisReportSchema);
}

TEST(ReportTest, RejectsNonFiniteMetricsAndOtherSchemas) {
  AxisReport r = informativeness_report("a", std::numeric_limits<double>::quiet_NaN());
  EXPECT_SYNEVAL_ERROR(report_to_json(r), kNumericDivergence);
  auto j = report_to_json(informativeness_report("a", 0.1));
  j["schema"] = "syneval.axis_report/9";
  EXPECT_SYNEVAL_ERROR(report_from_json(j), kVersion);
  EXPECT_SYNEVAL_ERROR(report_from_json(nlohmann::json::array()), kParse);
}

TEST(ReportTest, SingleReportGivesOneRow) {
  const std::string csv = axis_results_csv({informativeness_report("only", 0.0625)});
  EXPECT_EQ(count(csv, "\n"), 2u);
  EXPECT_NE(csv.find("only,informativeness,toy/image,hue,,,slp,0.0625,0.3,,,"), std::string::npos)
      << csv;
  EXPECT_EQ(count(invariance_curves_csv({informativeness_report("only", 0.1)}), "\n"), 1u);
}

TEST(ReportTest, CsvQuotesAwkwardFields) {
  AxisReport r = informativeness_report("j", 0.1);
  r.extractor_id = "ext,with \"quotes\"";
  const std::string csv = axis_results_csv({r});
  EXPECT_NE(csv.find("\"ext,with \"\"quotes\"\"\""), std::string::npos) << csv;
}

TEST(ReportTest, LoadReportsFromDirectory) {
  TempDir dir;
  EXPECT_SYNEVAL_ERROR_MSG(load_reports(dir.path()), kInput, "no reports found");
  EXPECT_SYNEVAL_ERROR(load_reports(dir / "missing"), kIo);
  std::filesystem::create_directories(dir / "reports");
  write_report(dir / "reports" / "b.json", informativeness_report("b", 0.2));
  write_report(dir / "reports" / "a.json", informativeness_report("a", 0.1));
  write_file(dir / "reports" / "notes.json", R"({"unrelated": true})");
  const auto reports = load_reports(dir.path());
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(reports[0].job_name, "a");  // sorted by file name
  auto j = report_to_json(informativeness_report("c", 0.3));
  j["schema"] = "syneval.axis_report/0";
  write_file(dir / "reports" / "c.json", j.dump());
  EXPECT_SYNEVAL_ERROR_MSG(load_reports(dir.path()), kVersion, "mixed");
}

TEST(ReportTest, WriteTablesIsStable) {
  TempDir dir;
  const std::vector<AxisReport> reports = {informativeness_report("a", 0.1),
                                           invariance_report("i", "toy/image")};
  const auto first = write_tables(dir / "t1", reports);
  const auto second = write_tables(dir / "t2", reports);
  ASSERT_EQ(first.size(), 3u);
  for (std::size_t i = 0; i < first.size(); ++i) {
    EXPECT_EQ(read_file(first[i]), read_file(second[i]));
  }
  EXPECT_EQ(count(read_file(dir / "t1" / "invariance_curves.csv"), "\n"), 4u);
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1.0), "1");
}

TEST(PlotTest, InvarianceChartHasOneCurvePerExtractor) {
  TempDir dir;
  const std::vector<AxisReport> reports = {invariance_report("i1", "toy/a"),
                                           invariance_report("i2", "toy/b"),
                                           informativeness_report("inf", 0.1)};
  const auto files = write_plots(dir.path(), reports);
  const auto svg_path = dir / "invariance_hue_shift.svg";
  ASSERT_NE(std::find(files.begin(), files.end(), svg_path), files.end());
  const std::string svg = read_file(svg_path);
  EXPECT_EQ(count(svg, "<polyline"), 2u);
  EXPECT_NE(svg.find("toy/a"), std::string::npos);
  EXPECT_NE(svg.find("toy/b"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(dir / "informativeness.svg"));
}

TEST(PlotTest, ChartsAreWellFormedSvg) {
  const std::string bars = svg_bar_chart("t<1>", "rmse", {{"a&b", 0.5}, {"c", 0.0}});
  EXPECT_EQ(bars.rfind("<svg", 0), 0u);
  EXPECT_NE(bars.find("</svg>"), std::string::npos);
  EXPECT_NE(bars.find("t&lt;1&gt;"), std::string::npos);
  EXPECT_NE(bars.find("a&amp;b"), std::string::npos);
  const std::string grid =
      svg_bucket_grid("g", {"row"}, {{{"--", -1, -0.5, 0.1, 0.02}, {"++", 0.5, 1, 0.1, -0.01}}});
  EXPECT_NE(grid.find("</svg>"), std::string::npos);
  EXPECT_NE(svg_line_chart("l", "x", "y", {}).find("</svg>"), std::string::npos);
}

}  // namespace
}  // namespace syneval
