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

#include "syneval/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "syneval/error.h"

namespace syneval {
namespace {

using nlohmann::json;

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string metric_or_blank(const AxisReport& r, const std::string& name) {
  auto it = r.metrics.find(name);
  return it == r.metrics.end() ? "" : format_number(it->second);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) fail(ErrorCode::kIo, "short write to '" + path.string() + "'");
}

}  // namespace

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

json report_to_json(const AxisReport& r) {
  json metrics = json::object();
  for (const auto& [k, v] : r.metrics) {
    if (!std::isfinite(v)) fail(ErrorCode::kNumericDivergence, "metric '" + k + "' is not finite");
    metrics[k] = v;
  }
  json curve = json::array();
  for (const auto& p : r.curve) curve.push_back({{"param", p.param}, {"value", p.value}});
  json buckets = json::array();
  for (const auto& b : r.buckets) {
    buckets.push_back({{"label", b.label},
                       {"fraction_lo", b.fraction_lo},
                       {"fraction_hi", b.fraction_hi},
                       {"rmse", b.rmse},
                       {"delta_rmse", b.delta_rmse}});
  }
  return {{"schema", kAxisReportSchema},
          {"job", r.job_name},
          {"job_hash", r.job_hash},
          {"axis", axis_name(r.axis)},
          {"extractor_id", r.extractor_id},
          {"fv", r.fv},
          {"transform", r.transform},
          {"perturbed_fv", r.perturbed_fv},
          {"probe", probe_kind_name(r.probe)},
          {"metrics", std::move(metrics)},
          {"curve", std::move(curve)},
          {"buckets", std::move(buckets)},
          {"config", r.config},
          {"seeds", r.seeds},
          {"provenance", r.provenance}};
}

AxisReport report_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorCode::kParse, "axis report is not a JSON object");
  const std::string schema = j.value("schema", "");
  if (schema != kAxisReportSchema) {
    fail(ErrorCode::kVersion,
         "axis report schema '" + schema + "' is not " + std::string(kAxisReportSchema));
  }
  AxisReport r;
  try {
    r.job_name = j.value("job", "");
    r.job_hash = j.value("job_hash", "");
    r.axis = parse_axis(j.at("axis").get<std::string>());
    r.extractor_id = j.value("extractor_id", "");
    r.fv = j.value("fv", "");
    r.transform = j.value("transform", "");
    r.perturbed_fv = j.value("perturbed_fv", "");
    r.probe = parse_probe_kind(j.value("probe", "none"));
    for (const auto& [k, v] : j.at("metrics").items()) r.metrics[k] = v.get<double>();
    for (const auto& p : j.value("curve", json::array())) {
      r.curve.push_back({p.at("param").get<double>(), p.at("value").get<double>()});
    }
    for (const auto& b : j.value("buckets", json::array())) {
      r.buckets.push_back({b.at("label").get<std::string>(), b.at("fraction_lo").get<double>(),
                           b.at("fraction_hi").get<double>(), b.at("rmse").get<double>(),
                           b.at("delta_rmse").get<double>()});
    }
    r.config = j.value("config", json::object());
    r.seeds = j.value("seeds", std::map<std::string, std::uint64_t>{});
    r.provenance = j.value("provenance", std::vector<std::string>{});
  } catch (const json::exception& e) {
    fail(ErrorCode::kParse, std::string("malformed axis report: ") + e.what());
  }
  return r;
}

void write_report(const std::filesystem::path& path, const AxisReport& report) {
  write_text(path, report_to_json(report).dump(2) + "\n");
}

AxisReport read_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open report '" + path.string() + "'");
  const json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::kParse, "report '" + path.string() + "' is not JSON");
  try {
    return report_from_json(j);
  } catch (const Error& e) {
    fail(e.code(), path.string() + ": " + e.what());
  }
}

std::vector<AxisReport> load_reports(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    fail(ErrorCode::kIo, "'" + dir.string() + "' is not a directory");
  }
  const auto root = std::filesystem::is_directory(dir / "reports") ? dir / "reports" : dir;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(root)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  std::vector<AxisReport> reports;
  std::string first_schema;
  for (const auto& f : files) {
    std::ifstream in(f);
    const json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("axis")) continue;  // not a report
    const std::string schema = j.value("schema", "");
    if (first_schema.empty()) first_schema = schema;
    if (schema != first_schema) {
      fail(ErrorCode::kVersion, "mixed report schema versions in '" + root.string() + "': '" +
                                    first_schema + "' and '" + schema + "'");
    }
    try {
      reports.push_back(report_from_json(j));
    } catch (const Error& e) {
      fail(e.code(), f.string() + ": " + e.what());
    }
  }
  if (reports.empty()) fail(ErrorCode::kInput, "no reports found in '" + root.string() + "'");
  return reports;
}

std::string axis_results_csv(const std::vector<AxisReport>& reports) {
  std::ostringstream out;
  out << "job,axis,extractor_id,fv,transform,perturbed_fv,probe,rmse,baseline_rmse,mse,"
         "cosine_mean,max_abs_delta_rmse\n";
  for (const auto& r : reports) {
    out << csv_field(r.job_name) << ',' << axis_name(r.axis) << ',' << csv_field(r.extractor_id)
        << ',' << csv_field(r.fv) << ',' << csv_field(r.transform) << ','
        << csv_field(r.perturbed_fv) << ',' << probe_kind_name(r.probe) << ','
        << metric_or_blank(r, "rmse") << ',' << metric_or_blank(r, "baseline_rmse") << ','
        << metric_or_blank(r, "mse") << ',' << metric_or_blank(r, "cosine_mean") << ','
        << metric_or_blank(r, "max_abs_delta_rmse") << '\n';
  }
  return out.str();
}

std::string invariance_curves_csv(const std::vector<AxisReport>& reports) {
  std::ostringstream out;
  out << "job,extractor_id,transform,param,cosine_mean\n";
  for (const auto& r : reports) {
    if (r.axis != Axis::kInvariance) continue;
    for (const auto& p : r.curve) {
      out << csv_field(r.job_name) << ',' << csv_field(r.extractor_id) << ','
          << csv_field(r.transform) << ',' << format_number(p.param) << ','
          << format_number(p.value) << '\n';
    }
  }
  return out.str();
}

std::string disentanglement_buckets_csv(const std::vector<AxisReport>& reports) {
  std::ostringstream out;
  out << "job,extractor_id,fv,transform,bucket,fraction_lo,fraction_hi,rmse,delta_rmse\n";
  for (const auto& r : reports) {
    if (r.axis != Axis::kDisentanglement) continue;
    for (const auto& b : r.buckets) {
      out << csv_field(r.job_name) << ',' << csv_field(r.extractor_id) << ',' << csv_field(r.fv)
          << ',' << csv_field(r.transform) << ',' << b.label << ','
          << format_number(b.fraction_lo) << ',' << format_number(b.fraction_hi) << ','
          << format_number(b.rmse) << ',' << format_number(b.delta_rmse) << '\n';
    }
  }
  return out.str();
}

std::vector<AxisReport> sorted_by_job(std::vector<AxisReport> reports) {
  std::stable_sort(reports.begin(), reports.end(),
                   [](const AxisReport& a, const AxisReport& b) { return a.job_name < b.job_name; });
  return reports;
}

std::vector<std::filesystem::path> write_tables(const std::filesystem::path& out_dir,
                                                const std::vector<AxisReport>& unordered) {
  std::filesystem::create_directories(out_dir);
  const std::vector<AxisReport> reports = sorted_by_job(unordered);
  const std::vector<std::pair<std::string, std::string>> tables = {
      {"axis_results.csv", axis_results_csv(reports)},
      {"invariance_curves.csv", invariance_curves_csv(reports)},
      {"disentanglement_buckets.csv", disentanglement_buckets_csv(reports)}};
  std::vector<std::filesystem::path> written;
  for (const auto& [name, text] : tables) {
    write_text(out_dir / name, text);
    written.push_back(out_dir / name);
  }
  return written;
}

}  // namespace syneval
