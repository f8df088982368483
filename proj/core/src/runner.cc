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

#include "syneval/runner.h"

#include <atomic>
#include <chrono>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <thread>

#include "syneval/embedding_store.h"
#include "syneval/extractor.h"
#include "syneval/hashing.h"
#include "syneval/manifest.h"
#include "syneval/media.h"
#include "syneval/pairs.h"
#include "syneval/plot.h"
#include "syneval/report.h"

namespace syneval {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) fail(ErrorCode::kIo, "cannot write '" + path.string() + "'");
}

// Everything a job reads from its dataset, built once before the pool runs.
struct LoadedDataset {
  std::vector<SampleRecord> records;
  std::vector<Split> splits;
  MediaDataset media;  // toy extractors only
  std::unique_ptr<FeatureExtractor> extractor;
  EmbeddingStore clean;
  std::string digest;  // manifest bytes (+ external clean store bytes)
  std::optional<Error> error;
};

std::string input_digest(const DatasetConfig& ds) {
  std::string bytes = read_bytes(ds.manifest);
  if (ds.extractor.kind == ExtractorKind::kExternal) bytes += read_bytes(ds.extractor.clean_store);
  return sha256_hex(bytes);
}

void load(const DatasetConfig& ds, LoadedDataset& out) {
  try {
    out.records = load_manifest(ds.manifest);
    if (out.records.empty()) fail(ErrorCode::kInput, "manifest '" + ds.manifest.string() + "' is empty");
    std::vector<std::string> ids;
    for (const auto& r : out.records) {
      out.splits.push_back(r.split);
      ids.push_back(r.id);
    }
    if (ds.extractor.kind == ExtractorKind::kToy) {
      out.media = load_dataset(out.records);
      if (dataset_modality(out.media) != ds.modality) {
        fail(ErrorCode::kConfig, "dataset '" + ds.name + "' declares " +
                                     std::string(modality_name(ds.modality)) + " but holds " +
                                     std::string(modality_name(dataset_modality(out.media))));
      }
      out.extractor = make_toy_extractor({ds.extractor.seed, ds.extractor.dim, ds.modality});
      out.clean = embed_dataset(*out.extractor, out.media);
    } else {
      out.clean = read_embeddings(ds.extractor.clean_store).select(ids);
    }
  } catch (const Error& e) {
    out.error = e;
  }
}

std::vector<double> job_fv(const std::string& fv, const LoadedDataset& data) {
  std::vector<double> values;
  values.reserve(data.records.size());
  for (std::size_t i = 0; i < data.records.size(); ++i) {
    const auto& r = data.records[i];
    if (auto it = r.fv_values.find(fv); it != r.fv_values.end()) {
      values.push_back(it->second);
    } else if (!data.media.empty()) {
      values.push_back(resolve_fv(fv, r, data.media[i].media));
    } else {
      values.push_back(resolve_fv(fv, r, load_media(r.media_path)));
    }
  }
  return values;
}

void add_transform_provenance(AxisReport& report, const TransformSpec& t) {
  if (t.kind == TransformKind::kRoomReverb) {
    report.provenance.push_back(
        "room_reverb convolves with a seeded synthetic exponential-decay impulse response");
  }
  if (t.kind == TransformKind::kAdditiveWhiteNoise) {
    report.provenance.push_back("additive_white_noise parameter is the signal-to-noise ratio in dB");
  }
  if (!t.info().has_identity) {
    report.provenance.push_back(std::string(t.info().name) + " has no identity parameter; neutral is " +
                                format_number(t.neutral));
  }
}

AxisReport execute(const JobConfig& job, const DatasetConfig& ds, const LoadedDataset& data,
                   const fs::path& pairs_dir) {
  if (data.error) throw *data.error;
  AxisReport report;
  auto labeled = [&] {
    return LabeledEmbeddings{data.clean, data.splits, job_fv(job.fv, data), job.fv};
  };
  auto pairs = [&](std::vector<std::string>& notes) {
    if (!data.extractor) {
      return external_embeddings(data.records, ds.extractor.clean_store, job.transformed_store, job.param_log);
    }
    MaterializeOptions opts;
    opts.output_dir = pairs_dir;
    opts.clean = &data.clean;
    auto result = materialize_pairs(data.media, *job.transform, *data.extractor, opts);
    for (const auto& f : result.failures) notes.push_back("dropped sample '" + f.id + "': " + f.message);
    return std::move(result.pairs);
  };

  std::vector<std::string> notes;
  switch (job.axis) {
    case Axis::kInformativeness:
      report = eval_informativeness(labeled(), job.probe).report;
      break;
    case Axis::kPEquivariance:
      report = eval_p_equivariance(pairs(notes), job.probe);
      break;
    case Axis::kREquivariance:
      report = eval_r_equivariance(pairs(notes), job.probe);
      break;
    case Axis::kInvariance:
      report = eval_invariance(data.media, *job.transform, *data.extractor, job.grid_points, &data.clean);
      break;
    case Axis::kDisentanglement: {
      const auto fv_probe = eval_informativeness(labeled(), job.probe);
      report = eval_disentanglement(fv_probe.probe, job.fv, data.media, *job.transform, *data.extractor,
                                    &data.clean);
      report.metrics["informativeness_rmse"] = fv_probe.report.metrics.at("rmse");
      break;
    }
  }
  if (job.transform) add_transform_provenance(report, *job.transform);
  report.provenance.insert(report.provenance.end(), notes.begin(), notes.end());
  report.job_name = job.name;
  report.config = job.resolved;
  return report;
}

std::optional<AxisReport> current_report(const fs::path& path, const std::string& hash) {
  std::error_code ec;
  if (!fs::exists(path, ec)) return std::nullopt;
  try {
    auto report = read_report(path);
    if (report.job_hash == hash) return report;
  } catch (const Error&) {
    // Unreadable or stale reports are recomputed.
  }
  return std::nullopt;
}

}  // namespace

int exit_code_for(ErrorCode code) { return code == ErrorCode::kIo ? kExitIo : kExitInvalid; }

RunResult run_config(const RunConfig& config, const RunOptions& options) {
  std::mutex log_mutex;
  auto log = [&](const std::string& line) {
    if (!options.log) return;
    std::lock_guard lock(log_mutex);
    *options.log << line << "\n";
  };

  const fs::path out = config.output_dir;
  std::error_code ec;
  fs::create_directories(out / "reports", ec);
  if (ec) fail(ErrorCode::kIo, "cannot create '" + (out / "reports").string() + "': " + ec.message());

  const std::size_t n = config.jobs.size();
  RunResult result;
  result.jobs.resize(n);
  std::vector<std::optional<AxisReport>> reports(n);

  // Hashes and up-to-date checks first, so a rerun touches no media.
  std::map<std::string, LoadedDataset> datasets;
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < n; ++i) {
    const JobConfig& job = config.jobs[i];
    LoadedDataset& data = datasets[job.dataset];
    if (data.digest.empty() && !data.error) {
      try {
        data.digest = input_digest(config.dataset(job.dataset));
      } catch (const Error& e) {
        data.error = e;
      }
    }
    JobOutcome& o = result.jobs[i];
    o.name = job.name;
    o.axis = std::string(axis_name(job.axis));
    o.report = out / "reports" / (job.name + ".json");
    o.job_hash = job_hash(config, job, data.digest);
    if (!options.force && !data.error) {
      if (auto existing = current_report(o.report, o.job_hash)) {
        o.status = "skipped";
        reports[i] = std::move(existing);
        log("skip " + job.name + " (up to date)");
        continue;
      }
    }
    pending.push_back(i);
  }
  std::map<std::string, bool> loaded;
  for (std::size_t i : pending) {
    const std::string& name = config.jobs[i].dataset;
    LoadedDataset& data = datasets[name];
    if (loaded[name] || data.error) continue;
    log("loading dataset " + name);
    load(config.dataset(name), data);
    loaded[name] = true;
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < pending.size(); k = next++) {
      const std::size_t i = pending[k];
      const JobConfig& job = config.jobs[i];
      const LoadedDataset& data = datasets.at(job.dataset);
      JobOutcome& o = result.jobs[i];
      const auto start = std::chrono::steady_clock::now();
      try {
        AxisReport report = execute(job, config.dataset(job.dataset), data, out / "pairs" / job.name);
        report.job_hash = o.job_hash;
        write_report(o.report, report);
        reports[i] = std::move(report);
        o.status = "ok";
      } catch (const std::exception& e) {
        o.status = "failed";
        o.error = e.what();
      }
      o.wall_clock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      log(o.status + " " + job.name + (o.error.empty() ? "" : ": " + o.error));
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(options.threads, pending.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<AxisReport> done;
  for (auto& r : reports) {
    if (r) done.push_back(std::move(*r));
  }
  if (!done.empty()) {
    write_tables(out / "tables", done);
    write_plots(out / "plots", done);
  }

  json jobs = json::array();
  json stable = json::array();
  for (const auto& o : result.jobs) {
    jobs.push_back({{"name", o.name},
                    {"axis", o.axis},
                    {"status", o.status},
                    {"report", o.status == "failed" ? "" : fs::relative(o.report, out).generic_string()},
                    {"job_hash", o.job_hash},
                    {"wall_clock_s", o.wall_clock_s},
                    {"error", o.error}});
    stable.push_back({{"name", o.name}, {"axis", o.axis}, {"job_hash", o.job_hash},
                      {"failed", o.status == "failed"}});
    if (o.status == "failed") result.exit_code = kExitJobFailed;
  }
  const std::string cfg_hash = config_hash(config);
  const json summary = {{"schema", kSummarySchema},
                        {"engine_version", engine_version()},
                        {"config_hash", cfg_hash},
                        {"jobs", jobs},
                        {"summary_hash", sha256_hex(cfg_hash + "\n" + stable.dump())}};
  result.summary = out / "summary.json";
  write_text(result.summary, summary.dump(2) + "\n");
  return result;
}

std::vector<std::string> validate_inputs(const RunConfig& config) {
  std::vector<std::string> problems;
  auto check_file = [&](const fs::path& p, const std::string& what) {
    std::error_code ec;
    if (!fs::is_regular_file(p, ec)) problems.push_back(what + " '" + p.string() + "' not found");
  };
  for (const auto& ds : config.datasets) {
    check_file(ds.manifest, "dataset '" + ds.name + "' manifest");
    if (ds.extractor.kind == ExtractorKind::kExternal) {
      check_file(ds.extractor.clean_store, "dataset '" + ds.name + "' clean store");
    }
    std::vector<SampleRecord> records;
    try {
      records = load_manifest(ds.manifest);
    } catch (const Error& e) {
      problems.push_back("dataset '" + ds.name + "': " + e.what());
      continue;
    }
    if (records.empty()) problems.push_back("dataset '" + ds.name + "': manifest is empty");
    for (const auto& r : records) {
      std::error_code ec;
      if (ds.extractor.kind == ExtractorKind::kToy && !fs::is_regular_file(r.media_path, ec)) {
        problems.push_back("dataset '" + ds.name + "': media for '" + r.id + "' not found at '" +
                           r.media_path.string() + "'");
      }
    }
    for (const auto& job : config.jobs) {
      if (job.dataset != ds.name || job.fv.empty() || records.empty()) continue;
      const auto& r = records.front();
      if (r.fv_values.count(job.fv)) continue;
      const bool computable =
          ds.modality == Modality::kImage
              ? (job.fv == "hue" || job.fv == "saturation" || job.fv == "brightness")
              : (job.fv == "speech_rate" && r.transcript.has_value());
      if (!computable) {
        problems.push_back("job '" + job.name + "': FV '" + job.fv +
                           "' is neither in the manifest nor computable from media");
      }
    }
  }
  for (const auto& job : config.jobs) {
    if (!job.transformed_store.empty()) check_file(job.transformed_store, "job '" + job.name + "' transformed store");
    if (!job.param_log.empty()) check_file(job.param_log, "job '" + job.name + "' param log");
  }
  return problems;
}

std::vector<fs::path> rebuild_tables(const fs::path& results_dir, const fs::path& out_dir) {
  return write_tables(out_dir, load_reports(results_dir));
}

std::vector<fs::path> rebuild_plots(const fs::path& results_dir, const fs::path& out_dir) {
  return write_plots(out_dir, load_reports(results_dir));
}

}  // namespace syneval
