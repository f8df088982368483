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

#include "syneval/config.h"

#include <cctype>
#include <fstream>
#include <set>
#include <unordered_set>

#include "syneval/error.h"
#include "syneval/hashing.h"

#ifndef SYNEVAL_VERSION
#define SYNEVAL_VERSION "0.0.0"
#endif

namespace syneval {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  fail(ErrorCode::kConfig, where + ": " + what);
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) bad(where, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) bad(where, "unknown key '" + key + "'");
  }
}

const json& need(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) bad(where, std::string("missing required key '") + key + "'");
  return *it;
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) bad(where, "expected a string");
  return v.get<std::string>();
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) bad(where, "expected a number");
  return v.get<double>();
}

bool non_negative_integer(const json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

std::uint64_t as_seed(const json& v, const std::string& where) {
  if (!non_negative_integer(v)) bad(where, "seed must be a non-negative integer");
  return v.get<std::uint64_t>();
}

std::size_t as_count(const json& v, const std::string& where) {
  if (!non_negative_integer(v)) bad(where, "expected a non-negative integer");
  return v.get<std::size_t>();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_relative() ? base / path : path;
}

AdamConfig apply_training(AdamConfig cfg, const json& obj, const std::string& where) {
  check_keys(obj,
             {"learning_rate", "weight_decay", "beta1", "beta2", "epsilon", "batch_size",
              "max_epochs", "patience"},
             where);
  for (const auto& [key, v] : obj.items()) {
    const std::string at = where + "." + key;
    if (key == "learning_rate") cfg.learning_rate = as_number(v, at);
    if (key == "weight_decay") cfg.weight_decay = as_number(v, at);
    if (key == "beta1") cfg.beta1 = as_number(v, at);
    if (key == "beta2") cfg.beta2 = as_number(v, at);
    if (key == "epsilon") cfg.epsilon = as_number(v, at);
    if (key == "batch_size") cfg.batch_size = as_count(v, at);
    if (key == "max_epochs") cfg.max_epochs = as_count(v, at);
    if (key == "patience") cfg.patience = as_count(v, at);
  }
  try {
    cfg.validate();
  } catch (const Error& e) {
    bad(where, e.what());
  }
  return cfg;
}

TransformSpec parse_transform(const json& obj, const std::string& where) {
  check_keys(obj, {"name", "seed", "min", "max", "neutral", "fv_target"}, where);
  TransformSpec t = TransformSpec::defaults(parse_transform_kind(as_string(need(obj, "name", where), where + ".name")));
  t.seed = as_seed(need(obj, "seed", where), where + ".seed");
  if (obj.contains("min")) t.min = as_number(obj["min"], where + ".min");
  if (obj.contains("max")) t.max = as_number(obj["max"], where + ".max");
  if (obj.contains("neutral")) t.neutral = as_number(obj["neutral"], where + ".neutral");
  if (obj.contains("fv_target")) t.fv_target = as_string(obj["fv_target"], where + ".fv_target");
  try {
    t.validate();
  } catch (const Error& e) {
    bad(where, e.what());
  }
  return t;
}

DatasetConfig parse_dataset(const json& obj, const std::filesystem::path& base,
                            const std::string& where) {
  check_keys(obj, {"name", "manifest", "modality", "extractor"}, where);
  DatasetConfig d;
  d.name = as_string(need(obj, "name", where), where + ".name");
  d.manifest = resolve(base, as_string(need(obj, "manifest", where), where + ".manifest"));
  d.modality = parse_modality(as_string(need(obj, "modality", where), where + ".modality"));
  const json& ex = need(obj, "extractor", where);
  const std::string ew = where + ".extractor";
  check_keys(ex, {"kind", "seed", "dim", "clean_store"}, ew);
  const std::string kind = as_string(need(ex, "kind", ew), ew + ".kind");
  if (kind == "toy") {
    d.extractor.kind = ExtractorKind::kToy;
    d.extractor.seed = as_seed(need(ex, "seed", ew), ew + ".seed");
    if (ex.contains("dim")) d.extractor.dim = as_count(ex["dim"], ew + ".dim");
    if (d.extractor.dim < 2) bad(ew, "dim must be >= 2");
  } else if (kind == "external") {
    d.extractor.kind = ExtractorKind::kExternal;
    d.extractor.clean_store =
        resolve(base, as_string(need(ex, "clean_store", ew), ew + ".clean_store"));
  } else {
    bad(ew, "unknown extractor kind '" + kind + "' (known: toy, external)");
  }
  return d;
}

bool safe_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' && c != '.') return false;
  }
  return s != "." && s != "..";
}

JobConfig parse_job(const json& obj, const RunConfig& run, const AdamConfig& training,
                    const std::filesystem::path& base, const std::string& where) {
  check_keys(obj,
             {"name", "dataset", "axis", "fv", "transform", "probe", "hidden_dims", "seed",
              "training", "grid_points", "transformed_store", "param_log"},
             where);
  JobConfig job;
  job.name = as_string(need(obj, "name", where), where + ".name");
  if (!safe_name(job.name)) bad(where, "job name '" + job.name + "' must match [A-Za-z0-9._-]+");
  const std::string at = "job '" + job.name + "'";
  job.dataset = as_string(need(obj, "dataset", at), at + ".dataset");
  job.axis = parse_axis(as_string(need(obj, "axis", at), at + ".axis"));
  const DatasetConfig& ds = run.dataset(job.dataset);
  const bool toy = ds.extractor.kind == ExtractorKind::kToy;

  if (obj.contains("fv")) job.fv = as_string(obj["fv"], at + ".fv");
  if (obj.contains("transform")) job.transform = parse_transform(obj["transform"], at + ".transform");
  if (obj.contains("grid_points")) job.grid_points = as_count(obj["grid_points"], at + ".grid_points");
  if (obj.contains("transformed_store")) {
    job.transformed_store = resolve(base, as_string(obj["transformed_store"], at + ".transformed_store"));
  }
  if (obj.contains("param_log")) job.param_log = resolve(base, as_string(obj["param_log"], at + ".param_log"));

  const bool needs_probe = job.axis != Axis::kInvariance;
  job.probe.kind = ProbeKind::kNone;
  if (needs_probe) {
    job.probe.kind = parse_probe_kind(obj.contains("probe") ? as_string(obj["probe"], at + ".probe") : "mlp");
    if (job.probe.kind == ProbeKind::kNone) bad(at, "this axis needs probe 'slp' or 'mlp'");
    job.probe.seed = as_seed(need(obj, "seed", at), at + ".seed");
    job.probe.adam = obj.contains("training") ? apply_training(training, obj["training"], at + ".training")
                                              : training;
    if (obj.contains("hidden_dims")) {
      const json& h = obj["hidden_dims"];
      if (!h.is_array()) bad(at, "hidden_dims must be an array of positive integers");
      std::vector<std::size_t> dims;
      for (const auto& v : h) {
        const std::size_t w = as_count(v, at + ".hidden_dims");
        if (w == 0) bad(at, "hidden_dims entries must be positive");
        dims.push_back(w);
      }
      job.probe.hidden_dims = dims;
    }
  } else {
    for (const char* key : {"probe", "seed", "training", "hidden_dims"}) {
      if (obj.contains(key)) bad(at, std::string("'") + key + "' does not apply to invariance");
    }
  }

  const bool uses_fv = job.axis == Axis::kInformativeness || job.axis == Axis::kDisentanglement;
  const bool uses_transform = job.axis != Axis::kInformativeness;
  if (uses_fv && job.fv.empty()) bad(at, "axis " + std::string(axis_name(job.axis)) + " needs 'fv'");
  if (!uses_fv && !job.fv.empty()) bad(at, "'fv' does not apply to " + std::string(axis_name(job.axis)));
  if (!uses_transform && job.transform) bad(at, "'transform' does not apply to informativeness");

  const bool external_pairs = !toy && (job.axis == Axis::kPEquivariance || job.axis == Axis::kREquivariance);
  if (external_pairs) {
    if (job.transformed_store.empty() || job.param_log.empty()) {
      bad(at, "external datasets need 'transformed_store' and 'param_log' for equivariance");
    }
    if (job.transform) bad(at, "external equivariance jobs take the transform from 'param_log'");
  } else {
    if (!job.transformed_store.empty() || !job.param_log.empty()) {
      bad(at, "'transformed_store'/'param_log' only apply to external equivariance jobs");
    }
    if (uses_transform && !job.transform) bad(at, "axis " + std::string(axis_name(job.axis)) + " needs 'transform'");
  }
  if (!toy && (job.axis == Axis::kInvariance || job.axis == Axis::kDisentanglement)) {
    bad(at, std::string(axis_name(job.axis)) +
                " re-embeds transformed media and needs a toy extractor");
  }
  if (job.transform && job.transform->info().modality != ds.modality) {
    bad(at, std::string(job.transform->info().name) + " does not apply to " +
                std::string(modality_name(ds.modality)) + " dataset '" + ds.name + "'");
  }
  if (job.axis == Axis::kDisentanglement && job.transform->fv_target == job.fv) {
    bad(at, "transform " + std::string(job.transform->info().name) + " targets the predicted FV '" +
                job.fv + "'; use an equivariance axis instead");
  }
  if (job.axis == Axis::kInvariance && job.grid_points == 0) bad(at, "grid_points must be positive");

  job.resolved = {{"name", job.name},
                  {"dataset", job.dataset},
                  {"axis", axis_name(job.axis)},
                  {"fv", job.fv},
                  {"probe", job.probe.to_json()},
                  {"grid_points", job.grid_points}};
  if (job.transform) {
    const auto& t = *job.transform;
    job.resolved["transform"] = {{"name", t.info().name}, {"fv_target", t.fv_target},
                                 {"min", t.min},          {"max", t.max},
                                 {"neutral", t.neutral},  {"seed", t.seed}};
  }
  if (external_pairs) {
    job.resolved["transformed_store"] = job.transformed_store.generic_string();
    job.resolved["param_log"] = job.param_log.generic_string();
  }
  return job;
}

json dataset_json(const DatasetConfig& d) {
  // The manifest is covered by its digest, so its location stays out.
  json j = {{"name", d.name}, {"modality", modality_name(d.modality)}};
  if (d.extractor.kind == ExtractorKind::kToy) {
    j["extractor"] = {{"kind", "toy"}, {"seed", d.extractor.seed}, {"dim", d.extractor.dim}};
  } else {
    j["extractor"] = {{"kind", "external"}, {"clean_store", d.extractor.clean_store.generic_string()}};
  }
  return j;
}

}  // namespace

std::string_view engine_version() { return SYNEVAL_VERSION; }

const DatasetConfig& RunConfig::dataset(std::string_view name) const {
  for (const auto& d : datasets) {
    if (d.name == name) return d;
  }
  fail(ErrorCode::kConfig, "unknown dataset '" + std::string(name) + "'");
}

RunConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
  check_keys(doc, {"schema", "output_dir", "training", "datasets", "jobs"}, "config");
  if (doc.contains("schema") && doc["schema"] != kConfigSchema) {
    fail(ErrorCode::kVersion, "config schema must be '" + std::string(kConfigSchema) + "'");
  }
  RunConfig run;
  run.raw = doc;
  run.output_dir = resolve(base_dir, as_string(need(doc, "output_dir", "config"), "config.output_dir"));
  const AdamConfig training = doc.contains("training")
                                  ? apply_training(AdamConfig{}, doc["training"], "config.training")
                                  : AdamConfig{};

  const json& datasets = need(doc, "datasets", "config");
  if (!datasets.is_array() || datasets.empty()) bad("config.datasets", "expected a non-empty array");
  std::unordered_set<std::string> names;
  for (std::size_t i = 0; i < datasets.size(); ++i) {
    run.datasets.push_back(parse_dataset(datasets[i], base_dir, "datasets[" + std::to_string(i) + "]"));
    if (!names.insert(run.datasets.back().name).second) {
      bad("config.datasets", "duplicate dataset name '" + run.datasets.back().name + "'");
    }
  }

  const json& jobs = need(doc, "jobs", "config");
  if (!jobs.is_array() || jobs.empty()) bad("config.jobs", "expected a non-empty array");
  names.clear();
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    run.jobs.push_back(parse_job(jobs[i], run, training, base_dir, "jobs[" + std::to_string(i) + "]"));
    if (!names.insert(run.jobs.back().name).second) {
      bad("config.jobs", "duplicate job name '" + run.jobs.back().name + "'");
    }
  }
  return run;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open config '" + path.string() + "'");
  const json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) fail(ErrorCode::kConfig, "config '" + path.string() + "' is not valid JSON");
  return parse_config(doc, path.parent_path());
}

std::string config_hash(const RunConfig& config) {
  json canonical = config.raw;
  canonical.erase("output_dir");
  return sha256_hex(std::string(engine_version()) + "\n" + canonical.dump());
}

std::string job_hash(const RunConfig& config, const JobConfig& job,
                     const std::string& manifest_digest) {
  const json doc = {{"engine", engine_version()},
                    {"job", job.resolved},
                    {"dataset", dataset_json(config.dataset(job.dataset))},
                    {"manifest_sha256", manifest_digest}};
  return sha256_hex(doc.dump());
}

}  // namespace syneval
