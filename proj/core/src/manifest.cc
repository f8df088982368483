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

#include "syneval/manifest.h"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>
#include <unordered_set>

#include "syneval/error.h"

namespace syneval {
namespace {

using nlohmann::json;

const std::set<std::string> kKnownFields = {"id",          "media_path", "split",
                                            "fv_values",   "duration_s", "transcript"};

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  fail(ErrorCode::kParse, "manifest line " + std::to_string(line) + ": " + what);
}

SampleRecord parse_record(const json& obj, std::size_t line, const std::filesystem::path& base) {
  if (!obj.is_object()) parse_error(line, "expected a JSON object");
  for (const auto& [key, _] : obj.items()) {
    if (!kKnownFields.contains(key)) parse_error(line, "unknown field '" + key + "'");
  }
  auto need_string = [&](const char* key) -> std::string {
    auto it = obj.find(key);
    if (it == obj.end()) parse_error(line, std::string("missing field '") + key + "'");
    if (!it->is_string()) parse_error(line, std::string("field '") + key + "' must be a string");
    return it->get<std::string>();
  };

  SampleRecord rec;
  rec.id = need_string("id");
  if (rec.id.empty()) parse_error(line, "id must be non-empty");
  std::filesystem::path media = need_string("media_path");
  rec.media_path = media.is_relative() && !base.empty() ? base / media : media;
  try {
    rec.split = parse_split(need_string("split"));
  } catch (const Error& e) {
    parse_error(line, e.what());
  }

  if (auto it = obj.find("fv_values"); it != obj.end()) {
    if (!it->is_object()) parse_error(line, "fv_values must be an object");
    for (const auto& [name, value] : it->items()) {
      if (!value.is_number() || !std::isfinite(value.get<double>())) {
        parse_error(line, "fv_values." + name + " must be a finite number");
      }
      rec.fv_values[name] = value.get<double>();
    }
  }
  if (auto it = obj.find("duration_s"); it != obj.end() && !it->is_null()) {
    if (!it->is_number() || !(it->get<double>() > 0.0)) {
      parse_error(line, "duration_s must be a positive number");
    }
    rec.duration_s = it->get<double>();
  }
  if (auto it = obj.find("transcript"); it != obj.end() && !it->is_null()) {
    if (!it->is_string()) parse_error(line, "transcript must be a string");
    rec.transcript = it->get<std::string>();
  }
  return rec;
}

}  // namespace

std::string_view split_name(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kVal: return "val";
    case Split::kTest: return "test";
  }
  return "train";
}

Split parse_split(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "val") return Split::kVal;
  if (name == "test") return Split::kTest;
  fail(ErrorCode::kParse,
       "unknown split '" + std::string(name) + "' (allowed: train, val, test)");
}

std::vector<SampleRecord> parse_manifest(std::string_view text,
                                         const std::filesystem::path& base_dir) {
  std::vector<SampleRecord> records;
  std::unordered_set<std::string> ids;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    const json obj = json::parse(line, nullptr, false);
    if (obj.is_discarded()) parse_error(line_no, "invalid JSON");
    SampleRecord rec = parse_record(obj, line_no, base_dir);
    if (!ids.insert(rec.id).second) parse_error(line_no, "duplicate id '" + rec.id + "'");
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<SampleRecord> load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open manifest '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str(), path.parent_path());
}

std::string format_manifest(const std::vector<SampleRecord>& records) {
  std::string out;
  for (const auto& rec : records) {
    json obj = {{"id", rec.id},
                {"media_path", rec.media_path.generic_string()},
                {"split", split_name(rec.split)}};
    if (!rec.fv_values.empty()) obj["fv_values"] = rec.fv_values;
    if (rec.duration_s) obj["duration_s"] = *rec.duration_s;
    if (rec.transcript) obj["transcript"] = *rec.transcript;
    out += obj.dump();
    out += '\n';
  }
  return out;
}

void write_manifest(const std::filesystem::path& path, const std::vector<SampleRecord>& records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot write manifest '" + path.string() + "'");
  out << format_manifest(records);
}

}  // namespace syneval
