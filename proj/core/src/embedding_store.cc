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

#include "syneval/embedding_store.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <nlohmann/json.hpp>
#include <unordered_set>

#include "syneval/error.h"
#include "syneval/hashing.h"

namespace syneval {
namespace {

constexpr char kMagic[4] = {'S', 'Y', 'N', 'E'};
constexpr std::size_t kHeaderBytes = 24;
constexpr std::uint8_t kDtypeFloat32 = 0;

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<std::uint8_t>(static_cast<std::uint64_t>(value) >> (8 * i)));
  }
}

template <typename T>
T get_le(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return static_cast<T>(v);
}

[[noreturn]] void bad(std::string_view source, const std::string& what) {
  fail(ErrorCode::kFormat, "embedding container '" + std::string(source) + "': " + what);
}

std::vector<std::uint8_t> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

void EmbeddingStore::validate() const {
  if (matrix.rows() != ids.size()) {
    fail(ErrorCode::kFormat, "store has " + std::to_string(ids.size()) + " ids but " +
                                 std::to_string(matrix.rows()) + " rows");
  }
  if (matrix.cols() == 0) fail(ErrorCode::kFormat, "store dimension must be positive");
  std::unordered_set<std::string_view> seen;
  for (const auto& id : ids) {
    if (id.size() > 0xFFFF) fail(ErrorCode::kFormat, "id longer than 65535 bytes");
    if (!seen.insert(id).second) fail(ErrorCode::kFormat, "duplicate id '" + id + "' in store");
  }
}

std::unordered_map<std::string, std::size_t> EmbeddingStore::index() const {
  std::unordered_map<std::string, std::size_t> out;
  out.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) out.emplace(ids[i], i);
  return out;
}

EmbeddingStore EmbeddingStore::select(std::span<const std::string> order) const {
  const auto where = index();
  std::vector<std::size_t> rows;
  std::vector<std::string> missing;
  std::size_t missing_count = 0;
  rows.reserve(order.size());
  for (const auto& id : order) {
    auto it = where.find(id);
    if (it == where.end()) {
      if (missing.size() < 10) missing.push_back(id);
      ++missing_count;
    } else {
      rows.push_back(it->second);
    }
  }
  if (missing_count > 0) {
    std::string msg = std::to_string(missing_count) + " id(s) missing from embedding store:";
    for (const auto& id : missing) msg += " " + id;
    if (missing_count > missing.size()) msg += " ...";
    fail(ErrorCode::kAlignment, msg);
  }
  return {std::vector<std::string>(order.begin(), order.end()), matrix.gather_rows(rows),
          extractor_id, created_by};
}

std::vector<std::uint8_t> encode_embeddings(const EmbeddingStore& store) {
  store.validate();
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderBytes + store.matrix.size() * 4 + store.count() * 16 + 4);
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  put_le<std::uint32_t>(out, kEmbeddingFormatVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(store.dim()));
  put_le<std::uint64_t>(out, store.count());
  out.push_back(kDtypeFloat32);
  out.insert(out.end(), 3, 0);
  for (float v : store.matrix.values()) put_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(v));
  for (const auto& id : store.ids) {
    put_le<std::uint16_t>(out, static_cast<std::uint16_t>(id.size()));
    out.insert(out.end(), id.begin(), id.end());
  }
  put_le<std::uint32_t>(out, crc32(out));
  return out;
}

EmbeddingStore decode_embeddings(std::span<const std::uint8_t> bytes, std::string_view source) {
  if (bytes.size() < kHeaderBytes + 4) bad(source, "truncated header");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) bad(source, "bad magic");
  const auto version = get_le<std::uint32_t>(bytes.data() + 4);
  if (version != kEmbeddingFormatVersion) {
    bad(source, "unsupported version " + std::to_string(version));
  }
  const auto stored_crc = get_le<std::uint32_t>(bytes.data() + bytes.size() - 4);
  if (crc32(bytes.first(bytes.size() - 4)) != stored_crc) {
    bad(source, "checksum mismatch (truncated or corrupted)");
  }
  const auto dim = get_le<std::uint32_t>(bytes.data() + 8);
  const auto count = get_le<std::uint64_t>(bytes.data() + 12);
  if (bytes[20] != kDtypeFloat32) bad(source, "unknown dtype code " + std::to_string(bytes[20]));
  if (bytes[21] != 0 || bytes[22] != 0 || bytes[23] != 0) bad(source, "reserved bytes not zero");
  if (dim == 0) bad(source, "dimension is zero");

  const std::size_t end = bytes.size() - 4;
  const std::size_t available = end - kHeaderBytes;
  if (count > available / 4 / dim) bad(source, "count x dim exceeds payload");
  const std::size_t n_values = static_cast<std::size_t>(count) * dim;

  std::vector<float> values(n_values);
  const std::uint8_t* p = bytes.data() + kHeaderBytes;
  for (std::size_t i = 0; i < n_values; ++i, p += 4) {
    values[i] = std::bit_cast<float>(get_le<std::uint32_t>(p));
    if (!std::isfinite(values[i])) bad(source, "non-finite value at index " + std::to_string(i));
  }
  std::size_t pos = kHeaderBytes + n_values * 4;
  std::vector<std::string> ids;
  ids.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    if (pos + 2 > end) bad(source, "id table truncated");
    const auto len = get_le<std::uint16_t>(bytes.data() + pos);
    pos += 2;
    if (pos + len > end) bad(source, "id table truncated");
    ids.emplace_back(reinterpret_cast<const char*>(bytes.data() + pos), len);
    pos += len;
  }
  if (pos != end) bad(source, std::to_string(end - pos) + " trailing bytes after id table");

  EmbeddingStore store{std::move(ids), Matrix(count, dim, std::move(values)), {}, {}};
  try {
    store.validate();
  } catch (const Error& e) {
    bad(source, e.what());
  }
  return store;
}

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
  return std::filesystem::path(path.string() + ".meta.json");
}

void write_embeddings(const EmbeddingStore& store, const std::filesystem::path& path) {
  const auto bytes = encode_embeddings(store);
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::kIo, "cannot write '" + path.string() + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) fail(ErrorCode::kIo, "short write to '" + path.string() + "'");
  }
  const nlohmann::json meta = {{"extractor_id", store.extractor_id},
                               {"created_by", store.created_by}};
  std::ofstream side(sidecar_path(path), std::ios::trunc);
  if (!side) fail(ErrorCode::kIo, "cannot write '" + sidecar_path(path).string() + "'");
  side << meta.dump(2) << "\n";
}

EmbeddingStore read_embeddings(const std::filesystem::path& path) {
  const auto bytes = slurp(path);
  EmbeddingStore store = decode_embeddings(bytes, path.string());
  const auto side = sidecar_path(path);
  if (std::filesystem::exists(side)) {
    std::ifstream in(side);
    const auto meta = nlohmann::json::parse(in, nullptr, false);
    if (meta.is_discarded() || !meta.is_object()) {
      fail(ErrorCode::kFormat, "malformed sidecar '" + side.string() + "'");
    }
    store.extractor_id = meta.value("extractor_id", "");
    store.created_by = meta.value("created_by", "");
  }
  return store;
}

}  // namespace syneval
