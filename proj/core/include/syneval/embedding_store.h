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

#ifndef SYNEVAL_EMBEDDING_STORE_H_
#define SYNEVAL_EMBEDDING_STORE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "syneval/matrix.h"

namespace syneval {

inline constexpr std::uint32_t kEmbeddingFormatVersion = 1;

// Row i of `matrix` is the embedding of ids[i].
struct EmbeddingStore {
  std::vector<std::string> ids;
  Matrix matrix;
  std::string extractor_id;
  std::string created_by;

  std::size_t count() const { return ids.size(); }
  std::size_t dim() const { return matrix.cols(); }

  // Throws kFormat on row/id count mismatch, empty dim, duplicate ids or ids
  // longer than 65535 bytes.
  void validate() const;

  // id -> row index.
  std::unordered_map<std::string, std::size_t> index() const;

  // Rows reordered to follow `order`; throws kAlignment listing up to ten
  // ids that are absent from the store.
  EmbeddingStore select(std::span<const std::string> order) const;
};

// Serialized container: 24-byte header ("SYNE", u32 version, u32 dim,
// u64 count, u8 dtype, 3 reserved bytes), row-major little-endian float32
// payload, u16-length-prefixed UTF-8 ids, and a trailing CRC-32 of
// everything before it.
std::vector<std::uint8_t> encode_embeddings(const EmbeddingStore& store);
EmbeddingStore decode_embeddings(std::span<const std::uint8_t> bytes,
                                 std::string_view source = "<memory>");

// The container has no room for extractor_id and created_by, so they travel
// in an optional JSON sidecar next to it (see sidecar_path).
void write_embeddings(const EmbeddingStore& store, const std::filesystem::path& path);
EmbeddingStore read_embeddings(const std::filesystem::path& path);

std::filesystem::path sidecar_path(const std::filesystem::path& path);

}  // namespace syneval

#endif  // SYNEVAL_EMBEDDING_STORE_H_
