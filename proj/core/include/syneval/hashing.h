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

#ifndef SYNEVAL_HASHING_H_
#define SYNEVAL_HASHING_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace syneval {

// Standard CRC-32 (IEEE 802.3 polynomial), as used by zlib and PNG.
std::uint32_t crc32(std::span<const std::uint8_t> bytes);

// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view bytes);

}  // namespace syneval

#endif  // SYNEVAL_HASHING_H_
