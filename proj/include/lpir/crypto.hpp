// Copyright 2026 The lpir Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lpir::crypto {

using Digest = std::array<std::uint8_t, 32>;

Digest sha256(std::span<const std::uint8_t> data);

class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  void update(std::span<const std::uint8_t> data);
  Digest finish();

 private:
  void* ctx_;
};

// AES-128 in counter mode; the 16-byte key is the seed, the 16-byte initial
// counter block is `nonce` (big-endian) followed by zeros.
std::vector<std::uint8_t> aes128_ctr_stream(
    std::span<const std::uint8_t, 16> key, std::uint32_t nonce,
    std::size_t bytes);

std::uint32_t crc32(std::span<const std::uint8_t> data);

std::string to_hex(std::span<const std::uint8_t> data);

}  // namespace lpir::crypto
