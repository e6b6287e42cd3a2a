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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lpir {

class RandomSource;

// Packed bit vector over GF(2). Bit j lives in lane j / 64 at position j % 64.
// The byte serialization is LSB-first: bit j is bit (j % 8) of byte j / 8.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t bits);

  static BitVector random(std::size_t bits, RandomSource& rng);
  static BitVector from_bytes(std::span<const std::uint8_t> bytes,
                              std::size_t bits);

  std::size_t size() const { return bits_; }
  bool get(std::size_t j) const { return (lanes_[j / 64] >> (j % 64)) & 1U; }
  void set(std::size_t j, bool value);
  void flip(std::size_t j) { lanes_[j / 64] ^= std::uint64_t{1} << (j % 64); }

  // Length mismatch is a programming error and is checked.
  BitVector& operator^=(const BitVector& other);
  friend BitVector operator^(BitVector a, const BitVector& b) {
    a ^= b;
    return a;
  }
  bool operator==(const BitVector& other) const = default;

  std::size_t popcount() const;
  std::span<const std::uint64_t> lanes() const { return lanes_; }

  std::vector<std::uint8_t> to_bytes() const;
  // "0010" style, bit 0 first.
  std::string to_string() const;
  static BitVector from_string(const std::string& bits);

 private:
  void clear_tail();

  std::size_t bits_ = 0;
  std::vector<std::uint64_t> lanes_;
};

inline std::size_t packed_bytes(std::size_t bits) { return (bits + 7) / 8; }

}  // namespace lpir
