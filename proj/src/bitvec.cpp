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

#include "lpir/bitvec.hpp"

#include <bit>

#include "lpir/errors.hpp"
#include "lpir/random.hpp"

namespace lpir {

BitVector::BitVector(std::size_t bits) : bits_(bits), lanes_((bits + 63) / 64) {}

BitVector BitVector::random(std::size_t bits, RandomSource& rng) {
  std::vector<std::uint8_t> bytes(packed_bytes(bits));
  rng.fill(bytes);
  return from_bytes(bytes, bits);
}

BitVector BitVector::from_bytes(std::span<const std::uint8_t> bytes,
                                std::size_t bits) {
  if (bytes.size() != packed_bytes(bits)) {
    fail(ErrorCode::kProtocol, "packed bit vector has wrong length");
  }
  BitVector v(bits);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    v.lanes_[i / 8] |= std::uint64_t{bytes[i]} << (8 * (i % 8));
  }
  v.clear_tail();
  return v;
}

void BitVector::set(std::size_t j, bool value) {
  const std::uint64_t mask = std::uint64_t{1} << (j % 64);
  if (value) {
    lanes_[j / 64] |= mask;
  } else {
    lanes_[j / 64] &= ~mask;
  }
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.bits_ != bits_) fail(ErrorCode::kProtocol, "bit vector length mismatch");
  for (std::size_t i = 0; i < lanes_.size(); ++i) lanes_[i] ^= other.lanes_[i];
  return *this;
}

std::size_t BitVector::popcount() const {
  std::size_t n = 0;
  for (auto lane : lanes_) n += static_cast<std::size_t>(std::popcount(lane));
  return n;
}

std::vector<std::uint8_t> BitVector::to_bytes() const {
  std::vector<std::uint8_t> out(packed_bytes(bits_));
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(lanes_[i / 8] >> (8 * (i % 8)));
  }
  return out;
}

std::string BitVector::to_string() const {
  std::string s(bits_, '0');
  for (std::size_t j = 0; j < bits_; ++j) {
    if (get(j)) s[j] = '1';
  }
  return s;
}

BitVector BitVector::from_string(const std::string& bits) {
  BitVector v(bits.size());
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] == '1') {
      v.set(j, true);
    } else if (bits[j] != '0') {
      fail(ErrorCode::kParameter, "bit string must contain only 0 and 1");
    }
  }
  return v;
}

void BitVector::clear_tail() {
  if (bits_ % 64 != 0 && !lanes_.empty()) {
    lanes_.back() &= (std::uint64_t{1} << (bits_ % 64)) - 1;
  }
}

}  // namespace lpir
