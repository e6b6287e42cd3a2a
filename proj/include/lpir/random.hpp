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

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace lpir {

// Source of the randomness consumed by query builders and share generators.
// Protocol code only ever asks for bytes, so a transcript is a pure function
// of the byte stream a source yields.
//
// Contract: production callers must use SystemRandom (or seed SeededRandom
// from a cryptographically secure source). SeededRandom exists so that every
// transcript can be replayed in tests and benchmarks.
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  virtual void fill(std::span<std::uint8_t> out) = 0;

  std::uint8_t next_byte() {
    std::uint8_t b = 0;
    fill({&b, 1});
    return b;
  }
};

// Deterministic stream from a 64-bit seed. The byte sequence does not depend on
// how callers partition their fill() requests.
class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(std::uint64_t seed) : engine_(seed) {}

  void fill(std::span<std::uint8_t> out) override;

 private:
  std::mt19937_64 engine_;
  std::uint64_t pending_ = 0;
  int pending_bytes_ = 0;
};

// Operating-system CSPRNG.
class SystemRandom final : public RandomSource {
 public:
  void fill(std::span<std::uint8_t> out) override;
};

}  // namespace lpir
