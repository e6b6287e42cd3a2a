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

#include "lpir/random.hpp"

#include <openssl/rand.h>

#include "lpir/errors.hpp"

namespace lpir {

void SeededRandom::fill(std::span<std::uint8_t> out) {
  for (auto& b : out) {
    if (pending_bytes_ == 0) {
      pending_ = engine_();
      pending_bytes_ = 8;
    }
    b = static_cast<std::uint8_t>(pending_ & 0xFF);
    pending_ >>= 8;
    --pending_bytes_;
  }
}

void SystemRandom::fill(std::span<std::uint8_t> out) {
  if (out.empty()) return;
  if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
    fail(ErrorCode::kInternal, "system random source failed");
  }
}

}  // namespace lpir
