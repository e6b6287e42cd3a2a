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

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>

// Blocking socket I/O in short poll slices so callers can observe deadlines
// and cancellation.
namespace lpir::net::detail {

enum class IoStatus { kOk, kClosed, kTimeout, kCancelled };

using Clock = std::chrono::steady_clock;

IoStatus read_exact(int fd, std::uint8_t* buf, std::size_t n, Clock::time_point deadline,
                    const std::function<bool()>& cancelled);
IoStatus write_all(int fd, const std::uint8_t* buf, std::size_t n, Clock::time_point deadline,
                   const std::function<bool()>& cancelled);

const char* io_status_name(IoStatus s);

}  // namespace lpir::net::detail
