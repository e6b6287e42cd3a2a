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

#include "socket_io.hpp"

#include <poll.h>
#include <sys/socket.h>
#include <sys/types.h>

#include <algorithm>
#include <cerrno>

namespace lpir::net::detail {
namespace {

constexpr int kSliceMs = 20;

// Waits until fd is ready for `events`; kOk when ready.
IoStatus wait_ready(int fd, short events, Clock::time_point deadline,
                    const std::function<bool()>& cancelled) {
  for (;;) {
    if (cancelled && cancelled()) return IoStatus::kCancelled;
    const auto now = Clock::now();
    if (now >= deadline) return IoStatus::kTimeout;
    const auto left =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();
    pollfd p{fd, events, 0};
    const int rc = ::poll(&p, 1, static_cast<int>(std::min<long long>(left + 1, kSliceMs)));
    if (rc < 0) {
      if (errno == EINTR) continue;
      return IoStatus::kClosed;
    }
    if (rc > 0) return IoStatus::kOk;
  }
}

}  // namespace

IoStatus read_exact(int fd, std::uint8_t* buf, std::size_t n, Clock::time_point deadline,
                    const std::function<bool()>& cancelled) {
  std::size_t got = 0;
  while (got < n) {
    const auto st = wait_ready(fd, POLLIN, deadline, cancelled);
    if (st != IoStatus::kOk) return st;
    const ssize_t rc = ::recv(fd, buf + got, n - got, 0);
    if (rc == 0) return IoStatus::kClosed;
    if (rc < 0) {
      if (errno == EINTR || errno == EAGAIN || errno == EWOULDBLOCK) continue;
      return IoStatus::kClosed;
    }
    got += static_cast<std::size_t>(rc);
  }
  return IoStatus::kOk;
}

IoStatus write_all(int fd, const std::uint8_t* buf, std::size_t n, Clock::time_point deadline,
                   const std::function<bool()>& cancelled) {
  std::size_t sent = 0;
  while (sent < n) {
    const auto st = wait_ready(fd, POLLOUT, deadline, cancelled);
    if (st != IoStatus::kOk) return st;
    const ssize_t rc = ::send(fd, buf + sent, n - sent, MSG_NOSIGNAL);
    if (rc < 0) {
      if (errno == EINTR || errno == EAGAIN || errno == EWOULDBLOCK) continue;
      return IoStatus::kClosed;
    }
    sent += static_cast<std::size_t>(rc);
  }
  return IoStatus::kOk;
}

const char* io_status_name(IoStatus s) {
  switch (s) {
    case IoStatus::kOk: return "ok";
    case IoStatus::kClosed: return "connection closed";
    case IoStatus::kTimeout: return "timed out";
    case IoStatus::kCancelled: return "cancelled";
  }
  return "?";
}

}  // namespace lpir::net::detail
