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
#include <condition_variable>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "lpir/pir_goldberg.hpp"
#include "lpir/spectrumdb.hpp"
#include "lpir/wire.hpp"

namespace lpir {
class RandomSource;
}

namespace lpir::net {

class ServerCore;

using Clock = std::chrono::steady_clock;

// Cooperative cancellation shared by the workers of one fetch.
class CancelToken {
 public:
  void cancel();
  bool cancelled() const;
  // Sleeps up to `d`; returns false if cancelled first.
  bool sleep_for(Clock::duration d) const;

 private:
  mutable std::mutex mu_;
  mutable std::condition_variable cv_;
  bool cancelled_ = false;
};

// One request/response conversation with a server.
class Session {
 public:
  virtual ~Session() = default;
  // Sends a full frame (with length prefix) and returns the reply frame without
  // its prefix. Error(kNetwork) on close, timeout or cancellation.
  virtual std::vector<std::uint8_t> exchange(std::span<const std::uint8_t> frame,
                                             Clock::time_point deadline,
                                             const CancelToken& cancel) = 0;
};

class Endpoint {
 public:
  virtual ~Endpoint() = default;
  virtual std::unique_ptr<Session> connect(Clock::time_point deadline,
                                           const CancelToken& cancel) = 0;
  virtual std::string describe() const = 0;
};

// In-process server, no sockets. Fault latency is simulated by sleeping.
class LoopbackEndpoint final : public Endpoint {
 public:
  explicit LoopbackEndpoint(ServerCore& core) : core_(core) {}
  std::unique_ptr<Session> connect(Clock::time_point deadline,
                                   const CancelToken& cancel) override;
  std::string describe() const override;

 private:
  ServerCore& core_;
};

class TcpEndpoint final : public Endpoint {
 public:
  TcpEndpoint(std::string host, std::uint16_t port,
              std::size_t max_frame = wire::kDefaultMaxFrame);
  // "host:port".
  static std::unique_ptr<TcpEndpoint> parse(const std::string& address);
  std::unique_ptr<Session> connect(Clock::time_point deadline,
                                   const CancelToken& cancel) override;
  std::string describe() const override;

 private:
  std::string host_;
  std::uint16_t port_;
  std::size_t max_frame_;
};

struct FetchParams {
  wire::Protocol protocol = wire::Protocol::kChor;
  int t = 1;        // GOLD/BATCH privacy threshold
  int tau = 0;      // share stores: degree of the database sharing
  std::size_t k = 0;   // responses to wait for; 0 means every server
  std::size_t pi = 0;  // RAID redundancy; 0 accepts what the servers advertise
  std::chrono::milliseconds timeout{30000};
  // Keep per-server payload bytes in the transcript (parity checks).
  bool capture_payloads = false;
};

struct ServerTiming {
  std::uint16_t server_id = 0;
  std::string endpoint;
  bool responded = false;
  std::uint64_t compute_ns = 0;  // reported by the server (thread CPU time)
  std::uint64_t round_trip_ns = 0;
  std::string failure;
  // Only with capture_payloads.
  std::vector<std::uint8_t> query_payload;
  std::vector<std::uint8_t> response_payload;
};

// Payload counts cover the PIR vectors, seeds and answers exactly; everything
// else on the wire (length prefixes, frame headers, dimensions, ids, timing,
// handshakes) is framing.
struct Transcript {
  std::uint64_t payload_bits_up = 0;
  std::uint64_t payload_bits_down = 0;
  std::uint64_t framing_bytes_up = 0;
  std::uint64_t framing_bytes_down = 0;
  Clock::duration t_query_build{};
  Clock::duration t_recover{};
  Clock::duration t_total{};
  std::vector<ServerTiming> servers;
};

struct FetchedRecord {
  std::uint64_t beta = 0;
  RecoveryReport report;
  bool checksum_ok = false;
};

struct FetchResult {
  std::vector<FetchedRecord> records;
  Transcript transcript;
};

// Privately fetches rows. More than one row needs the BATCH protocol.
//
// Order of events: parameters are validated, every server is greeted and
// their stores cross-checked (group digest, protocol, dimensions), queries
// are built and sent concurrently, and recovery starts once the quorum is in
// (every server for CHOR/RAID, k for GOLD/BATCH) or no server is pending.
// Errors: kParameter, kProtocol (inconsistent servers), kRobustnessFailure
// (GOLD/BATCH quorum missed) or kIncompleteResponse (a CHOR/RAID server
// silent); both messages list the silent servers. Then recovery errors.
FetchResult private_fetch_rows(std::span<const std::uint64_t> betas,
                               std::span<Endpoint* const> servers, const FetchParams& params,
                               RandomSource& rng);

// Same, mapping keys to rows with the grid the servers advertise.
FetchResult private_fetch(std::span<const SpectrumKey> keys,
                          std::span<Endpoint* const> servers, const FetchParams& params,
                          RandomSource& rng);

}  // namespace lpir::net
