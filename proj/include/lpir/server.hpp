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

#include <atomic>
#include <chrono>
#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "lpir/pir_raid.hpp"
#include "lpir/random.hpp"
#include "lpir/spectrumdb.hpp"
#include "lpir/wire.hpp"

namespace lpir::net {

enum class ByzantineMode { kNone, kFlipBytes, kRandomGarbage };

const char* byzantine_mode_name(ByzantineMode m);
// "none", "flip-bytes", "random-garbage". Error(kParameter).
ByzantineMode parse_byzantine_mode(const std::string& name);

// Faults apply to QUERY handling only; HELLO is always answered. With a fixed
// seed the sequence of drops and corruptions is reproducible.
struct FaultProfile {
  double drop_probability = 0;  // close the connection instead of answering
  std::chrono::milliseconds latency{0};
  ByzantineMode byzantine = ByzantineMode::kNone;
  std::uint64_t seed = 0;
};

struct ServerOutcome {
  // Encoded frame (with length prefix), or nullopt to close the connection.
  std::optional<std::vector<std::uint8_t>> reply;
  std::chrono::milliseconds delay{0};
};

// Transport-independent request handling for one store.
class ServerCore {
 public:
  // server_id 0 takes the id from the store: first chunk for chunk stores,
  // alpha for share stores. Plain stores need an explicit id.
  ServerCore(StoredDatabase store, std::uint16_t server_id, FaultProfile fault = {},
             std::size_t strassen_cutoff = kDefaultStrassenCutoff);

  std::uint16_t server_id() const { return id_; }
  const StoredDatabase& store() const { return store_; }
  wire::HelloAck hello_ack() const;

  // `payload` is a frame without its length prefix. Thread-safe.
  ServerOutcome handle(std::span<const std::uint8_t> payload);

 private:
  std::vector<std::uint8_t> answer(const wire::Frame& frame, std::uint64_t& compute_ns);
  bool draw_drop();
  void corrupt(std::span<std::uint8_t> payload);

  StoredDatabase store_;
  std::uint16_t id_;
  FaultProfile fault_;
  std::size_t cutoff_;
  std::optional<ChunkStore> chunks_;
  std::mutex fault_mu_;
  SeededRandom fault_rng_;
};

// Thread-per-connection TCP daemon around a ServerCore.
class TcpServer {
 public:
  // Port 0 binds an ephemeral port. Error(kNetwork) if binding fails.
  TcpServer(ServerCore& core, const std::string& host, std::uint16_t port,
            std::size_t max_frame = wire::kDefaultMaxFrame);
  ~TcpServer();
  TcpServer(const TcpServer&) = delete;
  TcpServer& operator=(const TcpServer&) = delete;

  std::uint16_t port() const { return port_; }
  void stop();

 private:
  struct Connection {
    int fd = -1;
    std::thread thread;
    std::atomic<bool> done{false};
  };

  void accept_loop();
  void serve_connection(Connection& conn);
  void reap(bool all);

  ServerCore& core_;
  std::size_t max_frame_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
  std::thread acceptor_;
  std::mutex conns_mu_;
  std::list<std::unique_ptr<Connection>> conns_;
};

}  // namespace lpir::net
