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

#include "lpir/server.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>
#include <ctime>

#include "lpir/errors.hpp"
#include "lpir/pir_chor.hpp"
#include "lpir/pir_goldberg.hpp"
#include "lpir/stores.hpp"
#include "socket_io.hpp"

namespace lpir::net {
namespace {

using wire::ErrorReply;
using wire::Frame;
using wire::Kind;
using wire::Protocol;

std::uint64_t thread_cpu_ns() {
  timespec ts{};
  ::clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
  return static_cast<std::uint64_t>(ts.tv_sec) * 1'000'000'000ULL +
         static_cast<std::uint64_t>(ts.tv_nsec);
}

// Thrown inside handle() to turn into an ERROR reply.
struct Reject {
  ErrorReply code;
  std::string message;
};

std::vector<std::uint8_t> error_frame(ErrorReply code, const std::string& message,
                                      Protocol protocol) {
  return wire::encode_frame(
      {wire::kVersion, Kind::kError, protocol, wire::encode(wire::ErrorMsg{code, message})});
}

std::uint8_t supported_protocols(StoreKind kind) {
  switch (kind) {
    case StoreKind::kPlain:
      return wire::protocol_bit(Protocol::kChor) | wire::protocol_bit(Protocol::kGold) |
             wire::protocol_bit(Protocol::kBatch);
    case StoreKind::kShare:
      return wire::protocol_bit(Protocol::kGold) | wire::protocol_bit(Protocol::kBatch);
    case StoreKind::kChunk:
      return wire::protocol_bit(Protocol::kRaid);
  }
  return 0;
}

std::uint16_t resolve_id(const StoredDatabase& store, std::uint16_t id) {
  if (id != 0) return id;
  switch (store.meta.kind) {
    case StoreKind::kChunk: return store.meta.first_chunk;
    case StoreKind::kShare: return store.meta.alpha;
    case StoreKind::kPlain: break;
  }
  fail(ErrorCode::kParameter, "a plaintext store needs an explicit server id");
}

}  // namespace

const char* byzantine_mode_name(ByzantineMode m) {
  switch (m) {
    case ByzantineMode::kNone: return "none";
    case ByzantineMode::kFlipBytes: return "flip-bytes";
    case ByzantineMode::kRandomGarbage: return "random-garbage";
  }
  return "?";
}

ByzantineMode parse_byzantine_mode(const std::string& name) {
  for (auto m : {ByzantineMode::kNone, ByzantineMode::kFlipBytes, ByzantineMode::kRandomGarbage}) {
    if (name == byzantine_mode_name(m)) return m;
  }
  fail(ErrorCode::kParameter, "unknown byzantine mode '" + name + "'");
}

ServerCore::ServerCore(StoredDatabase store, std::uint16_t server_id, FaultProfile fault,
                       std::size_t strassen_cutoff)
    : store_(std::move(store)),
      id_(resolve_id(store_, server_id)),
      fault_(fault),
      cutoff_(strassen_cutoff),
      fault_rng_(fault.seed) {
  if (fault_.drop_probability < 0 || fault_.drop_probability > 1) {
    fail(ErrorCode::kParameter, "drop probability must lie in [0, 1]");
  }
  if (store_.meta.kind == StoreKind::kChunk) {
    chunks_ = chunk_store_of(store_);
    if (id_ != chunks_->server) {
      fail(ErrorCode::kParameter, "a chunk store starting at chunk " +
                                      std::to_string(chunks_->server) +
                                      " must run as server " + std::to_string(chunks_->server));
    }
  }
}

wire::HelloAck ServerCore::hello_ack() const {
  wire::HelloAck a;
  a.server_id = id_;
  const auto& m = store_.meta;
  a.alpha = m.kind == StoreKind::kShare ? m.alpha
            : m.kind == StoreKind::kPlain ? static_cast<std::uint8_t>(id_ <= 255 ? id_ : 0)
                                          : 0;
  a.protocols = supported_protocols(m.kind);
  a.digest = m.group_digest;
  a.kind = m.kind;
  a.tau = m.tau;
  a.servers = m.servers;
  a.redundancy = m.redundancy;
  a.rows = store_.matrix.rows();
  a.total_rows = m.total_rows ? m.total_rows : store_.matrix.rows();
  a.record_bytes = store_.matrix.record_bytes();
  a.grid = m.grid;
  return a;
}

bool ServerCore::draw_drop() {
  if (fault_.drop_probability <= 0) return false;
  std::uint64_t x = 0;
  {
    std::lock_guard lock(fault_mu_);
    fault_rng_.fill({reinterpret_cast<std::uint8_t*>(&x), sizeof x});
  }
  const double u = static_cast<double>(x >> 11) * 0x1.0p-53;
  return u < fault_.drop_probability;
}

void ServerCore::corrupt(std::span<std::uint8_t> payload) {
  if (fault_.byzantine == ByzantineMode::kNone || payload.empty()) return;
  std::lock_guard lock(fault_mu_);
  if (fault_.byzantine == ByzantineMode::kRandomGarbage) {
    fault_rng_.fill(payload);
    return;
  }
  for (auto& b : payload) {
    std::uint8_t mask = 0;
    while (mask == 0) mask = fault_rng_.next_byte();
    b ^= mask;
  }
}

std::vector<std::uint8_t> ServerCore::answer(const Frame& frame, std::uint64_t& compute_ns) {
  const auto kind = store_.meta.kind;
  if (!(supported_protocols(kind) & wire::protocol_bit(frame.protocol))) {
    throw Reject{ErrorReply::kUnsupportedProtocol,
                 std::string("store does not serve ") + wire::protocol_name(frame.protocol)};
  }
  const auto& db = store_.matrix;
  const auto dimension = [&](std::uint64_t got, std::uint64_t want) {
    if (got != want) {
      throw Reject{ErrorReply::kDimension, "query length " + std::to_string(got) +
                                               " does not match " + std::to_string(want)};
    }
  };

  switch (frame.protocol) {
    case Protocol::kChor: {
      const auto q = wire::decode_chor_query(frame.body);
      dimension(q.rho.size(), db.rows());
      const auto start = thread_cpu_ns();
      wire::BlockResponseMsg m{id_, 0, chor_answer(q.rho, db)};
      compute_ns = thread_cpu_ns() - start;
      m.compute_ns = compute_ns;
      corrupt(m.block);
      return wire::encode(m);
    }
    case Protocol::kGold: {
      const auto q = wire::decode_gold_query(frame.body);
      dimension(q.rho.size(), db.rows());
      const auto start = thread_cpu_ns();
      wire::GoldResponseMsg m{id_, 0, q.alpha, goldberg_answer(q.rho, db)};
      compute_ns = thread_cpu_ns() - start;
      m.compute_ns = compute_ns;
      corrupt(m.values);
      return wire::encode(m);
    }
    case Protocol::kBatch: {
      auto q = wire::decode_batch_query(frame.body);
      if (q.rows.rows() == 0) throw Reject{ErrorReply::kMalformed, "empty batch"};
      dimension(q.rows.cols(), db.rows());
      const auto start = thread_cpu_ns();
      wire::BatchResponseMsg m{id_, 0, q.alpha, strassen_mul(q.rows, db, cutoff_)};
      compute_ns = thread_cpu_ns() - start;
      m.compute_ns = compute_ns;
      auto data = m.rows.row(0);
      corrupt({data.data(), m.rows.rows() * m.rows.cols()});
      return wire::encode(m);
    }
    case Protocol::kRaid: {
      const auto q = wire::decode_raid_query(frame.body);
      if (q.layout != chunks_->layout.digest()) {
        throw Reject{ErrorReply::kDimension, "query was built for a different chunk layout"};
      }
      dimension(q.flip.size(), chunks_->layout.chunk_rows());
      const auto start = thread_cpu_ns();
      auto r = raid_server_answer({id_, q.flip, q.seed}, *chunks_);
      compute_ns = thread_cpu_ns() - start;
      wire::BlockResponseMsg m{id_, compute_ns, std::move(r.block)};
      corrupt(m.block);
      return wire::encode(m);
    }
    case Protocol::kNone:
      break;
  }
  throw Reject{ErrorReply::kUnsupportedProtocol, "no protocol given"};
}

ServerOutcome ServerCore::handle(std::span<const std::uint8_t> payload) {
  Protocol protocol = Protocol::kNone;
  try {
    const Frame frame = wire::decode_frame(payload);
    protocol = frame.protocol;
    if (frame.version != wire::kVersion) {
      return {error_frame(ErrorReply::kVersion,
                          "unsupported version " + std::to_string(frame.version), protocol),
              {}};
    }
    switch (frame.kind) {
      case Kind::kHello:
        return {wire::encode_frame({wire::kVersion, Kind::kHelloAck, Protocol::kNone,
                                    wire::encode_hello_ack(hello_ack())}),
                {}};
      case Kind::kQuery: {
        if (draw_drop()) return {std::nullopt, {}};
        std::uint64_t compute_ns = 0;
        auto body = answer(frame, compute_ns);
        return {wire::encode_frame({wire::kVersion, Kind::kResponse, protocol, std::move(body)}),
                fault_.latency};
      }
      default:
        return {error_frame(ErrorReply::kMalformed, "unexpected message kind", protocol), {}};
    }
  } catch (const Reject& r) {
    return {error_frame(r.code, r.message, protocol), {}};
  } catch (const Error& e) {
    const auto code =
        e.code() == ErrorCode::kProtocol ? ErrorReply::kMalformed : ErrorReply::kInternal;
    return {error_frame(code, e.what(), protocol), {}};
  } catch (const std::exception& e) {
    return {error_frame(ErrorReply::kInternal, e.what(), protocol), {}};
  }
}

TcpServer::TcpServer(ServerCore& core, const std::string& host, std::uint16_t port,
                     std::size_t max_frame)
    : core_(core), max_frame_(max_frame) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  hints.ai_flags = AI_PASSIVE;
  addrinfo* res = nullptr;
  const auto service = std::to_string(port);
  if (::getaddrinfo(host.empty() ? nullptr : host.c_str(), service.c_str(), &hints, &res) != 0 ||
      res == nullptr) {
    fail(ErrorCode::kNetwork, "cannot resolve bind address " + host);
  }
  listen_fd_ = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
  const int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  const bool ok = listen_fd_ >= 0 && ::bind(listen_fd_, res->ai_addr, res->ai_addrlen) == 0 &&
                  ::listen(listen_fd_, 64) == 0;
  ::freeaddrinfo(res);
  if (!ok) {
    const std::string why = std::strerror(errno);
    if (listen_fd_ >= 0) ::close(listen_fd_);
    fail(ErrorCode::kNetwork, "cannot listen on " + host + ":" + service + ": " + why);
  }
  sockaddr_in bound{};
  socklen_t len = sizeof bound;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&bound), &len);
  port_ = ntohs(bound.sin_port);
  acceptor_ = std::thread([this] { accept_loop(); });
}

TcpServer::~TcpServer() { stop(); }

void TcpServer::stop() {
  if (stopping_.exchange(true)) return;
  if (acceptor_.joinable()) acceptor_.join();
  ::close(listen_fd_);
  {
    std::lock_guard lock(conns_mu_);
    for (auto& c : conns_) ::shutdown(c->fd, SHUT_RDWR);
  }
  reap(true);
}

void TcpServer::reap(bool all) {
  std::lock_guard lock(conns_mu_);
  for (auto it = conns_.begin(); it != conns_.end();) {
    if (all || (*it)->done) {
      if ((*it)->thread.joinable()) (*it)->thread.join();
      ::close((*it)->fd);
      it = conns_.erase(it);
    } else {
      ++it;
    }
  }
}

void TcpServer::accept_loop() {
  while (!stopping_) {
    pollfd p{listen_fd_, POLLIN, 0};
    if (::poll(&p, 1, 50) <= 0) {
      reap(false);
      continue;
    }
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) continue;
    const int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
    auto conn = std::make_unique<Connection>();
    conn->fd = fd;
    Connection& ref = *conn;
    {
      std::lock_guard lock(conns_mu_);
      conns_.push_back(std::move(conn));
    }
    ref.thread = std::thread([this, &ref] { serve_connection(ref); });
    reap(false);
  }
}

void TcpServer::serve_connection(Connection& conn) {
  using detail::IoStatus;
  const auto forever = detail::Clock::time_point::max();
  const auto stopped = [this] { return stopping_.load(); };
  std::vector<std::uint8_t> buf;
  for (;;) {
    std::uint8_t prefix[wire::kLengthPrefixBytes];
    if (detail::read_exact(conn.fd, prefix, sizeof prefix, forever, stopped) != IoStatus::kOk) {
      break;
    }
    const std::uint32_t len = (std::uint32_t{prefix[0]} << 24) | (std::uint32_t{prefix[1]} << 16) |
                              (std::uint32_t{prefix[2]} << 8) | prefix[3];
    if (len > max_frame_) break;
    buf.resize(len);
    if (detail::read_exact(conn.fd, buf.data(), len, forever, stopped) != IoStatus::kOk) break;
    auto outcome = core_.handle(buf);
    if (!outcome.reply) break;
    if (outcome.delay.count() > 0) {
      const auto until = detail::Clock::now() + outcome.delay;
      while (!stopping_ && detail::Clock::now() < until) {
        std::this_thread::sleep_for(std::min<detail::Clock::duration>(
            std::chrono::milliseconds(20), until - detail::Clock::now()));
      }
    }
    if (detail::write_all(conn.fd, outcome.reply->data(), outcome.reply->size(), forever,
                          stopped) != IoStatus::kOk) {
      break;
    }
  }
  ::shutdown(conn.fd, SHUT_RDWR);
  conn.done = true;
}

}  // namespace lpir::net
