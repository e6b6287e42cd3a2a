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

#include "lpir/client.hpp"

#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <functional>
#include <map>
#include <optional>
#include <thread>
#include <variant>

#include "lpir/errors.hpp"
#include "lpir/pir_batch.hpp"
#include "lpir/pir_chor.hpp"
#include "lpir/pir_raid.hpp"
#include "lpir/pir_tau.hpp"
#include "lpir/random.hpp"
#include "lpir/server.hpp"
#include "lpir/sharing.hpp"
#include "socket_io.hpp"

namespace lpir::net {

void CancelToken::cancel() {
  {
    std::lock_guard lock(mu_);
    cancelled_ = true;
  }
  cv_.notify_all();
}

bool CancelToken::cancelled() const {
  std::lock_guard lock(mu_);
  return cancelled_;
}

bool CancelToken::sleep_for(Clock::duration d) const {
  std::unique_lock lock(mu_);
  return !cv_.wait_for(lock, d, [this] { return cancelled_; });
}

namespace {

using wire::Kind;
using wire::Protocol;

std::vector<std::uint8_t> strip_prefix(const std::vector<std::uint8_t>& frame) {
  return {frame.begin() + wire::kLengthPrefixBytes, frame.end()};
}

class LoopbackSession final : public Session {
 public:
  explicit LoopbackSession(ServerCore& core) : core_(core) {}

  std::vector<std::uint8_t> exchange(std::span<const std::uint8_t> frame,
                                     Clock::time_point deadline,
                                     const CancelToken& cancel) override {
    if (closed_) fail(ErrorCode::kNetwork, "connection closed");
    auto outcome = core_.handle(frame.subspan(wire::kLengthPrefixBytes));
    if (!outcome.reply) {
      closed_ = true;
      fail(ErrorCode::kNetwork, "connection closed by server");
    }
    if (outcome.delay.count() > 0) {
      const auto now = Clock::now();
      const bool late = now + outcome.delay > deadline;
      const auto wait = late ? deadline - now : Clock::duration(outcome.delay);
      if (!cancel.sleep_for(wait)) fail(ErrorCode::kNetwork, "cancelled");
      if (late) fail(ErrorCode::kNetwork, "timed out");
    }
    return strip_prefix(*outcome.reply);
  }

 private:
  ServerCore& core_;
  bool closed_ = false;
};

class TcpSession final : public Session {
 public:
  TcpSession(int fd, std::size_t max_frame) : fd_(fd), max_frame_(max_frame) {}
  ~TcpSession() override { ::close(fd_); }

  std::vector<std::uint8_t> exchange(std::span<const std::uint8_t> frame,
                                     Clock::time_point deadline,
                                     const CancelToken& cancel) override {
    using detail::IoStatus;
    const std::function<bool()> stop = [&cancel] { return cancel.cancelled(); };
    auto check = [](IoStatus s) {
      if (s != IoStatus::kOk) fail(ErrorCode::kNetwork, detail::io_status_name(s));
    };
    check(detail::write_all(fd_, frame.data(), frame.size(), deadline, stop));
    std::uint8_t prefix[wire::kLengthPrefixBytes];
    check(detail::read_exact(fd_, prefix, sizeof prefix, deadline, stop));
    const std::uint32_t len = (std::uint32_t{prefix[0]} << 24) | (std::uint32_t{prefix[1]} << 16) |
                              (std::uint32_t{prefix[2]} << 8) | prefix[3];
    if (len > max_frame_) fail(ErrorCode::kNetwork, "reply exceeds the maximum frame size");
    std::vector<std::uint8_t> reply(len);
    check(detail::read_exact(fd_, reply.data(), len, deadline, stop));
    return reply;
  }

 private:
  int fd_;
  std::size_t max_frame_;
};

}  // namespace

std::unique_ptr<Session> LoopbackEndpoint::connect(Clock::time_point, const CancelToken&) {
  return std::make_unique<LoopbackSession>(core_);
}

std::string LoopbackEndpoint::describe() const {
  return "loopback:" + std::to_string(core_.server_id());
}

TcpEndpoint::TcpEndpoint(std::string host, std::uint16_t port, std::size_t max_frame)
    : host_(std::move(host)), port_(port), max_frame_(max_frame) {}

std::unique_ptr<TcpEndpoint> TcpEndpoint::parse(const std::string& address) {
  const auto colon = address.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == address.size()) {
    fail(ErrorCode::kParameter, "server address must be host:port, got '" + address + "'");
  }
  unsigned long port = 0;
  try {
    std::size_t used = 0;
    port = std::stoul(address.substr(colon + 1), &used);
    if (used != address.size() - colon - 1) throw std::invalid_argument("port");
  } catch (const std::exception&) {
    fail(ErrorCode::kParameter, "bad port in '" + address + "'");
  }
  if (port == 0 || port > 65535) fail(ErrorCode::kParameter, "bad port in '" + address + "'");
  return std::make_unique<TcpEndpoint>(address.substr(0, colon),
                                       static_cast<std::uint16_t>(port));
}

std::string TcpEndpoint::describe() const { return host_ + ":" + std::to_string(port_); }

std::unique_ptr<Session> TcpEndpoint::connect(Clock::time_point deadline,
                                              const CancelToken& cancel) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (::getaddrinfo(host_.c_str(), std::to_string(port_).c_str(), &hints, &res) != 0 ||
      res == nullptr) {
    fail(ErrorCode::kNetwork, "cannot resolve " + describe());
  }
  const int fd = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
  if (fd < 0) {
    ::freeaddrinfo(res);
    fail(ErrorCode::kNetwork, "socket() failed");
  }
  ::fcntl(fd, F_SETFL, ::fcntl(fd, F_GETFL) | O_NONBLOCK);
  const int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  int rc = ::connect(fd, res->ai_addr, res->ai_addrlen);
  ::freeaddrinfo(res);
  if (rc != 0 && errno != EINPROGRESS) {
    ::close(fd);
    fail(ErrorCode::kNetwork, "cannot connect to " + describe());
  }
  while (rc != 0) {
    if (cancel.cancelled() || Clock::now() >= deadline) {
      ::close(fd);
      fail(ErrorCode::kNetwork, "connect to " + describe() + " timed out");
    }
    pollfd p{fd, POLLOUT, 0};
    if (::poll(&p, 1, 20) > 0) {
      int err = 0;
      socklen_t len = sizeof err;
      ::getsockopt(fd, SOL_SOCKET, SO_ERROR, &err, &len);
      if (err != 0) {
        ::close(fd);
        fail(ErrorCode::kNetwork, "cannot connect to " + describe());
      }
      rc = 0;
    }
  }
  return std::make_unique<TcpSession>(fd, max_frame_);
}

namespace {

struct Slot {
  std::unique_ptr<Session> session;
  std::optional<wire::HelloAck> ack;
  std::vector<std::uint8_t> query_frame;
  std::uint64_t query_bits = 0;
  std::vector<std::uint8_t> query_payload;
  bool responded = false;
  std::variant<std::monostate, wire::BlockResponseMsg, wire::GoldResponseMsg,
               wire::BatchResponseMsg>
      response;
  std::uint64_t response_bits = 0;
  std::size_t response_frame_bytes = 0;
  std::vector<std::uint8_t> response_payload;
  std::uint64_t round_trip_ns = 0;
  std::string failure;
};

// Runs fn(i) for every index on its own thread and returns once `need` of
// them reported success or none is pending. Stragglers are cancelled and
// joined before returning.
void fan_out(std::size_t n, std::size_t need, const std::function<bool(std::size_t,
                                                                         const CancelToken&)>& fn) {
  CancelToken cancel;
  std::mutex mu;
  std::condition_variable cv;
  std::size_t done = 0, ok = 0;
  std::vector<std::thread> threads;
  threads.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    threads.emplace_back([&, i] {
      const bool success = fn(i, cancel);
      {
        std::lock_guard lock(mu);
        ++done;
        if (success) ++ok;
      }
      cv.notify_all();
    });
  }
  {
    std::unique_lock lock(mu);
    cv.wait(lock, [&] { return ok >= need || done == n; });
  }
  cancel.cancel();
  for (auto& t : threads) t.join();
}

std::string describe_error(const std::exception& e) { return e.what(); }

std::vector<std::uint8_t> payload_of(const wire::ChorQueryMsg& m) { return m.rho.to_bytes(); }

struct Targets {
  std::vector<std::uint64_t> betas;
  std::vector<SpectrumKey> keys;
};

bool is_goldberg_family(Protocol p) { return p == Protocol::kGold || p == Protocol::kBatch; }

void validate(const FetchParams& p, std::size_t servers, std::size_t targets) {
  if (targets == 0) fail(ErrorCode::kParameter, "nothing to fetch");
  if (targets > 1 && p.protocol != Protocol::kBatch) {
    fail(ErrorCode::kParameter, "fetching several rows needs the batch protocol");
  }
  if (servers > 255) fail(ErrorCode::kParameter, "at most 255 servers");
  switch (p.protocol) {
    case Protocol::kChor:
      if (servers < 2) fail(ErrorCode::kParameter, "CHOR needs at least 2 servers");
      break;
    case Protocol::kGold:
    case Protocol::kBatch: {
      const std::size_t k = p.k ? p.k : servers;
      if (p.tau > 0) {
        validate_tau_parameters(p.t, p.tau, k, servers);
      } else if (p.t <= 0 || static_cast<std::size_t>(p.t) >= servers || k > servers ||
                 k <= static_cast<std::size_t>(p.t)) {
        fail(ErrorCode::kParameter, "need 0 < t < k <= l (t=" + std::to_string(p.t) +
                                        ", k=" + std::to_string(k) +
                                        ", l=" + std::to_string(servers) + ")");
      }
      break;
    }
    case Protocol::kRaid:
      if (p.pi != 0 && (p.pi < 2 || p.pi > servers)) {
        fail(ErrorCode::kParameter, "need 2 <= pi <= l");
      }
      break;
    case Protocol::kNone:
      fail(ErrorCode::kParameter, "no protocol selected");
  }
  if (p.tau > 0 && !is_goldberg_family(p.protocol)) {
    fail(ErrorCode::kParameter, "tau applies to the GOLD and BATCH protocols only");
  }
}

// CHOR and RAID need every server, so a silent one is an incomplete response;
// GOLD and BATCH missed their k-of-l quorum.
[[noreturn]] void robustness_failure(const std::vector<Slot>& slots,
                                     std::span<Endpoint* const> servers, std::size_t got,
                                     std::size_t need, const char* phase, bool threshold) {
  std::string msg = std::string(phase) + ": " + std::to_string(got) + " of " +
                    std::to_string(need) + " required servers answered; silent:";
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const bool silent = std::string(phase) == "handshake" ? !slots[i].ack : !slots[i].responded;
    if (silent) {
      msg += " " + servers[i]->describe();
      if (!slots[i].failure.empty()) msg += " (" + slots[i].failure + ")";
    }
  }
  fail(threshold ? ErrorCode::kRobustnessFailure : ErrorCode::kIncompleteResponse, msg);
}

FetchResult fetch(Targets targets, std::span<Endpoint* const> servers, const FetchParams& params,
                  RandomSource& rng) {
  const std::size_t l = servers.size();
  validate(params, l, targets.keys.empty() ? targets.betas.size() : targets.keys.size());
  const auto t0 = Clock::now();
  const bool gold = is_goldberg_family(params.protocol);
  const std::size_t quorum = gold ? (params.k ? params.k : l) : l;
  const int degree = params.t + params.tau;

  FetchResult result;
  auto& tr = result.transcript;
  std::vector<Slot> slots(l);

  // Handshake.
  const auto hello = wire::encode_frame({wire::kVersion, Kind::kHello, Protocol::kNone, {}});
  fan_out(l, l, [&](std::size_t i, const CancelToken& cancel) {
    const auto deadline = Clock::now() + params.timeout;
    try {
      slots[i].session = servers[i]->connect(deadline, cancel);
      const auto reply = wire::decode_frame(slots[i].session->exchange(hello, deadline, cancel));
      if (reply.kind != Kind::kHelloAck) {
        slots[i].failure = "unexpected reply to HELLO";
        return false;
      }
      slots[i].ack = wire::decode_hello_ack(reply.body);
      return true;
    } catch (const std::exception& e) {
      slots[i].failure = describe_error(e);
      return false;
    }
  });

  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < l; ++i) {
    tr.framing_bytes_up += hello.size();
    if (slots[i].ack) {
      live.push_back(i);
      tr.framing_bytes_down += wire::kLengthPrefixBytes + wire::kFrameHeaderBytes +
                               wire::encode_hello_ack(*slots[i].ack).size();
    }
  }
  if (live.size() < quorum) robustness_failure(slots, servers, live.size(), quorum, "handshake", gold);

  const auto& ref = *slots[live.front()].ack;
  std::map<std::uint16_t, std::size_t> ids;
  for (auto i : live) {
    const auto& a = *slots[i].ack;
    if (a.digest != ref.digest) {
      fail(ErrorCode::kProtocol, "store digests disagree between " +
                                     servers[live.front()]->describe() + " and " +
                                     servers[i]->describe());
    }
    if (!(a.protocols & wire::protocol_bit(params.protocol))) {
      fail(ErrorCode::kProtocol, servers[i]->describe() + " does not serve " +
                                     wire::protocol_name(params.protocol));
    }
    if (a.total_rows != ref.total_rows || a.record_bytes != ref.record_bytes ||
        a.kind != ref.kind || a.tau != ref.tau || !(a.grid == ref.grid)) {
      fail(ErrorCode::kProtocol, "stores disagree on their dimensions");
    }
    if (!ids.emplace(a.server_id, i).second) {
      fail(ErrorCode::kProtocol, "two servers share id " + std::to_string(a.server_id));
    }
  }
  if (ref.tau != params.tau) {
    fail(ErrorCode::kParameter, "servers hold a degree-" + std::to_string(ref.tau) +
                                    " sharing but tau=" + std::to_string(params.tau) +
                                    " was requested");
  }
  const std::uint64_t r = ref.total_rows;

  std::vector<std::uint64_t> betas = targets.betas;
  for (const auto& key : targets.keys) betas.push_back(inv_index(key, ref.grid));
  for (auto b : betas) {
    if (b == 0 || b > r) fail(ErrorCode::kIndex, "row " + std::to_string(b) + " out of range");
  }

  // Queries.
  const auto build_start = Clock::now();
  std::optional<ChunkLayout> layout;
  switch (params.protocol) {
    case Protocol::kChor: {
      const auto q = chor_build_query(betas[0], r, l, rng);
      tr.t_query_build = Clock::now() - build_start;
      for (std::size_t i = 0; i < l; ++i) {
        wire::ChorQueryMsg m{q.shares[i]};
        slots[i].query_bits = wire::payload_bits(m);
        if (params.capture_payloads) slots[i].query_payload = payload_of(m);
        slots[i].query_frame =
            wire::encode_frame({wire::kVersion, Kind::kQuery, params.protocol, wire::encode(m)});
      }
      break;
    }
    case Protocol::kGold:
    case Protocol::kBatch: {
      std::vector<gf256::Element> alphas;
      for (auto i : live) alphas.push_back(slots[i].ack->alpha);
      const EvalPointSet points(alphas);
      if (params.protocol == Protocol::kGold) {
        const auto qs = goldberg_build_queries(betas[0], r, params.t, points, rng);
        tr.t_query_build = Clock::now() - build_start;
        for (std::size_t n = 0; n < live.size(); ++n) {
          wire::GoldQueryMsg m{static_cast<std::uint8_t>(params.t), qs[n].alpha, qs[n].rho};
          auto& s = slots[live[n]];
          s.query_bits = wire::payload_bits(m);
          if (params.capture_payloads) s.query_payload = m.rho;
          s.query_frame =
              wire::encode_frame({wire::kVersion, Kind::kQuery, params.protocol, wire::encode(m)});
        }
      } else {
        auto qs = batch_build_queries(betas, r, params.t, points, rng);
        tr.t_query_build = Clock::now() - build_start;
        for (std::size_t n = 0; n < live.size(); ++n) {
          wire::BatchQueryMsg m{qs[n].alpha, static_cast<std::uint8_t>(params.t),
                                std::move(qs[n].rows)};
          auto& s = slots[live[n]];
          s.query_bits = wire::payload_bits(m);
          if (params.capture_payloads) {
            s.query_payload.assign(m.rows.data().begin(), m.rows.data().end());
          }
          s.query_frame =
              wire::encode_frame({wire::kVersion, Kind::kQuery, params.protocol, wire::encode(m)});
        }
      }
      break;
    }
    case Protocol::kRaid: {
      if (ref.servers != l || (params.pi != 0 && ref.redundancy != params.pi)) {
        fail(ErrorCode::kParameter, "chunk stores were built for l=" +
                                        std::to_string(ref.servers) + ", pi=" +
                                        std::to_string(ref.redundancy));
      }
      layout.emplace(l, ref.redundancy, r);
      const auto qs = raid_build_queries(betas[0], *layout, rng);
      tr.t_query_build = Clock::now() - build_start;
      const auto digest = layout->digest();
      for (const auto& q : qs) {
        const auto it = ids.find(q.server);
        if (it == ids.end()) {
          fail(ErrorCode::kProtocol, "no server holds chunk " + std::to_string(q.server));
        }
        wire::RaidQueryMsg m{digest, q.flip, q.seed};
        auto& s = slots[it->second];
        s.query_bits = wire::payload_bits(m);
        if (params.capture_payloads) {
          s.query_payload = q.flip.to_bytes();
          s.query_payload.insert(s.query_payload.end(), q.seed.begin(), q.seed.end());
        }
        s.query_frame =
            wire::encode_frame({wire::kVersion, Kind::kQuery, params.protocol, wire::encode(m)});
      }
      break;
    }
    case Protocol::kNone:
      break;
  }

  fan_out(live.size(), quorum, [&](std::size_t n, const CancelToken& cancel) {
    auto& s = slots[live[n]];
    const auto& ack = *s.ack;
    const auto start = Clock::now();
    try {
      const auto raw = s.session->exchange(s.query_frame, start + params.timeout, cancel);
      s.round_trip_ns = static_cast<std::uint64_t>(
          std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count());
      s.response_frame_bytes = wire::kLengthPrefixBytes + raw.size();
      const auto reply = wire::decode_frame(raw);
      if (reply.kind == Kind::kError) {
        const auto e = wire::decode_error(reply.body);
        s.failure = "server error " + std::to_string(static_cast<int>(e.code)) + ": " + e.message;
        return false;
      }
      if (reply.kind != Kind::kResponse || reply.protocol != params.protocol) {
        s.failure = "unexpected reply";
        return false;
      }
      std::uint16_t id = 0;
      switch (params.protocol) {
        case Protocol::kChor:
        case Protocol::kRaid: {
          auto m = wire::decode_block_response(reply.body);
          if (m.block.size() != ack.record_bytes) {
            s.failure = "response block has the wrong length";
            return false;
          }
          id = m.server_id;
          s.response_bits = wire::payload_bits(m);
          if (params.capture_payloads) s.response_payload = m.block;
          s.response = std::move(m);
          break;
        }
        case Protocol::kGold: {
          auto m = wire::decode_gold_response(reply.body);
          if (m.values.size() != ack.record_bytes || m.alpha != ack.alpha) {
            s.failure = "response does not match the query";
            return false;
          }
          id = m.server_id;
          s.response_bits = wire::payload_bits(m);
          if (params.capture_payloads) s.response_payload = m.values;
          s.response = std::move(m);
          break;
        }
        case Protocol::kBatch: {
          auto m = wire::decode_batch_response(reply.body);
          if (m.rows.cols() != ack.record_bytes || m.rows.rows() != betas.size() ||
              m.alpha != ack.alpha) {
            s.failure = "response does not match the query";
            return false;
          }
          id = m.server_id;
          s.response_bits = wire::payload_bits(m);
          if (params.capture_payloads) {
            s.response_payload.assign(m.rows.data().begin(), m.rows.data().end());
          }
          s.response = std::move(m);
          break;
        }
        case Protocol::kNone:
          return false;
      }
      if (id != ack.server_id) {
        s.failure = "response carries server id " + std::to_string(id);
        s.response = std::monostate{};
        return false;
      }
      s.responded = true;
      return true;
    } catch (const std::exception& e) {
      s.failure = describe_error(e);
      return false;
    }
  });

  std::size_t responded = 0;
  for (auto i : live) {
    auto& s = slots[i];
    tr.payload_bits_up += s.query_bits;
    tr.framing_bytes_up += s.query_frame.size() - s.query_bits / 8;
    ServerTiming timing;
    timing.server_id = s.ack->server_id;
    timing.endpoint = servers[i]->describe();
    timing.responded = s.responded;
    timing.failure = s.failure;
    timing.round_trip_ns = s.round_trip_ns;
    timing.query_payload = std::move(s.query_payload);
    if (s.responded) {
      ++responded;
      tr.payload_bits_down += s.response_bits;
      tr.framing_bytes_down += s.response_frame_bytes - s.response_bits / 8;
      timing.response_payload = std::move(s.response_payload);
      std::visit(
          [&](const auto& m) {
            if constexpr (!std::is_same_v<std::decay_t<decltype(m)>, std::monostate>) {
              timing.compute_ns = m.compute_ns;
            }
          },
          s.response);
    }
    tr.servers.push_back(std::move(timing));
  }
  if (responded < quorum) robustness_failure(slots, servers, responded, quorum, "query", gold);

  // Recovery, in server-id order.
  std::vector<std::size_t> order;
  for (const auto& [id, i] : ids) {
    if (slots[i].responded) order.push_back(i);
  }
  const auto recover_start = Clock::now();
  switch (params.protocol) {
    case Protocol::kChor:
    case Protocol::kRaid: {
      std::vector<ChorResponse> rs;
      std::set<std::uint16_t> honest;
      for (auto i : order) {
        auto& m = std::get<wire::BlockResponseMsg>(slots[i].response);
        rs.push_back({m.server_id, m.block});
        honest.insert(m.server_id);
      }
      FetchedRecord rec;
      rec.beta = betas[0];
      rec.report.record = params.protocol == Protocol::kChor ? chor_reconstruct(rs, l)
                                                              : raid_reconstruct(rs, l);
      rec.report.honest = std::move(honest);
      result.records.push_back(std::move(rec));
      break;
    }
    case Protocol::kGold: {
      std::vector<GoldbergResponse> rs;
      for (auto i : order) {
        auto& m = std::get<wire::GoldResponseMsg>(slots[i].response);
        rs.push_back({m.server_id, m.alpha, std::move(m.values)});
      }
      FetchedRecord rec;
      rec.beta = betas[0];
      rec.report = tau_recover(rs, params.t, params.tau);
      result.records.push_back(std::move(rec));
      break;
    }
    case Protocol::kBatch: {
      std::vector<ResponseMatrix> rs;
      for (auto i : order) {
        auto& m = std::get<wire::BatchResponseMsg>(slots[i].response);
        rs.push_back({m.server_id, m.alpha, std::move(m.rows)});
      }
      auto reports = batch_recover(rs, degree);
      for (std::size_t j = 0; j < reports.size(); ++j) {
        FetchedRecord rec;
        rec.beta = betas[j];
        rec.report = std::move(reports[j]);
        result.records.push_back(std::move(rec));
      }
      break;
    }
    case Protocol::kNone:
      break;
  }
  tr.t_recover = Clock::now() - recover_start;
  for (auto& rec : result.records) {
    rec.checksum_ok = rec.report.record.size() >= kMinRecordBytes &&
                      record_checksum_ok(rec.report.record);
  }
  tr.t_total = Clock::now() - t0;
  return result;
}

}  // namespace

FetchResult private_fetch_rows(std::span<const std::uint64_t> betas,
                               std::span<Endpoint* const> servers, const FetchParams& params,
                               RandomSource& rng) {
  return fetch({{betas.begin(), betas.end()}, {}}, servers, params, rng);
}

FetchResult private_fetch(std::span<const SpectrumKey> keys, std::span<Endpoint* const> servers,
                          const FetchParams& params, RandomSource& rng) {
  return fetch({{}, {keys.begin(), keys.end()}}, servers, params, rng);
}

}  // namespace lpir::net
