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

#include "lpir/wire.hpp"

#include <algorithm>
#include <cctype>

#include "lpir/byteio.hpp"
#include "lpir/errors.hpp"

namespace lpir::wire {
namespace {

ByteReader reader(std::span<const std::uint8_t> body) {
  return ByteReader(body, Endian::kBig, ErrorCode::kProtocol);
}

void expect_end(const ByteReader& r) {
  if (r.remaining() != 0) fail(ErrorCode::kProtocol, "trailing bytes in message body");
}

void put_bits(ByteWriter& w, const BitVector& v) {
  w.put(static_cast<std::uint64_t>(v.size()));
  w.put_bytes(v.to_bytes());
}

BitVector get_bits(ByteReader& r) {
  const auto bits = r.get<std::uint64_t>();
  if (bits > r.remaining() * 8ULL) fail(ErrorCode::kProtocol, "bit vector exceeds body");
  return BitVector::from_bytes(r.get_bytes(packed_bytes(bits)), bits);
}

template <typename T>
T checked_size(std::uint64_t a, std::uint64_t b, const ByteReader& r) {
  if (a != 0 && b > r.remaining() / a) fail(ErrorCode::kProtocol, "dimensions exceed body");
  return static_cast<T>(a * b);
}

}  // namespace

const char* protocol_name(Protocol p) {
  switch (p) {
    case Protocol::kChor: return "chor";
    case Protocol::kGold: return "gold";
    case Protocol::kBatch: return "batch";
    case Protocol::kRaid: return "raid";
    case Protocol::kNone: break;
  }
  return "none";
}

Protocol parse_protocol(const std::string& name) {
  std::string n = name;
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
  for (auto p : {Protocol::kChor, Protocol::kGold, Protocol::kBatch, Protocol::kRaid}) {
    if (n == protocol_name(p)) return p;
  }
  fail(ErrorCode::kParameter, "unknown protocol '" + name + "'");
}

std::vector<std::uint8_t> encode_frame(const Frame& frame) {
  const std::size_t len = kFrameHeaderBytes + frame.body.size();
  if (len > 0xFFFFFFFFu) fail(ErrorCode::kProtocol, "frame too large");
  ByteWriter w(Endian::kBig);
  w.put(static_cast<std::uint32_t>(len));
  w.put(frame.version);
  w.put(static_cast<std::uint8_t>(frame.kind));
  w.put(static_cast<std::uint8_t>(frame.protocol));
  w.put_bytes(frame.body);
  return w.take();
}

Frame decode_frame(std::span<const std::uint8_t> payload) {
  auto r = reader(payload);
  Frame f;
  f.version = r.get<std::uint8_t>();
  f.kind = static_cast<Kind>(r.get<std::uint8_t>());
  f.protocol = static_cast<Protocol>(r.get<std::uint8_t>());
  const auto rest = r.rest();
  f.body.assign(rest.begin(), rest.end());
  return f;
}

std::vector<std::uint8_t> encode_hello_ack(const HelloAck& a) {
  ByteWriter w(Endian::kBig);
  w.put(a.server_id);
  w.put(a.alpha);
  w.put(a.protocols);
  w.put_bytes(a.digest);
  w.put(static_cast<std::uint8_t>(a.kind));
  w.put(a.tau);
  w.put(a.servers);
  w.put(a.redundancy);
  w.put(a.rows);
  w.put(a.total_rows);
  w.put(a.record_bytes);
  w.put_f64(a.grid.origin_lat);
  w.put_f64(a.grid.origin_lon);
  w.put_f64(a.grid.cell_size_m);
  w.put(a.grid.width);
  w.put(a.grid.height);
  w.put(a.grid.channels);
  w.put(a.grid.first_channel);
  w.put(a.grid.timeslots);
  return w.take();
}

HelloAck decode_hello_ack(std::span<const std::uint8_t> body) {
  auto r = reader(body);
  HelloAck a;
  a.server_id = r.get<std::uint16_t>();
  a.alpha = r.get<std::uint8_t>();
  a.protocols = r.get<std::uint8_t>();
  const auto d = r.get_bytes(a.digest.size());
  std::copy(d.begin(), d.end(), a.digest.begin());
  const auto kind = r.get<std::uint8_t>();
  if (kind > static_cast<std::uint8_t>(StoreKind::kChunk)) {
    fail(ErrorCode::kProtocol, "unknown store kind");
  }
  a.kind = static_cast<StoreKind>(kind);
  a.tau = r.get<std::uint8_t>();
  a.servers = r.get<std::uint8_t>();
  a.redundancy = r.get<std::uint8_t>();
  a.rows = r.get<std::uint64_t>();
  a.total_rows = r.get<std::uint64_t>();
  a.record_bytes = r.get<std::uint64_t>();
  a.grid.origin_lat = r.get_f64();
  a.grid.origin_lon = r.get_f64();
  a.grid.cell_size_m = r.get_f64();
  a.grid.width = r.get<std::uint32_t>();
  a.grid.height = r.get<std::uint32_t>();
  a.grid.channels = r.get<std::uint32_t>();
  a.grid.first_channel = r.get<std::uint32_t>();
  a.grid.timeslots = r.get<std::uint32_t>();
  expect_end(r);
  return a;
}

std::vector<std::uint8_t> encode(const ChorQueryMsg& m) {
  ByteWriter w(Endian::kBig);
  put_bits(w, m.rho);
  return w.take();
}

std::vector<std::uint8_t> encode(const GoldQueryMsg& m) {
  ByteWriter w(Endian::kBig);
  w.put(static_cast<std::uint64_t>(m.rho.size()));
  w.put(m.t);
  w.put(m.alpha);
  w.put_bytes(m.rho);
  return w.take();
}

std::vector<std::uint8_t> encode(const BatchQueryMsg& m) {
  ByteWriter w(Endian::kBig);
  w.put(static_cast<std::uint32_t>(m.rows.rows()));
  w.put(m.alpha);
  w.put(m.t);
  w.put(static_cast<std::uint64_t>(m.rows.cols()));
  w.put_bytes(m.rows.data());
  return w.take();
}

std::vector<std::uint8_t> encode(const RaidQueryMsg& m) {
  ByteWriter w(Endian::kBig);
  w.put_bytes(m.layout);
  put_bits(w, m.flip);
  w.put_bytes(m.seed);
  return w.take();
}

std::vector<std::uint8_t> encode(const BlockResponseMsg& m) {
  ByteWriter w(Endian::kBig);
  w.put(m.server_id);
  w.put(m.compute_ns);
  w.put_bytes(m.block);
  return w.take();
}

std::vector<std::uint8_t> encode(const GoldResponseMsg& m) {
  ByteWriter w(Endian::kBig);
  w.put(m.server_id);
  w.put(m.compute_ns);
  w.put(m.alpha);
  w.put_bytes(m.values);
  return w.take();
}

std::vector<std::uint8_t> encode(const BatchResponseMsg& m) {
  ByteWriter w(Endian::kBig);
  w.put(m.server_id);
  w.put(m.compute_ns);
  w.put(m.alpha);
  w.put(static_cast<std::uint32_t>(m.rows.rows()));
  w.put_bytes(m.rows.data());
  return w.take();
}

std::vector<std::uint8_t> encode(const ErrorMsg& m) {
  ByteWriter w(Endian::kBig);
  w.put(static_cast<std::uint16_t>(m.code));
  w.put_bytes({reinterpret_cast<const std::uint8_t*>(m.message.data()), m.message.size()});
  return w.take();
}

ChorQueryMsg decode_chor_query(std::span<const std::uint8_t> body) {
  auto r = reader(body);
  ChorQueryMsg m{get_bits(r)};
  expect_end(r);
  return m;
}

GoldQueryMsg decode_gold_query(std::span<const std::uint8_t> body) {
  auto r = reader(body);
  const auto len = r.get<std::uint64_t>();
  GoldQueryMsg m;
  m.t = r.get<std::uint8_t>();
  m.alpha = r.get<std::uint8_t>();
  if (len > r.remaining()) fail(ErrorCode::kProtocol, "query vector exceeds body");
  const auto rho = r.get_bytes(len);
  m.rho.assign(rho.begin(), rho.end());
  expect_end(r);
  return m;
}

BatchQueryMsg decode_batch_query(std::span<const std::uint8_t> body) {
  auto r = reader(body);
  BatchQueryMsg m;
  const auto q = r.get<std::uint32_t>();
  m.alpha = r.get<std::uint8_t>();
  m.t = r.get<std::uint8_t>();
  const auto cols = r.get<std::uint64_t>();
  const auto n = checked_size<std::size_t>(q, cols, r);
  const auto data = r.get_bytes(n);
  m.rows = FieldMatrix(q, cols, {data.begin(), data.end()});
  expect_end(r);
  return m;
}

RaidQueryMsg decode_raid_query(std::span<const std::uint8_t> body) {
  auto r = reader(body);
  RaidQueryMsg m;
  const auto d = r.get_bytes(m.layout.size());
  std::copy(d.begin(), d.end(), m.layout.begin());
  m.flip = get_bits(r);
  const auto s = r.get_bytes(m.seed.size());
  std::copy(s.begin(), s.end(), m.seed.begin());
  expect_end(r);
  return m;
}

BlockResponseMsg decode_block_response(std::span<const std::uint8_t> body) {
  auto r = reader(body);
  BlockResponseMsg m;
  m.server_id = r.get<std::uint16_t>();
  m.compute_ns = r.get<std::uint64_t>();
  const auto rest = r.rest();
  m.block.assign(rest.begin(), rest.end());
  return m;
}

GoldResponseMsg decode_gold_response(std::span<const std::uint8_t> body) {
  auto r = reader(body);
  GoldResponseMsg m;
  m.server_id = r.get<std::uint16_t>();
  m.compute_ns = r.get<std::uint64_t>();
  m.alpha = r.get<std::uint8_t>();
  const auto rest = r.rest();
  m.values.assign(rest.begin(), rest.end());
  return m;
}

BatchResponseMsg decode_batch_response(std::span<const std::uint8_t> body) {
  auto r = reader(body);
  BatchResponseMsg m;
  m.server_id = r.get<std::uint16_t>();
  m.compute_ns = r.get<std::uint64_t>();
  m.alpha = r.get<std::uint8_t>();
  const auto q = r.get<std::uint32_t>();
  if (q == 0 || r.remaining() % q != 0) {
    fail(ErrorCode::kProtocol, "batch response is not a q x s grid");
  }
  const auto rest = r.rest();
  m.rows = FieldMatrix(q, rest.size() / q, {rest.begin(), rest.end()});
  return m;
}

ErrorMsg decode_error(std::span<const std::uint8_t> body) {
  auto r = reader(body);
  ErrorMsg m;
  m.code = static_cast<ErrorReply>(r.get<std::uint16_t>());
  const auto rest = r.rest();
  m.message.assign(rest.begin(), rest.end());
  return m;
}

std::uint64_t payload_bits(const ChorQueryMsg& m) { return m.rho.size(); }
std::uint64_t payload_bits(const GoldQueryMsg& m) { return m.rho.size() * 8ULL; }
std::uint64_t payload_bits(const BatchQueryMsg& m) { return m.rows.data().size() * 8ULL; }
std::uint64_t payload_bits(const RaidQueryMsg& m) {
  return m.flip.size() + m.seed.size() * 8ULL;
}
std::uint64_t payload_bits(const BlockResponseMsg& m) { return m.block.size() * 8ULL; }
std::uint64_t payload_bits(const GoldResponseMsg& m) { return m.values.size() * 8ULL; }
std::uint64_t payload_bits(const BatchResponseMsg& m) { return m.rows.data().size() * 8ULL; }

}  // namespace lpir::wire
