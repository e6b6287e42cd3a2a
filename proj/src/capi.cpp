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

#include "lpir/lpir.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "lpir/bench.hpp"
#include "lpir/client.hpp"
#include "lpir/errors.hpp"
#include "lpir/random.hpp"
#include "lpir/server.hpp"
#include "lpir/spectrumdb.hpp"
#include "lpir/stores.hpp"

struct lpir_database {
  lpir::StoredDatabase db;
};

struct lpir_server {
  std::unique_ptr<lpir::net::ServerCore> core;
  std::unique_ptr<lpir::net::TcpServer> daemon;
};

struct lpir_fetch_result {
  lpir::net::FetchResult result;
};

namespace {

thread_local std::string g_last_error;

lpir_status set_error(lpir_status status, const char* message) {
  g_last_error = message;
  return status;
}

// Runs fn, translating exceptions into status codes.
template <typename F>
lpir_status guarded(F&& fn) {
  try {
    fn();
    return LPIR_OK;
  } catch (const lpir::Error& e) {
    return set_error(static_cast<lpir_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(LPIR_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(LPIR_E_INTERNAL, e.what());
  }
}

#define LPIR_REQUIRE(ptr)                                                 \
  do {                                                                    \
    if ((ptr) == nullptr) return set_error(LPIR_E_NULL_ARGUMENT, #ptr " is NULL"); \
  } while (0)

lpir::GridConfig to_grid(const lpir_grid& g) {
  lpir::GridConfig c;
  c.origin_lat = g.origin_lat;
  c.origin_lon = g.origin_lon;
  c.cell_size_m = g.cell_size_m;
  c.width = g.width;
  c.height = g.height;
  c.channels = g.channels;
  c.first_channel = g.first_channel;
  c.timeslots = g.timeslots;
  return c;
}

lpir_grid from_grid(const lpir::GridConfig& c) {
  return {c.origin_lat, c.origin_lon, c.cell_size_m, c.width,
          c.height,     c.channels,   c.first_channel, c.timeslots};
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

lpir_status emit_stores(std::vector<lpir::StoredDatabase>&& stores, lpir_database** outs) {
  std::vector<std::unique_ptr<lpir_database>> handles;
  for (auto& s : stores) handles.push_back(std::make_unique<lpir_database>(lpir_database{std::move(s)}));
  for (std::size_t i = 0; i < handles.size(); ++i) outs[i] = handles[i].release();
  return LPIR_OK;
}

const lpir::net::FetchedRecord* record_at(const lpir_fetch_result* r, std::size_t i) {
  if (r == nullptr || i >= r->result.records.size()) return nullptr;
  return &r->result.records[i];
}

std::uint64_t to_ns(lpir::net::Clock::duration d) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(d).count());
}

}  // namespace

extern "C" {

const char* lpir_version(void) { return "0.1.0"; }

const char* lpir_status_name(lpir_status status) {
  switch (status) {
    case LPIR_OK: return "ok";
    case LPIR_E_NULL_ARGUMENT: return "null-argument";
    default: break;
  }
  if (status >= LPIR_E_PARAMETER && status <= LPIR_E_INTERNAL) {
    return lpir::error_code_name(static_cast<lpir::ErrorCode>(static_cast<int>(status)));
  }
  return "unknown";
}

const char* lpir_last_error(void) { return g_last_error.c_str(); }

lpir_grid lpir_grid_default(void) { return from_grid(lpir::GridConfig{}); }

lpir_status lpir_db_generate(const lpir_grid* grid, uint64_t rows, size_t record_bytes,
                             uint64_t seed, uint64_t row_multiple, lpir_database** out) {
  LPIR_REQUIRE(out);
  return guarded([&] {
    const auto g = grid ? to_grid(*grid) : lpir::GridConfig::strip(rows);
    auto db = lpir::generate_database(g, record_bytes, seed, row_multiple ? row_multiple : 1);
    *out = new lpir_database{std::move(db)};
  });
}

lpir_status lpir_db_load(const char* path, lpir_database** out) {
  LPIR_REQUIRE(path);
  LPIR_REQUIRE(out);
  return guarded([&] { *out = new lpir_database{lpir::load_database(path)}; });
}

lpir_status lpir_db_store(const lpir_database* db, const char* path) {
  LPIR_REQUIRE(db);
  LPIR_REQUIRE(path);
  return guarded([&] { lpir::store_database(db->db, path); });
}

lpir_status lpir_db_info_get(const lpir_database* db, lpir_db_info* out) {
  LPIR_REQUIRE(db);
  LPIR_REQUIRE(out);
  return guarded([&] {
    const auto& m = db->db.meta;
    lpir_db_info info{};
    info.rows = db->db.matrix.rows();
    info.record_bytes = db->db.matrix.record_bytes();
    info.total_rows = m.total_rows;
    info.padding_rows = m.padding_rows;
    info.seed = m.seed;
    info.kind = static_cast<lpir_store_kind>(m.kind);
    info.tau = m.tau;
    info.alpha = m.alpha;
    info.servers = m.servers;
    info.redundancy = m.redundancy;
    info.first_chunk = m.first_chunk;
    const auto hex = lpir::crypto::to_hex(m.group_digest);
    std::memcpy(info.digest_hex, hex.c_str(), std::min<std::size_t>(hex.size(), 64));
    info.grid = from_grid(m.grid);
    *out = info;
  });
}

lpir_status lpir_db_row(const lpir_database* db, uint64_t beta, uint8_t* buf, size_t len) {
  LPIR_REQUIRE(db);
  LPIR_REQUIRE(buf);
  return guarded([&] {
    const auto row = db->db.matrix.row(beta);
    if (len < row.size()) lpir::fail(lpir::ErrorCode::kParameter, "buffer too small for a record");
    std::memcpy(buf, row.data(), row.size());
  });
}

lpir_status lpir_db_share(const lpir_database* db, size_t servers, int tau, uint64_t seed,
                          lpir_database** outs) {
  LPIR_REQUIRE(db);
  LPIR_REQUIRE(outs);
  lpir_status st = LPIR_OK;
  const auto rc = guarded([&] {
    const auto points = lpir::EvalPointSet::sequential(servers);
    std::unique_ptr<lpir::RandomSource> rng;
    if (seed) {
      rng = std::make_unique<lpir::SeededRandom>(seed);
    } else {
      rng = std::make_unique<lpir::SystemRandom>();
    }
    st = emit_stores(lpir::make_share_stores(db->db, tau, points, *rng), outs);
  });
  return rc != LPIR_OK ? rc : st;
}

lpir_status lpir_db_partition(const lpir_database* db, size_t servers, size_t pi,
                              lpir_database** outs) {
  LPIR_REQUIRE(db);
  LPIR_REQUIRE(outs);
  lpir_status st = LPIR_OK;
  const auto rc = guarded(
      [&] { st = emit_stores(lpir::make_chunk_stores(db->db, servers, pi), outs); });
  return rc != LPIR_OK ? rc : st;
}

void lpir_db_free(lpir_database* db) { delete db; }

lpir_status lpir_server_start(const lpir_database* db, uint16_t server_id, const char* host,
                              uint16_t port, const lpir_fault* fault, lpir_server** out) {
  LPIR_REQUIRE(db);
  LPIR_REQUIRE(out);
  return guarded([&] {
    lpir::net::FaultProfile f;
    if (fault) {
      f.drop_probability = fault->drop_probability;
      f.latency = std::chrono::milliseconds(fault->latency_ms);
      switch (fault->byzantine) {
        case LPIR_BYZ_NONE: f.byzantine = lpir::net::ByzantineMode::kNone; break;
        case LPIR_BYZ_FLIP_BYTES: f.byzantine = lpir::net::ByzantineMode::kFlipBytes; break;
        case LPIR_BYZ_RANDOM_GARBAGE:
          f.byzantine = lpir::net::ByzantineMode::kRandomGarbage;
          break;
        default: lpir::fail(lpir::ErrorCode::kParameter, "unknown byzantine mode");
      }
      f.seed = fault->seed;
    }
    auto s = std::make_unique<lpir_server>();
    s->core = std::make_unique<lpir::net::ServerCore>(db->db, server_id, f);
    s->daemon = std::make_unique<lpir::net::TcpServer>(*s->core, host ? host : "0.0.0.0", port);
    *out = s.release();
  });
}

uint16_t lpir_server_port(const lpir_server* server) {
  return server ? server->daemon->port() : 0;
}

void lpir_server_stop(lpir_server* server) {
  if (server == nullptr) return;
  server->daemon->stop();
  delete server;
}

lpir_status lpir_fetch(const lpir_fetch_request* req, lpir_fetch_result** out) {
  LPIR_REQUIRE(req);
  LPIR_REQUIRE(out);
  LPIR_REQUIRE(req->protocol);
  if (req->server_count > 0) LPIR_REQUIRE(req->servers);
  if (req->key_count > 0) LPIR_REQUIRE(req->keys);
  if (req->row_count > 0) LPIR_REQUIRE(req->rows);
  return guarded([&] {
    if ((req->key_count > 0) == (req->row_count > 0)) {
      lpir::fail(lpir::ErrorCode::kParameter, "give either keys or rows");
    }
    std::vector<std::unique_ptr<lpir::net::TcpEndpoint>> endpoints;
    std::vector<lpir::net::Endpoint*> ptrs;
    for (std::size_t i = 0; i < req->server_count; ++i) {
      if (req->servers[i] == nullptr) lpir::fail(lpir::ErrorCode::kParameter, "NULL server address");
      endpoints.push_back(lpir::net::TcpEndpoint::parse(req->servers[i]));
      ptrs.push_back(endpoints.back().get());
    }
    lpir::net::FetchParams p;
    p.protocol = lpir::wire::parse_protocol(req->protocol);
    p.t = req->t;
    p.tau = req->tau;
    p.k = req->k;
    p.pi = req->pi;
    if (req->timeout_ms) p.timeout = std::chrono::milliseconds(req->timeout_ms);
    std::unique_ptr<lpir::RandomSource> rng;
    if (req->seed) {
      rng = std::make_unique<lpir::SeededRandom>(req->seed);
    } else {
      rng = std::make_unique<lpir::SystemRandom>();
    }
    auto res = std::make_unique<lpir_fetch_result>();
    if (req->key_count > 0) {
      std::vector<lpir::SpectrumKey> keys;
      for (std::size_t i = 0; i < req->key_count; ++i) {
        const auto& k = req->keys[i];
        keys.push_back({k.lat, k.lon, k.channel, k.timeslot});
      }
      res->result = lpir::net::private_fetch(keys, ptrs, p, *rng);
    } else {
      res->result = lpir::net::private_fetch_rows({req->rows, req->row_count}, ptrs, p, *rng);
    }
    *out = res.release();
  });
}

size_t lpir_result_count(const lpir_fetch_result* result) {
  return result ? result->result.records.size() : 0;
}

lpir_status lpir_result_record(const lpir_fetch_result* result, size_t i, const uint8_t** data,
                               size_t* len) {
  LPIR_REQUIRE(data);
  LPIR_REQUIRE(len);
  const auto* rec = record_at(result, i);
  if (rec == nullptr) return set_error(LPIR_E_INDEX, "no such record");
  *data = rec->report.record.data();
  *len = rec->report.record.size();
  return LPIR_OK;
}

uint64_t lpir_result_row(const lpir_fetch_result* result, size_t i) {
  const auto* rec = record_at(result, i);
  return rec ? rec->beta : 0;
}

int lpir_result_checksum_ok(const lpir_fetch_result* result, size_t i) {
  const auto* rec = record_at(result, i);
  return rec && rec->checksum_ok ? 1 : 0;
}

const char* lpir_result_path(const lpir_fetch_result* result, size_t i) {
  const auto* rec = record_at(result, i);
  return rec ? lpir::recovery_path_name(rec->report.path) : "";
}

size_t lpir_result_byzantine(const lpir_fetch_result* result, size_t i, uint16_t* ids,
                             size_t cap) {
  const auto* rec = record_at(result, i);
  if (rec == nullptr) return 0;
  std::size_t n = 0;
  for (auto id : rec->report.byzantine) {
    if (ids && n < cap) ids[n] = id;
    ++n;
  }
  return n;
}

lpir_status lpir_result_transcript(const lpir_fetch_result* result, lpir_transcript* out) {
  LPIR_REQUIRE(result);
  LPIR_REQUIRE(out);
  const auto& t = result->result.transcript;
  *out = {t.payload_bits_up,       t.payload_bits_down,  t.framing_bytes_up,
          t.framing_bytes_down,    to_ns(t.t_query_build), to_ns(t.t_recover),
          to_ns(t.t_total),        t.servers.size()};
  return LPIR_OK;
}

lpir_status lpir_result_server(const lpir_fetch_result* result, size_t j,
                               lpir_server_timing* out) {
  LPIR_REQUIRE(result);
  LPIR_REQUIRE(out);
  const auto& s = result->result.transcript.servers;
  if (j >= s.size()) return set_error(LPIR_E_INDEX, "no such server");
  *out = {s[j].server_id, s[j].responded ? 1 : 0, s[j].compute_ns, s[j].round_trip_ns};
  return LPIR_OK;
}

void lpir_result_free(lpir_fetch_result* result) { delete result; }

lpir_status lpir_record_decode(const uint8_t* data, size_t len, lpir_record* out) {
  LPIR_REQUIRE(data);
  LPIR_REQUIRE(out);
  return guarded([&] {
    const std::span<const std::uint8_t> payload(data, len);
    const auto rec = lpir::decode_record(payload);
    *out = {rec.available ? 1 : 0, rec.max_power_centi_dbm, rec.valid_from, rec.valid_until,
            lpir::record_checksum_ok(payload) ? 1 : 0};
  });
}

lpir_status lpir_bench_run(const char* scenario_json, char** table, char** csv, char** skipped) {
  LPIR_REQUIRE(scenario_json);
  return guarded([&] {
    const auto scenario = lpir::bench::parse_scenario(scenario_json);
    std::vector<std::string> skip;
    const auto rows = lpir::bench::bench_run(scenario, &skip);
    std::string skip_text;
    for (const auto& s : skip) skip_text += s + "\n";
    char* t = table ? copy_string(lpir::bench::report_table(rows)) : nullptr;
    char* c = csv ? copy_string(lpir::bench::report_csv(rows)) : nullptr;
    char* k = skipped ? copy_string(skip_text) : nullptr;
    if (table) *table = t;
    if (csv) *csv = c;
    if (skipped) *skipped = k;
  });
}

void lpir_string_free(char* s) { std::free(s); }

}  // extern "C"
