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

// Operator tool: database generation, sharing, serving, fetching, benchmarks.
// Uses only the C interface of liblpir.

#include <lpir/lpir.h>

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

namespace {

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop = true; }

// Exit code = status, so scripts can tell failures apart.
int report(lpir_status st, const std::string& what) {
  if (st == LPIR_OK) return 0;
  std::fprintf(stderr, "lpir: %s: %s (%s)\n", what.c_str(), lpir_last_error(),
               lpir_status_name(st));
  return static_cast<int>(st);
}

std::string store_path(const std::string& prefix, std::size_t i) {
  return prefix + "." + std::to_string(i) + ".spdb";
}

struct Handles {
  std::vector<lpir_database*> v;
  explicit Handles(std::size_t n) : v(n, nullptr) {}
  ~Handles() {
    for (auto* h : v) lpir_db_free(h);
  }
};

int write_stores(Handles& h, const std::string& prefix) {
  for (std::size_t i = 0; i < h.v.size(); ++i) {
    const auto path = store_path(prefix, i + 1);
    if (int rc = report(lpir_db_store(h.v[i], path.c_str()), "writing " + path)) return rc;
    std::printf("%s\n", path.c_str());
  }
  return 0;
}

const char* kind_name(lpir_store_kind k) {
  switch (k) {
    case LPIR_STORE_PLAIN: return "plain";
    case LPIR_STORE_SHARE: return "share";
    case LPIR_STORE_CHUNK: return "chunk";
  }
  return "?";
}

// Batch file: one request per line, either "lat lon channel slot" or a bare
// 1-based row. Commas count as spaces, '#' starts a comment.
bool read_batch(const std::string& path, std::vector<lpir_key>& keys,
                std::vector<uint64_t>& rows) {
  std::ifstream in(path);
  if (!in) {
    std::fprintf(stderr, "lpir: cannot open %s\n", path.c_str());
    return false;
  }
  std::string line;
  for (int n = 1; std::getline(in, line); ++n) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    for (auto& c : line) {
      if (c == ',') c = ' ';
    }
    std::istringstream ss(line);
    std::vector<std::string> f;
    for (std::string w; ss >> w;) f.push_back(w);
    if (f.empty()) continue;
    try {
      if (f.size() == 1) {
        rows.push_back(std::stoull(f[0]));
      } else if (f.size() == 4) {
        keys.push_back({std::stod(f[0]), std::stod(f[1]),
                        static_cast<uint32_t>(std::stoul(f[2])),
                        static_cast<uint32_t>(std::stoul(f[3]))});
      } else {
        throw std::invalid_argument("field count");
      }
    } catch (const std::exception&) {
      std::fprintf(stderr, "lpir: %s:%d: expected a row or 'lat lon channel slot'\n",
                   path.c_str(), n);
      return false;
    }
  }
  if (!keys.empty() && !rows.empty()) {
    std::fprintf(stderr, "lpir: %s mixes keys and rows\n", path.c_str());
    return false;
  }
  return true;
}

std::string slurp(const std::string& path, bool& ok) {
  std::ifstream in(path);
  ok = static_cast<bool>(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Private spectrum-database retrieval"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lpir_version()));

  // dbgen
  auto* gen = app.add_subcommand("dbgen", "generate a synthetic spectrum database");
  lpir_grid grid = lpir_grid_default();
  uint64_t gen_rows = 0, gen_seed = 1, gen_multiple = 1;
  std::size_t gen_bytes = 560;
  std::string gen_out;
  gen->add_option("--rows", gen_rows, "rows of a single-strip grid (overrides the grid options)");
  gen->add_option("--block-bytes", gen_bytes, "record size b in bytes")->capture_default_str();
  gen->add_option("--seed", gen_seed, "content seed")->capture_default_str();
  gen->add_option("--row-multiple", gen_multiple, "pad the row count to a multiple of this")
      ->capture_default_str();
  gen->add_option("--origin-lat", grid.origin_lat)->capture_default_str();
  gen->add_option("--origin-lon", grid.origin_lon)->capture_default_str();
  gen->add_option("--cell-size-m", grid.cell_size_m)->capture_default_str();
  gen->add_option("--width", grid.width)->capture_default_str();
  gen->add_option("--height", grid.height)->capture_default_str();
  gen->add_option("--channels", grid.channels)->capture_default_str();
  gen->add_option("--first-channel", grid.first_channel)->capture_default_str();
  gen->add_option("--timeslots", grid.timeslots)->capture_default_str();
  gen->add_option("--out", gen_out, "output file")->required();

  // dbshare
  auto* share = app.add_subcommand("dbshare", "split a database into Shamir share stores");
  std::string share_in, share_prefix;
  std::size_t share_servers = 0;
  int share_tau = 1;
  uint64_t share_seed = 0;
  share->add_option("--in", share_in, "plain database file")->required();
  share->add_option("--servers", share_servers, "number of servers l")->required();
  share->add_option("--tau", share_tau, "sharing threshold")->capture_default_str();
  share->add_option("--seed", share_seed, "sharing seed, 0 for system randomness")
      ->capture_default_str();
  share->add_option("--out-prefix", share_prefix, "writes PREFIX.<i>.spdb")->required();

  // dbpart
  auto* part = app.add_subcommand("dbpart", "split a database into RAID chunk stores");
  std::string part_in, part_prefix;
  std::size_t part_servers = 0, part_pi = 2;
  part->add_option("--in", part_in, "plain database file")->required();
  part->add_option("--servers", part_servers, "number of servers l")->required();
  part->add_option("--pi", part_pi, "chunks per server")->capture_default_str();
  part->add_option("--out-prefix", part_prefix, "writes PREFIX.<i>.spdb")->required();

  // info
  auto* info = app.add_subcommand("info", "describe a database or store file");
  std::string info_in;
  info->add_option("file", info_in)->required();

  // serve
  auto* serve = app.add_subcommand("serve", "serve a store until interrupted");
  std::string serve_store, serve_bind = "0.0.0.0", serve_byz = "none";
  uint16_t serve_id = 0, serve_port = 0;
  double drop = 0;
  uint32_t latency_ms = 0;
  uint64_t fault_seed = 0;
  serve->add_option("--store", serve_store, "database or store file")->required();
  serve->add_option("--id", serve_id, "server id, 0 to take it from the store")
      ->capture_default_str();
  serve->add_option("--bind", serve_bind)->capture_default_str();
  serve->add_option("--port", serve_port, "0 picks a free port")->capture_default_str();
  serve->add_option("--fault-drop", drop, "probability of dropping a query")
      ->check(CLI::Range(0.0, 1.0));
  serve->add_option("--fault-byz", serve_byz, "none, flip-bytes or random-garbage")
      ->check(CLI::IsMember({"none", "flip-bytes", "random-garbage"}));
  serve->add_option("--fault-latency-ms", latency_ms, "added delay per answer");
  serve->add_option("--fault-seed", fault_seed, "seed of the fault draws");

  // fetch
  auto* fetch = app.add_subcommand("fetch", "privately fetch records");
  std::string protocol = "gold", batch_file;
  std::vector<std::string> servers;
  double lat = 0, lon = 0;
  uint32_t channel = 0, slot = 0;
  uint64_t row = 0, fetch_seed = 0;
  int t = 1, tau = 0;
  std::size_t k = 0, pi = 0;
  uint32_t timeout_ms = 0;
  bool show_bytes = false;
  fetch->add_option("--protocol", protocol, "chor, gold, batch or raid")
      ->check(CLI::IsMember({"chor", "gold", "batch", "raid"}, CLI::ignore_case))
      ->capture_default_str();
  fetch->add_option("--servers", servers, "host:port, in server order")
      ->required()
      ->delimiter(',');
  auto* o_lat = fetch->add_option("--lat", lat);
  auto* o_lon = fetch->add_option("--lon", lon);
  auto* o_ch = fetch->add_option("--channel", channel);
  auto* o_slot = fetch->add_option("--slot", slot);
  auto* o_row = fetch->add_option("--row", row, "1-based row instead of a key");
  auto* o_batch = fetch->add_option("--batch-file", batch_file, "one key or row per line");
  fetch->add_option("--t", t, "privacy threshold")->capture_default_str();
  fetch->add_option("--k", k, "responses to wait for, 0 for all");
  fetch->add_option("--tau", tau, "threshold of the share stores");
  fetch->add_option("--pi", pi, "chunks per server, 0 as advertised");
  fetch->add_option("--timeout-ms", timeout_ms, "per-fetch deadline, 0 for 30 s");
  fetch->add_option("--seed", fetch_seed, "query randomness seed, 0 for system randomness");
  fetch->add_flag("--show-bytes", show_bytes, "print the record in hex");
  o_lat->needs(o_lon, o_ch, o_slot);
  o_row->excludes(o_lat);
  o_batch->excludes(o_lat)->excludes(o_row);

  // bench
  auto* bench = app.add_subcommand("bench", "run a benchmark scenario");
  std::string scenario_path, csv_path;
  bench->add_option("--scenario", scenario_path, "JSON scenario file")->required();
  bench->add_option("--csv", csv_path, "write the CSV here as well");

  CLI11_PARSE(app, argc, argv);

  if (*gen) {
    lpir_database* db = nullptr;
    const lpir_grid* g = gen_rows ? nullptr : &grid;
    if (int rc = report(lpir_db_generate(g, gen_rows, gen_bytes, gen_seed, gen_multiple, &db),
                        "dbgen")) {
      return rc;
    }
    const int rc = report(lpir_db_store(db, gen_out.c_str()), "writing " + gen_out);
    lpir_db_free(db);
    return rc;
  }

  if (*share || *part) {
    const auto& in = *share ? share_in : part_in;
    lpir_database* db = nullptr;
    if (int rc = report(lpir_db_load(in.c_str(), &db), "loading " + in)) return rc;
    Handles out(*share ? share_servers : part_servers);
    const auto st = *share ? lpir_db_share(db, share_servers, share_tau, share_seed, out.v.data())
                           : lpir_db_partition(db, part_servers, part_pi, out.v.data());
    lpir_db_free(db);
    if (int rc = report(st, *share ? "dbshare" : "dbpart")) return rc;
    return write_stores(out, *share ? share_prefix : part_prefix);
  }

  if (*info) {
    lpir_database* db = nullptr;
    if (int rc = report(lpir_db_load(info_in.c_str(), &db), "loading " + info_in)) return rc;
    lpir_db_info d{};
    const auto st = lpir_db_info_get(db, &d);
    lpir_db_free(db);
    if (int rc = report(st, "info")) return rc;
    std::printf("kind          %s\n", kind_name(d.kind));
    std::printf("rows          %llu (%llu padding, %llu logical)\n",
                static_cast<unsigned long long>(d.rows),
                static_cast<unsigned long long>(d.padding_rows),
                static_cast<unsigned long long>(d.total_rows));
    std::printf("record bytes  %llu\n", static_cast<unsigned long long>(d.record_bytes));
    std::printf("seed          %llu\n", static_cast<unsigned long long>(d.seed));
    std::printf("grid          %ux%u cells of %.1f m at (%.6f, %.6f), channels %u..%u, %u slots\n",
                d.grid.width, d.grid.height, d.grid.cell_size_m, d.grid.origin_lat,
                d.grid.origin_lon, d.grid.first_channel,
                d.grid.first_channel + d.grid.channels - 1, d.grid.timeslots);
    if (d.kind == LPIR_STORE_SHARE) std::printf("tau %u  alpha %u\n", d.tau, d.alpha);
    if (d.kind == LPIR_STORE_CHUNK) {
      std::printf("servers %u  pi %u  first chunk %u\n", d.servers, d.redundancy, d.first_chunk);
    }
    std::printf("group digest  %s\n", d.digest_hex);
    return 0;
  }

  if (*serve) {
    lpir_database* db = nullptr;
    if (int rc = report(lpir_db_load(serve_store.c_str(), &db), "loading " + serve_store)) {
      return rc;
    }
    lpir_fault fault{};
    fault.drop_probability = drop;
    fault.latency_ms = latency_ms;
    fault.byzantine = serve_byz == "flip-bytes"       ? LPIR_BYZ_FLIP_BYTES
                      : serve_byz == "random-garbage" ? LPIR_BYZ_RANDOM_GARBAGE
                                                      : LPIR_BYZ_NONE;
    fault.seed = fault_seed;
    lpir_server* srv = nullptr;
    const auto st = lpir_server_start(db, serve_id, serve_bind.c_str(), serve_port, &fault, &srv);
    lpir_db_free(db);
    if (int rc = report(st, "serve")) return rc;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::printf("listening on %s:%u\n", serve_bind.c_str(), lpir_server_port(srv));
    std::fflush(stdout);
    while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    lpir_server_stop(srv);
    return 0;
  }

  if (*fetch) {
    std::vector<lpir_key> keys;
    std::vector<uint64_t> rows;
    if (*o_batch) {
      if (!read_batch(batch_file, keys, rows)) return LPIR_E_PARAMETER;
    } else if (*o_row) {
      rows.push_back(row);
    } else if (*o_lat) {
      keys.push_back({lat, lon, channel, slot});
    } else {
      std::fprintf(stderr, "lpir: fetch needs --lat/--lon/--channel/--slot, --row or --batch-file\n");
      return LPIR_E_PARAMETER;
    }
    std::vector<const char*> addrs;
    for (const auto& s : servers) addrs.push_back(s.c_str());
    lpir_fetch_request req{};
    req.protocol = protocol.c_str();
    req.servers = addrs.data();
    req.server_count = addrs.size();
    req.t = t;
    req.tau = tau;
    req.k = k;
    req.pi = pi;
    req.timeout_ms = timeout_ms;
    req.seed = fetch_seed;
    req.keys = keys.data();
    req.key_count = keys.size();
    req.rows = rows.data();
    req.row_count = rows.size();
    lpir_fetch_result* res = nullptr;
    if (int rc = report(lpir_fetch(&req, &res), "fetch")) return rc;

    int rc = 0;
    for (std::size_t i = 0; i < lpir_result_count(res); ++i) {
      const uint8_t* data = nullptr;
      std::size_t len = 0;
      lpir_result_record(res, i, &data, &len);
      lpir_record rec{};
      lpir_record_decode(data, len, &rec);
      std::printf("row %llu: available=%d max_power=%.2f dBm valid=[%u, %u] checksum=%s path=%s",
                  static_cast<unsigned long long>(lpir_result_row(res, i)), rec.available,
                  rec.max_power_centi_dbm / 100.0, rec.valid_from, rec.valid_until,
                  lpir_result_checksum_ok(res, i) ? "ok" : "BAD", lpir_result_path(res, i));
      std::vector<uint16_t> byz(lpir_result_byzantine(res, i, nullptr, 0));
      lpir_result_byzantine(res, i, byz.data(), byz.size());
      if (!byz.empty()) {
        std::printf(" byzantine=");
        for (std::size_t j = 0; j < byz.size(); ++j) std::printf("%s%u", j ? "," : "", byz[j]);
      }
      std::printf("\n");
      if (show_bytes) {
        for (std::size_t j = 0; j < len; ++j) std::printf("%02x%s", data[j], (j + 1) % 32 ? "" : "\n");
        if (len % 32) std::printf("\n");
      }
      if (!lpir_result_checksum_ok(res, i)) rc = LPIR_E_CORRECTNESS;
    }
    lpir_transcript tr{};
    lpir_result_transcript(res, &tr);
    std::printf("payload: %llu bits up, %llu bits down; framing: %llu B up, %llu B down\n",
                static_cast<unsigned long long>(tr.payload_bits_up),
                static_cast<unsigned long long>(tr.payload_bits_down),
                static_cast<unsigned long long>(tr.framing_bytes_up),
                static_cast<unsigned long long>(tr.framing_bytes_down));
    std::printf("client: build %.3f ms, recover %.3f ms, total %.3f ms\n",
                tr.t_query_build_ns / 1e6, tr.t_recover_ns / 1e6, tr.t_total_ns / 1e6);
    for (std::size_t j = 0; j < tr.server_count; ++j) {
      lpir_server_timing s{};
      lpir_result_server(res, j, &s);
      if (s.responded) {
        std::printf("server %u: compute %.3f ms, round trip %.3f ms\n", s.server_id,
                    s.compute_ns / 1e6, s.round_trip_ns / 1e6);
      } else {
        std::printf("server %u: no answer used\n", s.server_id);
      }
    }
    lpir_result_free(res);
    return rc;
  }

  if (*bench) {
    bool ok = false;
    const auto json = slurp(scenario_path, ok);
    if (!ok) {
      std::fprintf(stderr, "lpir: cannot open %s\n", scenario_path.c_str());
      return LPIR_E_IO;
    }
    char* table = nullptr;
    char* csv = nullptr;
    char* skipped = nullptr;
    if (int rc = report(lpir_bench_run(json.c_str(), &table, &csv, &skipped), "bench")) return rc;
    std::fputs(table, stdout);
    if (skipped[0] != '\0') std::fprintf(stderr, "skipped:\n%s", skipped);
    int rc = 0;
    if (!csv_path.empty()) {
      std::ofstream out(csv_path);
      out << csv;
      if (!out) {
        std::fprintf(stderr, "lpir: cannot write %s\n", csv_path.c_str());
        rc = LPIR_E_IO;
      }
    }
    lpir_string_free(table);
    lpir_string_free(csv);
    lpir_string_free(skipped);
    return rc;
  }
  return 0;
}
