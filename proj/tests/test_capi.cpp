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

// Exercises the shared library through its C header only.
#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "lpir/lpir.h"

namespace {

struct DbDeleter {
  void operator()(lpir_database* db) const { lpir_db_free(db); }
};
using Db = std::unique_ptr<lpir_database, DbDeleter>;

Db generate(uint64_t rows, size_t bytes, uint64_t seed) {
  lpir_database* db = nullptr;
  EXPECT_EQ(lpir_db_generate(nullptr, rows, bytes, seed, 1, &db), LPIR_OK) << lpir_last_error();
  return Db(db);
}

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STRNE(lpir_version(), "");
  EXPECT_STREQ(lpir_status_name(LPIR_OK), "ok");
  EXPECT_STREQ(lpir_status_name(LPIR_E_DIGEST), "digest");
  EXPECT_STREQ(lpir_status_name(LPIR_E_INCOMPLETE_RESPONSE), "incomplete-response");
}

TEST(CApi, NullArguments) {
  lpir_database* db = nullptr;
  EXPECT_EQ(lpir_db_generate(nullptr, 10, 32, 1, 1, nullptr), LPIR_E_NULL_ARGUMENT);
  EXPECT_EQ(lpir_db_load(nullptr, &db), LPIR_E_NULL_ARGUMENT);
  EXPECT_EQ(lpir_db_info_get(nullptr, nullptr), LPIR_E_NULL_ARGUMENT);
  EXPECT_EQ(lpir_fetch(nullptr, nullptr), LPIR_E_NULL_ARGUMENT);
  EXPECT_EQ(lpir_record_decode(nullptr, 0, nullptr), LPIR_E_NULL_ARGUMENT);
  EXPECT_NE(std::string(lpir_last_error()), "");
  lpir_db_free(nullptr);
  lpir_result_free(nullptr);
  lpir_string_free(nullptr);
  lpir_server_stop(nullptr);
}

TEST(CApi, DatabaseLifecycle) {
  const auto g = lpir_grid_default();
  EXPECT_EQ(g.width, 16u);
  lpir_database* raw = nullptr;
  ASSERT_EQ(lpir_db_generate(&g, 0, 64, 3, 1, &raw), LPIR_OK);
  Db db(raw);
  lpir_db_info info{};
  ASSERT_EQ(lpir_db_info_get(db.get(), &info), LPIR_OK);
  EXPECT_EQ(info.rows, 16u * 16 * 4 * 4);
  EXPECT_EQ(info.record_bytes, 64u);
  EXPECT_EQ(info.kind, LPIR_STORE_PLAIN);
  EXPECT_EQ(std::string(info.digest_hex).size(), 64u);

  std::vector<uint8_t> row(64);
  ASSERT_EQ(lpir_db_row(db.get(), 5, row.data(), row.size()), LPIR_OK);
  lpir_record rec{};
  ASSERT_EQ(lpir_record_decode(row.data(), row.size(), &rec), LPIR_OK);
  EXPECT_EQ(rec.checksum_ok, 1);
  EXPECT_EQ(lpir_db_row(db.get(), 0, row.data(), row.size()), LPIR_E_INDEX);
  EXPECT_EQ(lpir_db_row(db.get(), 1, row.data(), 10), LPIR_E_PARAMETER);

  const auto path = std::filesystem::temp_directory_path() / "lpir_capi_test.spdb";
  ASSERT_EQ(lpir_db_store(db.get(), path.c_str()), LPIR_OK);
  lpir_database* back = nullptr;
  ASSERT_EQ(lpir_db_load(path.c_str(), &back), LPIR_OK);
  lpir_db_info info2{};
  lpir_db_info_get(back, &info2);
  EXPECT_STREQ(info2.digest_hex, info.digest_hex);
  lpir_db_free(back);
  std::filesystem::remove(path);
  EXPECT_EQ(lpir_db_load("/nonexistent/x.spdb", &back), LPIR_E_IO);
}

struct Servers {
  std::vector<lpir_server*> handles;
  std::vector<std::string> addresses;
  std::vector<const char*> ptrs;
  ~Servers() {
    for (auto* s : handles) lpir_server_stop(s);
  }
  void start(const lpir_database* db, uint16_t id, const lpir_fault* fault = nullptr) {
    lpir_server* s = nullptr;
    ASSERT_EQ(lpir_server_start(db, id, "127.0.0.1", 0, fault, &s), LPIR_OK) << lpir_last_error();
    handles.push_back(s);
    addresses.push_back("127.0.0.1:" + std::to_string(lpir_server_port(s)));
  }
  const char* const* list() {
    ptrs.clear();
    for (const auto& a : addresses) ptrs.push_back(a.c_str());
    return ptrs.data();
  }
};

TEST(CApi, FetchOverTcp) {
  const auto db = generate(200, 64, 4);
  Servers servers;
  for (uint16_t id = 1; id <= 4; ++id) servers.start(db.get(), id);

  lpir_fetch_request req{};
  req.protocol = "gold";
  req.servers = servers.list();
  req.server_count = 4;
  req.t = 1;
  req.seed = 7;
  const uint64_t rows[] = {17};
  req.rows = rows;
  req.row_count = 1;
  lpir_fetch_result* res = nullptr;
  ASSERT_EQ(lpir_fetch(&req, &res), LPIR_OK) << lpir_last_error();
  ASSERT_EQ(lpir_result_count(res), 1u);
  EXPECT_EQ(lpir_result_row(res, 0), 17u);
  EXPECT_EQ(lpir_result_checksum_ok(res, 0), 1);
  EXPECT_STREQ(lpir_result_path(res, 0), "easy");
  const uint8_t* data = nullptr;
  size_t len = 0;
  ASSERT_EQ(lpir_result_record(res, 0, &data, &len), LPIR_OK);
  std::vector<uint8_t> want(64);
  lpir_db_row(db.get(), 17, want.data(), want.size());
  EXPECT_EQ(std::vector<uint8_t>(data, data + len), want);
  lpir_transcript tr{};
  ASSERT_EQ(lpir_result_transcript(res, &tr), LPIR_OK);
  EXPECT_EQ(tr.payload_bits_up + tr.payload_bits_down, 200u * 8 * 4 + 4 * 64 * 8);
  EXPECT_EQ(tr.server_count, 4u);
  lpir_server_timing st{};
  EXPECT_EQ(lpir_result_server(res, 0, &st), LPIR_OK);
  EXPECT_EQ(lpir_result_server(res, 9, &st), LPIR_E_INDEX);
  lpir_result_free(res);

  // Both keys and rows: ambiguous.
  const lpir_key key{44.5646, -123.2620, 21, 0};
  req.keys = &key;
  req.key_count = 1;
  EXPECT_EQ(lpir_fetch(&req, &res), LPIR_E_PARAMETER);
  req.keys = nullptr;
  req.key_count = 0;
  req.protocol = "telepathy";
  EXPECT_EQ(lpir_fetch(&req, &res), LPIR_E_PARAMETER);
}

TEST(CApi, ChorWithASilentServerIsIncomplete) {
  const auto db = generate(64, 32, 5);
  Servers servers;
  const lpir_fault drop{1.0, 0, LPIR_BYZ_NONE, 1};
  servers.start(db.get(), 1);
  servers.start(db.get(), 2, &drop);
  lpir_fetch_request req{};
  req.protocol = "chor";
  req.servers = servers.list();
  req.server_count = 2;
  req.seed = 1;
  const uint64_t rows[] = {3};
  req.rows = rows;
  req.row_count = 1;
  lpir_fetch_result* res = nullptr;
  EXPECT_EQ(lpir_fetch(&req, &res), LPIR_E_INCOMPLETE_RESPONSE);
  EXPECT_EQ(res, nullptr);
}

TEST(CApi, ShareAndPartition) {
  const auto db = generate(60, 32, 6);
  lpir_database* shares[3] = {};
  ASSERT_EQ(lpir_db_share(db.get(), 3, 1, 9, shares), LPIR_OK);
  lpir_db_info info{};
  lpir_db_info_get(shares[1], &info);
  EXPECT_EQ(info.kind, LPIR_STORE_SHARE);
  EXPECT_EQ(info.alpha, 2);
  EXPECT_EQ(info.tau, 1);
  for (auto* s : shares) lpir_db_free(s);

  lpir_database* chunks[3] = {};
  ASSERT_EQ(lpir_db_partition(db.get(), 3, 2, chunks), LPIR_OK);
  lpir_db_info_get(chunks[2], &info);
  EXPECT_EQ(info.kind, LPIR_STORE_CHUNK);
  EXPECT_EQ(info.rows, 40u);
  EXPECT_EQ(info.total_rows, 60u);
  EXPECT_EQ(info.first_chunk, 3);
  for (auto* c : chunks) lpir_db_free(c);
  EXPECT_EQ(lpir_db_partition(db.get(), 3, 1, chunks), LPIR_E_PARAMETER);
}

TEST(CApi, BenchRun) {
  char* table = nullptr;
  char* csv = nullptr;
  char* skipped = nullptr;
  ASSERT_EQ(lpir_bench_run(R"({"protocol": "chor", "r": [64], "b": [32], "l": [3, 1], "trials": 2})",
                           &table, &csv, &skipped),
            LPIR_OK)
      << lpir_last_error();
  EXPECT_NE(std::string(table).find("chor"), std::string::npos);
  EXPECT_EQ(std::string(csv).rfind("protocol,r,b_bytes", 0), 0u);
  EXPECT_NE(std::string(skipped).find("l=1"), std::string::npos);
  lpir_string_free(table);
  lpir_string_free(csv);
  lpir_string_free(skipped);
  EXPECT_EQ(lpir_bench_run("{", nullptr, nullptr, nullptr), LPIR_E_PARAMETER);
}

}  // namespace
