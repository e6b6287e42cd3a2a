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

/* C interface to the lpir private retrieval library.
 *
 * Objects are opaque handles created and released through this API. Every
 * fallible call returns an lpir_status; on failure lpir_last_error() holds a
 * message for the calling thread until its next failing call.
 */
#ifndef LPIR_LPIR_H_
#define LPIR_LPIR_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LPIR_API __declspec(dllexport)
#else
#define LPIR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lpir_status {
  LPIR_OK = 0,
  LPIR_E_PARAMETER = 1,
  LPIR_E_DOMAIN = 2,
  LPIR_E_IO = 3,
  LPIR_E_FORMAT = 4,
  LPIR_E_DIGEST = 5,
  LPIR_E_TRUNCATED = 6,
  LPIR_E_VERSION = 7,
  LPIR_E_COVERAGE = 8,
  LPIR_E_INDEX = 9,
  LPIR_E_PROTOCOL = 10,
  LPIR_E_INCOMPLETE_RESPONSE = 11,
  LPIR_E_INSUFFICIENT_SHARES = 12,
  LPIR_E_BYZANTINE_OVERLOAD = 13,
  LPIR_E_DECODE_FAILURE = 14,
  LPIR_E_ROBUSTNESS_FAILURE = 15,
  LPIR_E_NETWORK = 16,
  LPIR_E_CORRECTNESS = 17,
  LPIR_E_INTERNAL = 18,
  LPIR_E_NULL_ARGUMENT = 19
} lpir_status;

typedef struct lpir_database lpir_database;
typedef struct lpir_server lpir_server;
typedef struct lpir_fetch_result lpir_fetch_result;

typedef struct lpir_grid {
  double origin_lat;
  double origin_lon;
  double cell_size_m;
  uint32_t width;
  uint32_t height;
  uint32_t channels;
  uint32_t first_channel;
  uint32_t timeslots;
} lpir_grid;

typedef enum lpir_store_kind {
  LPIR_STORE_PLAIN = 0,
  LPIR_STORE_SHARE = 1,
  LPIR_STORE_CHUNK = 2
} lpir_store_kind;

typedef struct lpir_db_info {
  uint64_t rows;
  uint64_t record_bytes;
  uint64_t total_rows;
  uint64_t padding_rows;
  uint64_t seed;
  lpir_store_kind kind;
  uint8_t tau;
  uint8_t alpha;
  uint8_t servers;
  uint8_t redundancy;
  uint16_t first_chunk;
  char digest_hex[65];
  lpir_grid grid;
} lpir_db_info;

typedef struct lpir_key {
  double lat;
  double lon;
  uint32_t channel;
  uint32_t timeslot;
} lpir_key;

typedef enum lpir_byzantine_mode {
  LPIR_BYZ_NONE = 0,
  LPIR_BYZ_FLIP_BYTES = 1,
  LPIR_BYZ_RANDOM_GARBAGE = 2
} lpir_byzantine_mode;

typedef struct lpir_fault {
  double drop_probability;
  uint32_t latency_ms;
  lpir_byzantine_mode byzantine;
  uint64_t seed;
} lpir_fault;

typedef struct lpir_fetch_request {
  const char* protocol;           /* "chor", "gold", "batch" or "raid" */
  const char* const* servers;     /* "host:port", in server order */
  size_t server_count;
  int t;
  int tau;
  size_t k;                       /* responses to wait for, 0 = all */
  size_t pi;                      /* 0 = as advertised */
  uint32_t timeout_ms;            /* 0 = 30 s */
  uint64_t seed;                  /* 0 = operating-system randomness */
  const lpir_key* keys;           /* either keys ... */
  size_t key_count;
  const uint64_t* rows;           /* ... or 1-based rows */
  size_t row_count;
} lpir_fetch_request;

typedef struct lpir_transcript {
  uint64_t payload_bits_up;
  uint64_t payload_bits_down;
  uint64_t framing_bytes_up;
  uint64_t framing_bytes_down;
  uint64_t t_query_build_ns;
  uint64_t t_recover_ns;
  uint64_t t_total_ns;
  size_t server_count;
} lpir_transcript;

typedef struct lpir_server_timing {
  uint16_t server_id;
  int responded;
  uint64_t compute_ns;
  uint64_t round_trip_ns;
} lpir_server_timing;

typedef struct lpir_record {
  int available;
  int16_t max_power_centi_dbm;
  uint32_t valid_from;
  uint32_t valid_until;
  int checksum_ok;
} lpir_record;

LPIR_API const char* lpir_version(void);
LPIR_API const char* lpir_status_name(lpir_status status);
LPIR_API const char* lpir_last_error(void);

/* The grid used when the operator gives none. */
LPIR_API lpir_grid lpir_grid_default(void);

/* Databases. A NULL grid generates a single strip of `rows` keys. */
LPIR_API lpir_status lpir_db_generate(const lpir_grid* grid, uint64_t rows, size_t record_bytes,
                                      uint64_t seed, uint64_t row_multiple, lpir_database** out);
LPIR_API lpir_status lpir_db_load(const char* path, lpir_database** out);
LPIR_API lpir_status lpir_db_store(const lpir_database* db, const char* path);
LPIR_API lpir_status lpir_db_info_get(const lpir_database* db, lpir_db_info* out);
/* Copies row `beta` (1-based) into buf, which must hold record_bytes. */
LPIR_API lpir_status lpir_db_row(const lpir_database* db, uint64_t beta, uint8_t* buf,
                                 size_t len);
/* Fills outs[0..servers-1] with new handles. seed 0 uses system randomness. */
LPIR_API lpir_status lpir_db_share(const lpir_database* db, size_t servers, int tau,
                                   uint64_t seed, lpir_database** outs);
LPIR_API lpir_status lpir_db_partition(const lpir_database* db, size_t servers, size_t pi,
                                       lpir_database** outs);
LPIR_API void lpir_db_free(lpir_database* db);

/* Servers. The database is copied; port 0 picks an ephemeral port. */
LPIR_API lpir_status lpir_server_start(const lpir_database* db, uint16_t server_id,
                                       const char* host, uint16_t port, const lpir_fault* fault,
                                       lpir_server** out);
LPIR_API uint16_t lpir_server_port(const lpir_server* server);
LPIR_API void lpir_server_stop(lpir_server* server);

/* Client. */
LPIR_API lpir_status lpir_fetch(const lpir_fetch_request* request, lpir_fetch_result** out);
LPIR_API size_t lpir_result_count(const lpir_fetch_result* result);
LPIR_API lpir_status lpir_result_record(const lpir_fetch_result* result, size_t i,
                                        const uint8_t** data, size_t* len);
LPIR_API uint64_t lpir_result_row(const lpir_fetch_result* result, size_t i);
LPIR_API int lpir_result_checksum_ok(const lpir_fetch_result* result, size_t i);
/* "easy" or "hard". */
LPIR_API const char* lpir_result_path(const lpir_fetch_result* result, size_t i);
/* Writes up to cap ids, returns how many servers were blamed. */
LPIR_API size_t lpir_result_byzantine(const lpir_fetch_result* result, size_t i, uint16_t* ids,
                                      size_t cap);
LPIR_API lpir_status lpir_result_transcript(const lpir_fetch_result* result,
                                            lpir_transcript* out);
LPIR_API lpir_status lpir_result_server(const lpir_fetch_result* result, size_t j,
                                        lpir_server_timing* out);
LPIR_API void lpir_result_free(lpir_fetch_result* result);

LPIR_API lpir_status lpir_record_decode(const uint8_t* data, size_t len, lpir_record* out);

/* Benchmarks. Outputs are NUL-terminated strings freed with lpir_string_free;
 * any output pointer may be NULL. */
LPIR_API lpir_status lpir_bench_run(const char* scenario_json, char** table, char** csv,
                                    char** skipped);
LPIR_API void lpir_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* LPIR_LPIR_H_ */
