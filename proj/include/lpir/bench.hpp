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

#include <cstdint>
#include <string>
#include <vector>

#include "lpir/spectrumdb.hpp"
#include "lpir/wire.hpp"

// Benchmark harness: sweeps protocol parameters, runs private fetches through
// the client engine and checks every trial end to end.
//
// Timings depend on the hardware. The harness asserts exact communication and
// record correctness; orderings and scaling are for the caller to judge.
namespace lpir::bench {

enum class Transport { kLoopback, kTcp };

// JSON form (every list optional, defaults shown):
//   {"protocol": "gold", "r": [1024], "b": [560], "l": [6], "t": [2],
//    "k": [0], "tau": [0], "pi": [2], "q": [1], "byzantine": [0],
//    "trials": 30, "seed": 1, "transport": "loopback",
//    "strassen_cutoff": 64, "output": "", "baseline": false}
// k is the number of responding servers; 0 means all l. The last l - k
// servers are configured to drop every query. The first `byzantine` servers
// corrupt their answers (flip-bytes). b is in bytes.
struct Scenario {
  wire::Protocol protocol = wire::Protocol::kChor;
  std::vector<std::uint64_t> r{1024};
  std::vector<std::size_t> b{kDefaultRecordBytes};
  std::vector<std::size_t> l{6};
  std::vector<int> t{2};
  std::vector<std::size_t> k{0};
  std::vector<int> tau{0};
  std::vector<std::size_t> pi{2};
  std::vector<std::size_t> q{1};
  std::vector<std::size_t> byzantine{0};
  std::size_t trials = 30;
  std::uint64_t seed = 1;
  Transport transport = Transport::kLoopback;
  std::size_t strassen_cutoff = 64;
  std::string output;  // CSV path, empty for none
  bool baseline = false;  // append a trivial-download row per (r, b)
};

Scenario parse_scenario(const std::string& json);
Scenario load_scenario(const std::string& path);

struct Row {
  std::string protocol;
  std::uint64_t r = 0;
  std::size_t b = 0;  // bytes
  std::size_t l = 0;
  int t = 0;
  std::size_t k = 0;
  int tau = 0;
  std::size_t pi = 0;
  std::size_t q = 0;
  std::size_t byzantine = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::size_t byzantine_detected = 0;  // GOLD/BATCH trials naming exactly the faulty set; 0 otherwise
  std::uint64_t comm_measured_bits = 0;
  std::uint64_t comm_predicted_bits = 0;
  std::uint64_t t_db_ns = 0;  // medians over trials; t_db is the slowest server
  std::uint64_t t_su_ns = 0;  // query build + recovery
  std::uint64_t t_build_ns = 0;
  std::uint64_t t_recover_ns = 0;
  std::uint64_t t_total_ns = 0;
  std::string privacy;
};

// Communication formulas, in bits. b is in bytes, kappa = 128.
std::uint64_t predicted_comm_bits(wire::Protocol protocol, std::uint64_t r, std::size_t b,
                                  std::size_t l, std::size_t k, std::size_t q = 1);
const char* privacy_label(wire::Protocol protocol);

// Runs every valid parameter tuple. Invalid tuples are skipped and their
// reason appended to `skipped`. A wrong record, a wrong byzantine report or a
// payload count off the formula throws Error(kCorrectness) naming the trial
// seed. Writes the CSV when scenario.output is set.
std::vector<Row> bench_run(const Scenario& scenario, std::vector<std::string>* skipped = nullptr);

// Retrieval by downloading the whole database: n bits, perfect privacy.
Row bench_trivial_baseline(const StoredDatabase& db, const Scenario& scenario);

// Fixed-width table with a footer, and CSV with the columns of csv_header().
std::string report_table(const std::vector<Row>& rows);
std::string csv_header();
std::string report_csv(const std::vector<Row>& rows);
std::vector<Row> parse_csv(const std::string& csv);

}  // namespace lpir::bench
