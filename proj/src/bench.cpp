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

#include "lpir/bench.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <memory>
#include <nlohmann/json.hpp>
#include <sstream>

#include "lpir/client.hpp"
#include "lpir/errors.hpp"
#include "lpir/random.hpp"
#include "lpir/server.hpp"
#include "lpir/stores.hpp"

namespace lpir::bench {
namespace {

using wire::Protocol;
using Json = nlohmann::json;

constexpr std::uint64_t kKappaBits = 128;

template <typename T>
void read_list(const Json& j, const char* key, std::vector<T>& out) {
  if (!j.contains(key)) return;
  const auto& v = j.at(key);
  out.clear();
  if (v.is_array()) {
    for (const auto& x : v) out.push_back(x.get<T>());
  } else {
    out.push_back(v.get<T>());
  }
  if (out.empty()) fail(ErrorCode::kParameter, std::string("empty sweep list '") + key + "'");
}

std::uint64_t median(std::vector<std::uint64_t> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

std::uint64_t ns(net::Clock::duration d) {
  return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(d).count());
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t draw_row(RandomSource& rng, std::uint64_t r) {
  std::uint64_t x = 0;
  rng.fill({reinterpret_cast<std::uint8_t*>(&x), sizeof x});
  return x % r + 1;
}

struct Tuple {
  std::uint64_t r;
  std::size_t b, l;
  int t;
  std::size_t k;
  int tau;
  std::size_t pi, q, byzantine;
};

// Servers of one tuple, loopback or TCP.
struct Deployment {
  std::vector<std::unique_ptr<net::ServerCore>> cores;
  std::vector<std::unique_ptr<net::TcpServer>> daemons;
  std::vector<std::unique_ptr<net::Endpoint>> endpoints;
  std::vector<net::Endpoint*> ptrs;
};

Deployment deploy(const StoredDatabase& plain, const Tuple& p, Protocol protocol,
                  const Scenario& s) {
  std::vector<StoredDatabase> stores;
  if (protocol == Protocol::kRaid) {
    stores = make_chunk_stores(plain, p.l, p.pi);
  } else if (p.tau > 0) {
    SeededRandom rng(mix(s.seed ^ 0x7A75ULL));
    stores = make_share_stores(plain, p.tau, EvalPointSet::sequential(p.l), rng);
  } else {
    stores.assign(p.l, plain);
  }
  const std::size_t responders = p.k ? p.k : p.l;
  Deployment d;
  for (std::size_t i = 0; i < p.l; ++i) {
    net::FaultProfile fault;
    fault.seed = mix(s.seed + 101 * (i + 1));
    if (i >= responders) fault.drop_probability = 1.0;
    if (i < p.byzantine) fault.byzantine = net::ByzantineMode::kFlipBytes;
    d.cores.push_back(std::make_unique<net::ServerCore>(
        std::move(stores[i]), static_cast<std::uint16_t>(i + 1), fault, s.strassen_cutoff));
    if (s.transport == Transport::kTcp) {
      d.daemons.push_back(std::make_unique<net::TcpServer>(*d.cores.back(), "127.0.0.1", 0));
      d.endpoints.push_back(std::make_unique<net::TcpEndpoint>("127.0.0.1", d.daemons.back()->port()));
    } else {
      d.endpoints.push_back(std::make_unique<net::LoopbackEndpoint>(*d.cores.back()));
    }
    d.ptrs.push_back(d.endpoints.back().get());
  }
  return d;
}

// Empty when valid, otherwise the reason to skip.
std::string check_tuple(Protocol protocol, const Tuple& p) {
  if (p.l < 1 || p.l > 255) return "l must lie in 1..255";
  if (p.b < kMinRecordBytes) return "records need at least 16 bytes";
  if (p.r == 0) return "r must be positive";
  const std::size_t k = p.k ? p.k : p.l;
  if (k > p.l) return "k exceeds l";
  switch (protocol) {
    case Protocol::kChor:
    case Protocol::kRaid:
      if (k != p.l) return "needs every server to respond";
      if (p.byzantine) return "cannot tolerate byzantine servers";
      if (p.l < 2) return "needs l >= 2";
      if (protocol == Protocol::kRaid && (p.pi < 2 || p.pi > p.l)) return "needs 2 <= pi <= l";
      break;
    case Protocol::kGold:
    case Protocol::kBatch: {
      const int deg = p.t + p.tau;
      if (p.t <= 0 || p.tau < 0 || deg >= static_cast<int>(k)) return "needs 0 < t <= t+tau < k";
      if (p.byzantine > 0 && static_cast<int>(p.byzantine) >
                                 gf256::max_correctable(static_cast<int>(k), deg)) {
        return "byzantine count exceeds the unique decoding radius";
      }
      if (p.byzantine > k) return "more byzantine servers than responders";
      if (protocol == Protocol::kBatch && p.q == 0) return "q must be positive";
      break;
    }
    case Protocol::kNone:
      return "no protocol";
  }
  return {};
}

std::string describe(Protocol protocol, const Tuple& p) {
  return fmt::format("{} r={} b={} l={} t={} k={} tau={} pi={} q={} byzantine={}",
                     wire::protocol_name(protocol), p.r, p.b, p.l, p.t, p.k, p.tau, p.pi, p.q,
                     p.byzantine);
}

Row run_tuple(const Scenario& s, const Tuple& p, std::size_t tuple_index) {
  const auto protocol = s.protocol;
  const auto grid = GridConfig::strip(p.r);
  const auto plain =
      generate_database(grid, p.b, s.seed, protocol == Protocol::kRaid ? p.l : 1);
  auto d = deploy(plain, p, protocol, s);

  net::FetchParams fp;
  fp.protocol = protocol;
  fp.t = p.t;
  fp.tau = p.tau;
  fp.k = p.k ? p.k : p.l;
  fp.pi = p.pi;

  const std::uint64_t r = plain.matrix.rows();
  Row row;
  row.protocol = wire::protocol_name(protocol);
  row.r = r;
  row.b = p.b;
  row.l = p.l;
  row.t = p.t;
  row.k = fp.k;
  row.tau = p.tau;
  row.pi = p.pi;
  row.q = protocol == Protocol::kBatch ? p.q : 1;
  row.byzantine = p.byzantine;
  row.trials = s.trials;
  row.privacy = privacy_label(protocol);
  row.comm_predicted_bits = predicted_comm_bits(protocol, r, p.b, p.l, fp.k, row.q);

  std::set<std::uint16_t> faulty;
  for (std::size_t i = 0; i < p.byzantine; ++i) faulty.insert(static_cast<std::uint16_t>(i + 1));

  std::vector<std::uint64_t> t_db, t_su, t_build, t_recover, t_total;
  for (std::size_t trial = 0; trial < s.trials; ++trial) {
    const std::uint64_t trial_seed = mix(s.seed ^ mix(tuple_index * 1'000'003ULL + trial));
    const auto where = [&] {
      return fmt::format("{} trial {} seed {:#018x}", describe(protocol, p), trial, trial_seed);
    };
    SeededRandom rng(trial_seed);
    std::vector<std::uint64_t> betas(row.q);
    for (auto& b : betas) b = draw_row(rng, r);

    net::FetchResult res;
    try {
      res = net::private_fetch_rows(betas, d.ptrs, fp, rng);
    } catch (const Error& e) {
      fail(ErrorCode::kCorrectness, where() + ": " + e.what());
    }
    const auto& tr = res.transcript;
    const auto measured = tr.payload_bits_up + tr.payload_bits_down;
    if (measured != row.comm_predicted_bits) {
      fail(ErrorCode::kCorrectness, where() + fmt::format(": payload {} bits, formula {} bits",
                                                          measured, row.comm_predicted_bits));
    }
    row.comm_measured_bits = measured;
    bool ok = res.records.size() == betas.size();
    for (std::size_t j = 0; ok && j < res.records.size(); ++j) {
      const auto& rec = res.records[j];
      const auto expect = plain.matrix.row(betas[j]);
      ok = rec.checksum_ok && rec.beta == betas[j] &&
           std::equal(expect.begin(), expect.end(), rec.report.record.begin(),
                      rec.report.record.end());
    }
    if (!ok) fail(ErrorCode::kCorrectness, where() + ": wrong record");
    if (protocol == Protocol::kGold || protocol == Protocol::kBatch) {
      bool named = true;
      for (const auto& rec : res.records) named = named && rec.report.byzantine == faulty;
      if (!named) fail(ErrorCode::kCorrectness, where() + ": wrong byzantine report");
      ++row.byzantine_detected;
    }
    ++row.successes;

    std::uint64_t slowest = 0;
    for (const auto& st : tr.servers) {
      if (st.responded) slowest = std::max(slowest, st.compute_ns);
    }
    t_db.push_back(slowest);
    t_build.push_back(ns(tr.t_query_build));
    t_recover.push_back(ns(tr.t_recover));
    t_su.push_back(ns(tr.t_query_build + tr.t_recover));
    t_total.push_back(ns(tr.t_total));
  }
  row.t_db_ns = median(t_db);
  row.t_su_ns = median(t_su);
  row.t_build_ns = median(t_build);
  row.t_recover_ns = median(t_recover);
  row.t_total_ns = median(t_total);
  return row;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    fail(ErrorCode::kParameter, std::string("scenario is not valid JSON: ") + e.what());
  }
  Scenario s;
  try {
    if (!j.contains("protocol")) fail(ErrorCode::kParameter, "scenario needs a protocol");
    s.protocol = wire::parse_protocol(j.at("protocol").get<std::string>());
    read_list(j, "r", s.r);
    read_list(j, "b", s.b);
    read_list(j, "l", s.l);
    read_list(j, "t", s.t);
    read_list(j, "k", s.k);
    read_list(j, "tau", s.tau);
    read_list(j, "pi", s.pi);
    read_list(j, "q", s.q);
    read_list(j, "byzantine", s.byzantine);
    s.trials = j.value("trials", s.trials);
    s.seed = j.value("seed", s.seed);
    s.strassen_cutoff = j.value("strassen_cutoff", s.strassen_cutoff);
    s.output = j.value("output", s.output);
    s.baseline = j.value("baseline", s.baseline);
    const auto transport = j.value("transport", std::string("loopback"));
    if (transport == "loopback") {
      s.transport = Transport::kLoopback;
    } else if (transport == "tcp") {
      s.transport = Transport::kTcp;
    } else {
      fail(ErrorCode::kParameter, "transport must be loopback or tcp");
    }
  } catch (const Json::exception& e) {
    fail(ErrorCode::kParameter, std::string("bad scenario field: ") + e.what());
  }
  if (s.trials == 0) fail(ErrorCode::kParameter, "trials must be positive");
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open scenario " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::uint64_t predicted_comm_bits(Protocol protocol, std::uint64_t r, std::size_t b,
                                  std::size_t l, std::size_t k, std::size_t q) {
  const std::uint64_t bits = std::uint64_t{b} * 8;
  const std::uint64_t w = DatabaseMatrix::kWordBits;
  switch (protocol) {
    case Protocol::kChor: return (r + bits) * l;
    case Protocol::kGold: return r * w * l + k * bits;
    case Protocol::kBatch: return q * (r * w * l + k * bits);
    case Protocol::kRaid: return r + l * kKappaBits + l * bits;
    case Protocol::kNone: break;
  }
  return 0;
}

const char* privacy_label(Protocol protocol) {
  switch (protocol) {
    case Protocol::kChor: return "(ℓ − 1)-private";
    case Protocol::kGold:
    case Protocol::kBatch: return "t-private";
    case Protocol::kRaid: return "(π − 1)-private";
    case Protocol::kNone: break;
  }
  return "perfect";
}

std::vector<Row> bench_run(const Scenario& s, std::vector<std::string>* skipped) {
  const bool raid = s.protocol == Protocol::kRaid;
  const bool gold = s.protocol == Protocol::kGold || s.protocol == Protocol::kBatch;
  // Parameters a protocol ignores collapse to one value. k and byzantine are
  // kept: CHOR and RAID reject them through check_tuple.
  const std::vector<int> ts = gold ? s.t : std::vector<int>{0};
  const std::vector<int> taus = gold ? s.tau : std::vector<int>{0};
  const std::vector<std::size_t> pis = raid ? s.pi : std::vector<std::size_t>{0};
  const std::vector<std::size_t> qs =
      s.protocol == Protocol::kBatch ? s.q : std::vector<std::size_t>{1};

  std::vector<Row> rows;
  std::size_t index = 0;
  for (auto r : s.r)
    for (auto b : s.b)
      for (auto l : s.l)
        for (auto t : ts)
          for (auto k : s.k)
            for (auto tau : taus)
              for (auto pi : pis)
                for (auto q : qs)
                  for (auto z : s.byzantine) {
                    const Tuple p{r, b, l, t, k, tau, pi, q, z};
                    const auto why = check_tuple(s.protocol, p);
                    if (!why.empty()) {
                      if (skipped) skipped->push_back(describe(s.protocol, p) + ": " + why);
                      continue;
                    }
                    rows.push_back(run_tuple(s, p, index++));
                  }
  if (s.baseline) {
    for (auto r : s.r)
      for (auto b : s.b) {
        if (r == 0 || b < kMinRecordBytes) continue;
        rows.push_back(bench_trivial_baseline(generate_database(GridConfig::strip(r), b, s.seed), s));
      }
  }
  if (!s.output.empty()) {
    std::ofstream out(s.output);
    if (!out) fail(ErrorCode::kIo, "cannot write " + s.output);
    out << report_csv(rows);
  }
  return rows;
}

Row bench_trivial_baseline(const StoredDatabase& db, const Scenario& s) {
  Row row;
  row.protocol = "trivial";
  row.r = db.matrix.rows();
  row.b = db.matrix.record_bytes();
  row.l = 1;
  row.q = 1;
  row.trials = s.trials;
  row.privacy = "perfect";
  row.comm_predicted_bits = db.matrix.bits();
  std::vector<std::uint64_t> t_total;
  SeededRandom rng(s.seed);
  for (std::size_t trial = 0; trial < s.trials; ++trial) {
    const auto beta = draw_row(rng, row.r);
    const auto start = net::Clock::now();
    const std::vector<std::uint8_t> copy(db.matrix.data().begin(), db.matrix.data().end());
    const DatabaseMatrix local(row.r, row.b, copy);
    const auto rec = local.row(beta);
    t_total.push_back(ns(net::Clock::now() - start));
    row.comm_measured_bits = copy.size() * 8ULL;
    const auto expect = db.matrix.row(beta);
    if (!std::equal(rec.begin(), rec.end(), expect.begin(), expect.end()) ||
        (row.b >= kMinRecordBytes && !record_checksum_ok(rec))) {
      fail(ErrorCode::kCorrectness, fmt::format("trivial retrieval of row {} failed", beta));
    }
    ++row.successes;
  }
  row.t_total_ns = median(t_total);
  row.t_su_ns = row.t_total_ns;
  return row;
}

std::string csv_header() {
  return "protocol,r,b_bytes,l,t,k,tau,pi,q,byzantine,trials,successes,byzantine_detected,"
         "comm_measured_bits,comm_predicted_bits,t_db_median_ns,t_su_median_ns,"
         "t_build_median_ns,t_recover_median_ns,t_total_median_ns,privacy";
}

std::string report_csv(const std::vector<Row>& rows) {
  std::string out = csv_header() + "\n";
  for (const auto& x : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                       x.protocol, x.r, x.b, x.l, x.t, x.k, x.tau, x.pi, x.q, x.byzantine,
                       x.trials, x.successes, x.byzantine_detected, x.comm_measured_bits,
                       x.comm_predicted_bits, x.t_db_ns, x.t_su_ns, x.t_build_ns,
                       x.t_recover_ns, x.t_total_ns, x.privacy);
  }
  return out;
}

std::vector<Row> parse_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != csv_header()) {
    fail(ErrorCode::kFormat, "CSV header does not match");
  }
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 21) fail(ErrorCode::kFormat, "CSV row has " + std::to_string(f.size()) + " fields");
    try {
      Row x;
      x.protocol = f[0];
      x.r = std::stoull(f[1]);
      x.b = std::stoull(f[2]);
      x.l = std::stoull(f[3]);
      x.t = std::stoi(f[4]);
      x.k = std::stoull(f[5]);
      x.tau = std::stoi(f[6]);
      x.pi = std::stoull(f[7]);
      x.q = std::stoull(f[8]);
      x.byzantine = std::stoull(f[9]);
      x.trials = std::stoull(f[10]);
      x.successes = std::stoull(f[11]);
      x.byzantine_detected = std::stoull(f[12]);
      x.comm_measured_bits = std::stoull(f[13]);
      x.comm_predicted_bits = std::stoull(f[14]);
      x.t_db_ns = std::stoull(f[15]);
      x.t_su_ns = std::stoull(f[16]);
      x.t_build_ns = std::stoull(f[17]);
      x.t_recover_ns = std::stoull(f[18]);
      x.t_total_ns = std::stoull(f[19]);
      x.privacy = f[20];
      rows.push_back(std::move(x));
    } catch (const std::logic_error&) {
      fail(ErrorCode::kFormat, "bad number in CSV row: " + line);
    }
  }
  return rows;
}

std::string report_table(const std::vector<Row>& rows) {
  std::string out = fmt::format("{:<8} {:>8} {:>5} {:>3} {:>3} {:>3} {:>3} {:>3} {:>4} {:>12} {:>10} "
                                "{:>10} {:>10} {:>7}  {}\n",
                                "scheme", "r", "b", "l", "t", "k", "tau", "pi", "q", "comm (B)",
                                "t_DB (ms)", "t_SU (ms)", "total (ms)", "ok", "privacy");
  for (const auto& x : rows) {
    out += fmt::format("{:<8} {:>8} {:>5} {:>3} {:>3} {:>3} {:>3} {:>3} {:>4} {:>12} {:>10.3f} "
                       "{:>10.3f} {:>10.3f} {:>3}/{:<3}  {}\n",
                       x.protocol, x.r, x.b, x.l, x.t, x.k, x.tau, x.pi, x.q,
                       x.comm_measured_bits / 8, x.t_db_ns / 1e6, x.t_su_ns / 1e6,
                       x.t_total_ns / 1e6, x.successes, x.trials, x.privacy);
  }
  out +=
      "Communication is the PIR payload (queries, seeds, answers), framing excluded.\n"
      "Timings are medians on this machine and are not comparable across hardware;\n"
      "only the communication formulas and the relative orderings are asserted.\n";
  return out;
}

}  // namespace lpir::bench
