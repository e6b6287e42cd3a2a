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

#include "lpir/pir_batch.hpp"

#include <algorithm>
#include <string>

#include "lpir/errors.hpp"
#include "lpir/random.hpp"

namespace lpir {
namespace {

struct View {
  const gf256::Element* p;
  std::size_t rows, cols, stride;

  const gf256::Element* row(std::size_t i) const { return p + i * stride; }
  View block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    return {p + r0 * stride + c0, nr, nc, stride};
  }
};

struct MutView {
  gf256::Element* p;
  std::size_t rows, cols, stride;

  gf256::Element* row(std::size_t i) const { return p + i * stride; }
  MutView block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    return {p + r0 * stride + c0, nr, nc, stride};
  }
  View view() const { return {p, rows, cols, stride}; }
};

struct Buffer {
  std::vector<gf256::Element> data;
  std::size_t rows, cols;

  Buffer(std::size_t r, std::size_t c) : data(r * c, 0), rows(r), cols(c) {}
  MutView mut() { return {data.data(), rows, cols, cols}; }
  View view() const { return {data.data(), rows, cols, cols}; }
};

void zero(MutView c) {
  for (std::size_t i = 0; i < c.rows; ++i) std::fill_n(c.row(i), c.cols, 0);
}

// c = a + b (XOR); shapes equal.
void add_into(MutView c, View a, View b) {
  for (std::size_t i = 0; i < c.rows; ++i) {
    const auto* x = a.row(i);
    const auto* y = b.row(i);
    auto* z = c.row(i);
    for (std::size_t j = 0; j < c.cols; ++j) z[j] = x[j] ^ y[j];
  }
}

void copy_into(MutView c, View a) {
  for (std::size_t i = 0; i < c.rows; ++i) std::copy_n(a.row(i), c.cols, c.row(i));
}

void accumulate(MutView c, View a) {
  for (std::size_t i = 0; i < c.rows; ++i) {
    const auto* x = a.row(i);
    auto* z = c.row(i);
    for (std::size_t j = 0; j < c.cols; ++j) z[j] ^= x[j];
  }
}

// c = a * b. Walks b once, row by row, applying each row to every row of a.
void naive_kernel(View a, View b, MutView c) {
  zero(c);
  for (std::size_t j = 0; j < a.cols; ++j) {
    const gf256::Element* brow = b.row(j);
    for (std::size_t i = 0; i < a.rows; ++i) {
      const gf256::Element* by = gf256::mul_row(a.row(i)[j]);
      gf256::Element* out = c.row(i);
      for (std::size_t x = 0; x < b.cols; ++x) out[x] ^= by[brow[x]];
    }
  }
}

// Below these sizes tabulating the multiples of a column costs more than the
// lookups it saves.
constexpr std::size_t kTableMinRows = 8;
constexpr std::size_t kTableMinCols = 16;

// c = a * b, same products as naive_kernel. For each column j of a the 256
// multiples v * a[., j] are tabulated once (the bit-basis multiples, then XORs
// of them), so each entry of b costs one XOR of an a.rows-byte vector into
// column x of c instead of a.rows table lookups. This is what a batch of
// queries gains over the same queries answered one at a time.
void column_table_kernel(View a, View b, MutView c) {
  const std::size_t m = a.rows, n = b.cols;
  std::vector<gf256::Element> table(256 * m, 0);
  std::vector<gf256::Element> ct(n * m, 0);  // c transposed
  const gf256::Element* twice = gf256::mul_row(2);
  for (std::size_t j = 0; j < a.cols; ++j) {
    gf256::Element* one = table.data() + m;
    for (std::size_t i = 0; i < m; ++i) one[i] = a.row(i)[j];
    for (unsigned bit = 1; bit < 8; ++bit) {
      const gf256::Element* prev = table.data() + (1u << (bit - 1)) * m;
      gf256::Element* cur = table.data() + (1u << bit) * m;
      for (std::size_t i = 0; i < m; ++i) cur[i] = twice[prev[i]];
    }
    for (unsigned v = 3; v < 256; ++v) {
      const unsigned low = v & (0u - v);
      if (low == v) continue;
      const gf256::Element* x = table.data() + (v ^ low) * m;
      const gf256::Element* y = table.data() + low * m;
      gf256::Element* z = table.data() + v * m;
      for (std::size_t i = 0; i < m; ++i) z[i] = x[i] ^ y[i];
    }
    const gf256::Element* brow = b.row(j);
    for (std::size_t x = 0; x < n; ++x) {
      const gf256::Element* src = table.data() + std::size_t{brow[x]} * m;
      gf256::Element* dst = ct.data() + x * m;
      for (std::size_t i = 0; i < m; ++i) dst[i] ^= src[i];
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    gf256::Element* out = c.row(i);
    for (std::size_t x = 0; x < n; ++x) out[x] = ct[x * m + i];
  }
}

void leaf_kernel(View a, View b, MutView c) {
  if (a.rows >= kTableMinRows && b.cols >= kTableMinCols) {
    column_table_kernel(a, b, c);
  } else {
    naive_kernel(a, b, c);
  }
}

void strassen_rec(View a, View b, MutView c, std::size_t cutoff, StrassenStats* stats) {
  const std::size_t m = a.rows, k = a.cols, n = b.cols;
  if (m == 0 || k == 0 || n == 0) {
    zero(c);
    return;
  }
  const std::size_t smallest = std::min({m, k, n});
  if (smallest < cutoff || smallest == 1) {
    leaf_kernel(a, b, c);
    if (stats) ++stats->leaf_multiplications;
    return;
  }
  if ((m | k | n) & 1U) {
    const std::size_t m2 = m + (m & 1U), k2 = k + (k & 1U), n2 = n + (n & 1U);
    Buffer ap(m2, k2), bp(k2, n2), cp(m2, n2);
    copy_into(ap.mut().block(0, 0, m, k), a);
    copy_into(bp.mut().block(0, 0, k, n), b);
    strassen_rec(ap.view(), bp.view(), cp.mut(), cutoff, stats);
    copy_into(c, cp.view().block(0, 0, m, n));
    return;
  }
  const std::size_t h = m / 2, kh = k / 2, nh = n / 2;
  const View a11 = a.block(0, 0, h, kh), a12 = a.block(0, kh, h, kh);
  const View a21 = a.block(h, 0, h, kh), a22 = a.block(h, kh, h, kh);
  const View b11 = b.block(0, 0, kh, nh), b12 = b.block(0, nh, kh, nh);
  const View b21 = b.block(kh, 0, kh, nh), b22 = b.block(kh, nh, kh, nh);
  const MutView c11 = c.block(0, 0, h, nh), c12 = c.block(0, nh, h, nh);
  const MutView c21 = c.block(h, 0, h, nh), c22 = c.block(h, nh, h, nh);

  Buffer ta(h, kh), tb(kh, nh), prod(h, nh);

  // Subtraction is addition in characteristic 2.
  add_into(ta.mut(), a11, a22);                       // M1 = (A11+A22)(B11+B22)
  add_into(tb.mut(), b11, b22);
  strassen_rec(ta.view(), tb.view(), prod.mut(), cutoff, stats);
  copy_into(c11, prod.view());
  copy_into(c22, prod.view());

  add_into(ta.mut(), a21, a22);                       // M2 = (A21+A22)B11
  strassen_rec(ta.view(), b11, prod.mut(), cutoff, stats);
  copy_into(c21, prod.view());
  accumulate(c22, prod.view());

  add_into(tb.mut(), b12, b22);                       // M3 = A11(B12-B22)
  strassen_rec(a11, tb.view(), prod.mut(), cutoff, stats);
  copy_into(c12, prod.view());
  accumulate(c22, prod.view());

  add_into(tb.mut(), b21, b11);                       // M4 = A22(B21-B11)
  strassen_rec(a22, tb.view(), prod.mut(), cutoff, stats);
  accumulate(c11, prod.view());
  accumulate(c21, prod.view());

  add_into(ta.mut(), a11, a12);                       // M5 = (A11+A12)B22
  strassen_rec(ta.view(), b22, prod.mut(), cutoff, stats);
  accumulate(c11, prod.view());
  accumulate(c12, prod.view());

  add_into(ta.mut(), a21, a11);                       // M6 = (A21-A11)(B11+B12)
  add_into(tb.mut(), b11, b12);
  strassen_rec(ta.view(), tb.view(), prod.mut(), cutoff, stats);
  accumulate(c22, prod.view());

  add_into(ta.mut(), a12, a22);                       // M7 = (A12-A22)(B21+B22)
  add_into(tb.mut(), b21, b22);
  strassen_rec(ta.view(), tb.view(), prod.mut(), cutoff, stats);
  accumulate(c11, prod.view());
}

FieldMatrix multiply(View a, View b, std::size_t cutoff, StrassenStats* stats) {
  if (a.cols != b.rows) {
    fail(ErrorCode::kProtocol, "matrix dimensions do not agree: " +
                                   std::to_string(a.cols) + " vs " + std::to_string(b.rows));
  }
  FieldMatrix c(a.rows, b.cols);
  if (c.rows() == 0 || c.cols() == 0) return c;
  MutView cv{c.row(0).data(), c.rows(), c.cols(), c.cols()};
  strassen_rec(a, b, cv, cutoff, stats);
  return c;
}

View view_of(const FieldMatrix& m) { return {m.data().data(), m.rows(), m.cols(), m.cols()}; }

}  // namespace

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, std::vector<gf256::Element> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    fail(ErrorCode::kParameter, "matrix data does not match its dimensions");
  }
}

FieldMatrix FieldMatrix::identity(std::size_t n) {
  FieldMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FieldMatrix naive_mul(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.cols() != b.rows()) fail(ErrorCode::kProtocol, "matrix dimensions do not agree");
  FieldMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t x = 0; x < b.cols(); ++x) {
      gf256::Element acc = 0;
      for (std::size_t j = 0; j < a.cols(); ++j) acc ^= gf256::mul(a.at(i, j), b.at(j, x));
      c.at(i, x) = acc;
    }
  }
  return c;
}

FieldMatrix strassen_mul(const FieldMatrix& a, const FieldMatrix& b, std::size_t cutoff,
                         StrassenStats* stats) {
  return multiply(view_of(a), view_of(b), cutoff, stats);
}

FieldMatrix strassen_mul(const FieldMatrix& a, const DatabaseMatrix& b, std::size_t cutoff,
                         StrassenStats* stats) {
  const View bv{b.data().data(), static_cast<std::size_t>(b.rows()),
                static_cast<std::size_t>(b.words_per_row()),
                static_cast<std::size_t>(b.words_per_row())};
  return multiply(view_of(a), bv, cutoff, stats);
}

std::vector<QueryMatrix> batch_build_queries(std::span<const std::uint64_t> betas,
                                             std::uint64_t r, int threshold,
                                             const EvalPointSet& points,
                                             RandomSource& rng) {
  if (betas.empty()) fail(ErrorCode::kParameter, "a batch needs at least one query");
  std::vector<QueryMatrix> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    out[i].alpha = points[i];
    out[i].rows = FieldMatrix(betas.size(), r);
  }
  for (std::size_t q = 0; q < betas.size(); ++q) {
    auto queries = goldberg_build_queries(betas[q], r, threshold, points, rng);
    for (std::size_t i = 0; i < points.size(); ++i) {
      std::copy(queries[i].rho.begin(), queries[i].rho.end(), out[i].rows.row(q).begin());
    }
  }
  return out;
}

ResponseMatrix batch_server_answer(std::uint16_t server_id, const QueryMatrix& query,
                                   const DatabaseMatrix& db, std::size_t cutoff) {
  if (query.rows.cols() != db.rows()) {
    fail(ErrorCode::kProtocol, "batch query width does not match r");
  }
  return {server_id, query.alpha, strassen_mul(query.rows, db, cutoff)};
}

std::vector<RecoveryReport> batch_recover(std::span<const ResponseMatrix> responses,
                                          int degree) {
  if (responses.empty()) fail(ErrorCode::kInsufficientShares, "no responses");
  const std::size_t q = responses.front().rows.rows();
  for (const auto& r : responses) {
    if (r.rows.rows() != q) fail(ErrorCode::kProtocol, "responses carry different batch sizes");
  }
  std::vector<RecoveryReport> reports;
  reports.reserve(q);
  std::vector<GoldbergResponse> row(responses.size());
  for (std::size_t j = 0; j < q; ++j) {
    for (std::size_t i = 0; i < responses.size(); ++i) {
      const auto values = responses[i].rows.row(j);
      row[i] = {responses[i].server_id, responses[i].alpha,
                std::vector<gf256::Element>(values.begin(), values.end())};
    }
    reports.push_back(goldberg_recover(row, degree));
  }
  return reports;
}

}  // namespace lpir
