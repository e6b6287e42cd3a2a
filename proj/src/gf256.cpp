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

#include "lpir/gf256.hpp"

#include <algorithm>
#include <memory>

#include "lpir/errors.hpp"

namespace lpir::gf256 {
namespace {

std::unique_ptr<Tables> build_tables() {
  // 0x03 generates the multiplicative group under 0x11B.
  std::array<Element, 510> exp{};
  std::array<int, 256> log{};
  Element x = 1;
  for (int i = 0; i < 255; ++i) {
    exp[i] = x;
    exp[i + 255] = x;
    log[x] = i;
    x = schoolbook_mul(x, 0x03);
  }
  if (x != 1) fail(ErrorCode::kInternal, "0x03 is not a generator");

  auto t = std::make_unique<Tables>();
  for (int a = 0; a < 256; ++a) {
    for (int b = 0; b < 256; ++b) {
      t->product[a][b] = (a == 0 || b == 0) ? 0 : exp[log[a] + log[b]];
    }
  }
  t->inverse[0] = 0;
  for (int a = 1; a < 256; ++a) t->inverse[a] = exp[255 - log[a]];

  for (int a = 0; a < 256; ++a) {
    for (int b = 0; b < 256; ++b) {
      if (t->product[a][b] !=
          schoolbook_mul(static_cast<Element>(a), static_cast<Element>(b))) {
        fail(ErrorCode::kInternal, "GF(2^8) product table self-check failed");
      }
    }
  }
  return t;
}

void check_distinct(std::span<const Element> xs) {
  std::array<bool, 256> seen{};
  for (Element x : xs) {
    if (seen[x]) fail(ErrorCode::kDomain, "duplicate evaluation point");
    seen[x] = true;
  }
}

// q, r such that a = q * b + r, deg r < deg b.
void divmod(const std::vector<Element>& a, const std::vector<Element>& b,
            std::vector<Element>& quotient, std::vector<Element>& remainder) {
  remainder = a;
  const int db = static_cast<int>(b.size()) - 1;
  const int da = static_cast<int>(a.size()) - 1;
  quotient.assign(da >= db ? da - db + 1 : 0, 0);
  const Element lead_inv = inv(b.back());
  for (int i = da; i >= db; --i) {
    const Element c = mul(remainder[i], lead_inv);
    quotient[i - db] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) remainder[i - db + j] ^= mul(c, b[j]);
  }
  remainder.resize(db > 0 ? db : 0);
}

bool all_zero(const std::vector<Element>& v) {
  return std::all_of(v.begin(), v.end(), [](Element e) { return e == 0; });
}

}  // namespace

const Tables& tables() {
  static const std::unique_ptr<Tables> instance = build_tables();
  return *instance;
}

Element schoolbook_mul(Element a, Element b) {
  unsigned acc = 0;
  unsigned aa = a;
  for (int i = 0; i < 8; ++i) {
    if (b & (1U << i)) acc ^= aa << i;
  }
  for (int bit = 14; bit >= 8; --bit) {
    if (acc & (1U << bit)) acc ^= kModulus << (bit - 8);
  }
  return static_cast<Element>(acc);
}

Element inv(Element a) {
  if (a == 0) fail(ErrorCode::kDomain, "zero has no multiplicative inverse");
  return tables().inverse[a];
}

Polynomial::Polynomial(std::vector<Element> coefficients)
    : coeffs_(std::move(coefficients)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Element Polynomial::operator()(Element x) const { return eval_poly(coeffs_, x); }

Element eval_poly(std::span<const Element> coefficients, Element x) {
  const Element* row = mul_row(x);
  Element acc = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    acc = row[acc] ^ *it;
  }
  return acc;
}

std::vector<Element> lagrange_weights(std::span<const Element> xs,
                                      Element target) {
  check_distinct(xs);
  std::vector<Element> w(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Element num = 1;
    Element den = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      num = mul(num, target ^ xs[j]);
      den = mul(den, xs[i] ^ xs[j]);
    }
    w[i] = div(num, den);
  }
  return w;
}

Element lagrange_at_zero(std::span<const Point> points) {
  if (points.empty()) fail(ErrorCode::kDomain, "no points to interpolate");
  std::vector<Element> xs;
  xs.reserve(points.size());
  for (const auto& p : points) {
    if (p.x == 0) fail(ErrorCode::kDomain, "evaluation point zero is reserved");
    xs.push_back(p.x);
  }
  const auto w = lagrange_weights(xs, 0);
  Element acc = 0;
  for (std::size_t i = 0; i < points.size(); ++i) acc ^= mul(w[i], points[i].y);
  return acc;
}

Polynomial interpolate(std::span<const Point> points) {
  std::vector<Element> xs;
  for (const auto& p : points) xs.push_back(p.x);
  check_distinct(xs);

  std::vector<Element> result(points.size(), 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    // basis = prod_{j != i} (x - x_j) / (x_i - x_j)
    std::vector<Element> basis{1};
    Element den = 1;
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      std::vector<Element> next(basis.size() + 1, 0);
      for (std::size_t m = 0; m < basis.size(); ++m) {
        next[m + 1] ^= basis[m];
        next[m] ^= mul(basis[m], xs[j]);
      }
      basis = std::move(next);
      den = mul(den, xs[i] ^ xs[j]);
    }
    const Element scale = div(points[i].y, den);
    for (std::size_t m = 0; m < basis.size(); ++m) {
      result[m] ^= mul(scale, basis[m]);
    }
  }
  return Polynomial(std::move(result));
}

bool solve_linear(std::vector<Element> m, std::size_t rows, std::size_t cols,
                  std::vector<Element> rhs, std::vector<Element>& solution) {
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && m[p * cols + c] == 0) ++p;
    if (p == rows) continue;
    if (p != rank) {
      for (std::size_t j = 0; j < cols; ++j) {
        std::swap(m[p * cols + j], m[rank * cols + j]);
      }
      std::swap(rhs[p], rhs[rank]);
    }
    const Element scale = inv(m[rank * cols + c]);
    for (std::size_t j = 0; j < cols; ++j) {
      m[rank * cols + j] = mul(m[rank * cols + j], scale);
    }
    rhs[rank] = mul(rhs[rank], scale);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank) continue;
      const Element f = m[i * cols + c];
      if (f == 0) continue;
      const Element* row = mul_row(f);
      for (std::size_t j = 0; j < cols; ++j) {
        m[i * cols + j] ^= row[m[rank * cols + j]];
      }
      rhs[i] ^= row[rhs[rank]];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (std::size_t i = rank; i < rows; ++i) {
    if (rhs[i] != 0) return false;
  }
  solution.assign(cols, 0);
  for (std::size_t i = 0; i < rank; ++i) solution[pivot_col[i]] = rhs[i];
  return true;
}

DecodeResult rs_decode(std::span<const Point> points, int degree_bound) {
  const int k = static_cast<int>(points.size());
  const int t = degree_bound;
  if (t < 0) fail(ErrorCode::kParameter, "degree bound must be non-negative");
  if (k <= t) {
    fail(ErrorCode::kDecodeFailure, "need more points than the degree bound");
  }
  {
    std::vector<Element> xs;
    for (const auto& p : points) xs.push_back(p.x);
    check_distinct(xs);
  }
  const int e = max_correctable(k, t);

  Polynomial candidate;
  if (e == 0) {
    candidate = interpolate(points.first(static_cast<std::size_t>(t) + 1));
  } else {
    // Unknowns: Q_0..Q_{e+t}, then E_0..E_{e-1} (E monic of degree e).
    // Q(x_i) + y_i E'(x_i) = y_i x_i^e with E' the non-leading part of E.
    const std::size_t qn = static_cast<std::size_t>(e + t + 1);
    const std::size_t cols = qn + static_cast<std::size_t>(e);
    const std::size_t rows = static_cast<std::size_t>(k);
    std::vector<Element> m(rows * cols, 0);
    std::vector<Element> rhs(rows, 0);
    for (std::size_t i = 0; i < rows; ++i) {
      const Element x = points[i].x;
      const Element y = points[i].y;
      Element xp = 1;
      for (std::size_t c = 0; c < qn; ++c) {
        m[i * cols + c] = xp;
        if (c < static_cast<std::size_t>(e)) m[i * cols + qn + c] = mul(y, xp);
        if (c == static_cast<std::size_t>(e)) rhs[i] = mul(y, xp);
        xp = mul(xp, x);
      }
    }
    std::vector<Element> sol;
    if (!solve_linear(std::move(m), rows, cols, std::move(rhs), sol)) {
      fail(ErrorCode::kDecodeFailure, "no error locator within the decoding radius");
    }
    std::vector<Element> q(sol.begin(), sol.begin() + static_cast<long>(qn));
    std::vector<Element> locator(sol.begin() + static_cast<long>(qn), sol.end());
    locator.push_back(1);
    std::vector<Element> quotient, remainder;
    divmod(q, locator, quotient, remainder);
    if (!all_zero(remainder)) {
      fail(ErrorCode::kDecodeFailure, "error locator does not divide the key equation");
    }
    candidate = Polynomial(std::move(quotient));
  }

  if (candidate.degree() > t) {
    fail(ErrorCode::kDecodeFailure, "decoded polynomial exceeds the degree bound");
  }
  DecodeResult result{candidate, {}};
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (candidate(points[i].x) != points[i].y) result.corrupted.push_back(i);
  }
  if (static_cast<int>(result.corrupted.size()) > e) {
    fail(ErrorCode::kDecodeFailure, "more corrupted points than the decoding radius");
  }
  return result;
}

}  // namespace lpir::gf256
