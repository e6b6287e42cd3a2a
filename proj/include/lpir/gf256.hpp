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

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

// Arithmetic in GF(2^8) with the fixed modulus x^8 + x^4 + x^3 + x + 1 (0x11B).
// Client and servers must agree on the modulus; it is part of the wire format.
namespace lpir::gf256 {

using Element = std::uint8_t;

inline constexpr unsigned kModulus = 0x11B;

// Full 256x256 product table (64 KB) plus the inverse table. Built once on first
// use, cross-checked against schoolbook multiplication, read-only afterwards.
struct Tables {
  std::array<std::array<Element, 256>, 256> product;
  std::array<Element, 256> inverse;
};

const Tables& tables();

inline Element add(Element a, Element b) { return a ^ b; }

inline Element mul(Element a, Element b) { return tables().product[a][b]; }

// Row of the product table for a fixed left operand: row[x] == mul(a, x).
inline const Element* mul_row(Element a) { return tables().product[a].data(); }

// Throws Error(kDomain) for zero.
Element inv(Element a);

inline Element div(Element a, Element b) { return mul(a, inv(b)); }

// Shift-and-add reference multiply. Used to validate the tables.
Element schoolbook_mul(Element a, Element b);

class Polynomial {
 public:
  Polynomial() = default;
  // Lowest degree first. Trailing zero coefficients are trimmed.
  explicit Polynomial(std::vector<Element> coefficients);

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Element>& coefficients() const { return coeffs_; }
  Element coefficient(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : Element{0};
  }

  Element operator()(Element x) const;

  bool operator==(const Polynomial&) const = default;

 private:
  std::vector<Element> coeffs_;
};

// Horner evaluation.
Element eval_poly(std::span<const Element> coefficients, Element x);

struct Point {
  Element x;
  Element y;
};

// Lagrange basis weights l_i(target) for the abscissae xs. Throws
// Error(kDomain) on duplicates. The weights depend only on the geometry, so
// callers recovering many words at the same points compute them once.
std::vector<Element> lagrange_weights(std::span<const Element> xs,
                                      Element target);

// f(0) of the unique polynomial of degree < points.size() through the points.
// x-coordinates must be distinct and nonzero (Error(kDomain) otherwise).
Element lagrange_at_zero(std::span<const Point> points);

// Interpolating polynomial of degree < points.size().
Polynomial interpolate(std::span<const Point> points);

struct DecodeResult {
  Polynomial polynomial;
  // Positions (indices into the input) the polynomial does not pass through.
  std::vector<std::size_t> corrupted;
};

// Unique decoding radius for k points and a degree-t polynomial.
inline int max_correctable(int points, int degree) {
  return points > degree ? (points - degree - 1) / 2 : -1;
}

// Berlekamp-Welch: the unique polynomial of degree <= degree_bound agreeing
// with all but at most floor((k - degree_bound - 1) / 2) points. Throws
// Error(kDecodeFailure) if no such polynomial exists.
DecodeResult rs_decode(std::span<const Point> points, int degree_bound);

// Pluggable decoder slot for the byzantine recovery path.
using Decoder =
    std::function<DecodeResult(std::span<const Point>, int degree_bound)>;

// Solves M x = rhs over GF(2^8) by Gaussian elimination. On success writes one
// solution (free variables zero); returns false if the system is inconsistent.
// M is row-major, rows x cols.
bool solve_linear(std::vector<Element> m, std::size_t rows, std::size_t cols,
                  std::vector<Element> rhs, std::vector<Element>& solution);

}  // namespace lpir::gf256
