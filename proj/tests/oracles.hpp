// Copyright 2026 The waldbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Independent reference implementations shared by the unit and acceptance tests.

#ifndef WALD_TESTS_ORACLES_HPP
#define WALD_TESTS_ORACLES_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "wald/lambda_system.hpp"
#include "wald/numerics.hpp"

namespace oracle {

using wald::LambdaSystem;
using wald::Nat;
using wald::Rat;

using Matrix = std::vector<std::vector<Rat>>;

// Main matrix of the system, columns (y, x_1, ..., x_{t-1}); augmented with
// the right-hand side when `augment` is set.
inline Matrix system_matrix(const LambdaSystem& sys, bool augment) {
  const std::size_t n = sys.a.size();
  Matrix m(n + 1, std::vector<Rat>(n + 1 + (augment ? 1 : 0)));
  for (std::size_t k = 0; k < n; ++k) {
    m[k][0] = Rat(0);
    for (std::size_t i = 0; i < n; ++i) m[k][i + 1] = i == k ? Rat(1) - sys.a[k] : Rat(1);
    if (augment) m[k][n + 1] = sys.C - sys.a[k];
  }
  m[n][0] = Rat(-1);
  for (std::size_t i = 0; i < n; ++i) m[n][i + 1] = Rat(1);
  if (augment) m[n][n + 1] = Rat(0);
  return m;
}

// Dense Gauss-Jordan elimination; returns (y, x_1, ..., x_{t-1}).
inline std::optional<std::vector<Rat>> gauss_solve(Matrix m) {
  const std::size_t n = m.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(m[pivot], m[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col].is_zero()) continue;
      Rat f = m[row][col] / m[col][col];
      for (std::size_t c = col; c <= n; ++c) m[row][c] -= f * m[col][c];
    }
  }
  std::vector<Rat> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = m[i][n] / m[i][i];
  return out;
}

inline Rat random_positive(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(1, 60);
  std::uniform_int_distribution<long> den(1, 12);
  return Rat(Nat(num(rng)), Nat(den(rng)));
}

inline LambdaSystem random_system(std::mt19937_64& rng, std::size_t max_t) {
  std::uniform_int_distribution<std::size_t> size(1, max_t - 1);
  std::uniform_int_distribution<long> c(-40, 40);
  for (;;) {
    LambdaSystem sys{Rat(Nat(c(rng)), Nat(1 + rng() % 7)), {}};
    sys.a.resize(size(rng));
    Rat R;
    for (auto& a : sys.a) {
      a = random_positive(rng);
      R += a.inv();
    }
    if (R != Rat(1)) return sys;
  }
}

inline std::vector<Rat> random_valid_a(std::mt19937_64& rng, std::size_t max_s) {
  std::uniform_int_distribution<std::size_t> size(2, max_s);
  std::uniform_int_distribution<long> num(8, 64);
  std::uniform_int_distribution<long> den(4, 12);
  for (;;) {
    std::vector<Rat> a(size(rng));
    for (auto& x : a) x = Rat(Nat(num(rng)), Nat(den(rng)));
    std::sort(a.begin(), a.end(), std::greater<>());
    Rat head;
    for (std::size_t j = 0; j + 1 < a.size(); ++j) head += a[j].inv();
    if (a.back() >= Rat(1) && head < Rat(1) && head + a.back().inv() >= Rat(1)) return a;
  }
}

}  // namespace oracle

#endif  // WALD_TESTS_ORACLES_HPP
