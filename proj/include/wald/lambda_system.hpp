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

#ifndef WALD_LAMBDA_SYSTEM_HPP
#define WALD_LAMBDA_SYSTEM_HPP

#include <optional>
#include <vector>

#include "wald/numerics.hpp"

namespace wald {

class SingularSystemError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// C - sum_i x_i = a_k (1 - x_k) for k = 1..t-1, with y = sum_i x_i.
/// Solvable exactly when sum 1/a_j != 1.
struct LambdaSystem {
  Rat C;
  std::vector<Rat> a;  // each > 0
};

struct LambdaSolution {
  std::vector<Rat> x;
  Rat y;
};

/// y = (C R - (t-1)) / (R - 1) with R = sum 1/a_j, then
/// x_k = 1 - (C - y) / a_k.
LambdaSolution solve_lambda_system(const LambdaSystem& sys);

/// The system p - sum_i lambda_i >= a_i (1 - lambda_i), i = 1..s, over
/// lambda_i >= 0. `a` must satisfy the combine conditions.
struct BezoutSystem {
  Rat p;
  std::vector<Rat> a;
};

/// (p R - (s-1)) / (R - 1) with R = sum_{j<s} 1/a_j: the lambda-sum once the
/// first s-1 inequalities are equalities and lambda_s = 0.
Rat bezout_min_lambda_sum(const BezoutSystem& sys);

/// A point of the grid (grid_step Z)^s inside [0, L]^s, L = max(1, p),
/// satisfying every inequality, if one exists.
///
/// For a fixed total Lambda = sum lambda_i, inequality i reads
/// lambda_i >= 1 - (p - Lambda) / a_i, so a grid point with that total exists
/// iff the rounded-up minimal coordinates fit under Lambda. Scanning the
/// grid totals is therefore equivalent to scanning the whole grid.
std::optional<std::vector<Rat>> bezout_grid_witness(const BezoutSystem& sys, const Rat& grid_step);

bool bezout_feasible(const BezoutSystem& sys, const Rat& grid_step);

/// Same question over real lambda in [0, L]^s. The slack in Lambda is
/// convex and piecewise linear, so its kinks decide.
bool bezout_feasible_exact(const BezoutSystem& sys);

}  // namespace wald

#endif  // WALD_LAMBDA_SYSTEM_HPP
