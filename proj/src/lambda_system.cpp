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

#include "wald/lambda_system.hpp"

#include <algorithm>

#include "wald/recursion.hpp"

namespace wald {

LambdaSolution solve_lambda_system(const LambdaSystem& sys) {
  if (sys.a.empty()) throw DomainError("lambda system needs at least one equation");
  Rat R;
  for (const Rat& a : sys.a) {
    if (a.sign() <= 0) throw DomainError("lambda system needs positive a_j");
    R += a.inv();
  }
  if (R == Rat(1)) throw SingularSystemError("singular lambda system: sum 1/a_j = 1");
  const Rat t_minus_1(static_cast<long>(sys.a.size()));
  LambdaSolution out;
  out.y = (sys.C * R - t_minus_1) / (R - Rat(1));
  for (const Rat& a : sys.a) out.x.push_back(Rat(1) - (sys.C - out.y) / a);
  return out;
}

namespace {

void require_valid(const BezoutSystem& sys) {
  CombineInput check(sys.a);  // throws PreconditionError on invalid a
  (void)check;
}

Rat box_side(const BezoutSystem& sys) { return std::max(Rat(1), sys.p); }

// Smallest lambda_i admissible in inequality i for a given total.
Rat minimal_coordinate(const BezoutSystem& sys, std::size_t i, const Rat& total) {
  return std::max(Rat(0), Rat(1) - (sys.p - total) / sys.a[i]);
}

}  // namespace

Rat bezout_min_lambda_sum(const BezoutSystem& sys) {
  require_valid(sys);
  Rat R;
  for (std::size_t j = 0; j + 1 < sys.a.size(); ++j) R += sys.a[j].inv();
  if (R == Rat(1)) throw SingularSystemError("R = 1");
  return (sys.p * R - Rat(static_cast<long>(sys.a.size() - 1))) / (R - Rat(1));
}

std::optional<std::vector<Rat>> bezout_grid_witness(const BezoutSystem& sys,
                                                    const Rat& grid_step) {
  require_valid(sys);
  if (grid_step.sign() <= 0) throw DomainError("grid step must be positive");
  const std::size_t s = sys.a.size();
  const Nat steps_per_side = (box_side(sys) / grid_step).floor();
  const Nat max_steps = steps_per_side * static_cast<unsigned long>(s);
  std::vector<Nat> low(s);
  for (Nat n = 0; n <= max_steps; ++n) {
    const Rat total = Rat(n) * grid_step;
    Nat used = 0;
    bool fits = true;
    for (std::size_t i = 0; i < s && fits; ++i) {
      const Rat need = minimal_coordinate(sys, i, total) / grid_step;
      low[i] = need.is_integer() ? need.num() : need.floor() + 1;
      fits = low[i] <= steps_per_side;
      used += low[i];
    }
    if (!fits || used > n) continue;
    // Spread the excess; each coordinate has room up to steps_per_side.
    Nat excess = n - used;
    std::vector<Rat> lambda(s);
    for (std::size_t i = 0; i < s; ++i) {
      const Nat add = std::min<Nat>(excess, steps_per_side - low[i]);
      excess -= add;
      lambda[i] = Rat(Nat(low[i] + add)) * grid_step;
    }
    return lambda;
  }
  return std::nullopt;
}

bool bezout_feasible(const BezoutSystem& sys, const Rat& grid_step) {
  return bezout_grid_witness(sys, grid_step).has_value();
}

bool bezout_feasible_exact(const BezoutSystem& sys) {
  require_valid(sys);
  const std::size_t s = sys.a.size();
  const Rat L = box_side(sys);
  // Totals beyond `upper` force some lambda_i above L.
  Rat upper = L * Rat(static_cast<long>(s));
  for (const Rat& a : sys.a) upper = std::min(upper, sys.p + a * (L - Rat(1)));
  if (upper.sign() < 0) return false;
  std::vector<Rat> kinks = {Rat(0), upper};
  for (const Rat& a : sys.a) {
    Rat t = sys.p - a;
    if (t.sign() >= 0 && t <= upper) kinks.push_back(t);
  }
  for (const Rat& total : kinks) {
    Rat used;
    for (std::size_t i = 0; i < s; ++i) used += minimal_coordinate(sys, i, total);
    if (used <= total) return true;
  }
  return false;
}

}  // namespace wald
