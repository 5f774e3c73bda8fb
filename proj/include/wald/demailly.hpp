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

#ifndef WALD_DEMAILLY_HPP
#define WALD_DEMAILLY_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "wald/certificate.hpp"
#include "wald/numerics.hpp"
#include "wald/recursion.hpp"

namespace wald {

/// Outcome of checking (alpha(mZ) + N - 1) / (m + N - 1) <= lower bound for
/// r very general points in P^N. A failed check is inconclusive, never a
/// counterexample: both sides are one-sided bounds.
struct DemaillyReport {
  unsigned N = 0;
  unsigned m = 0;
  std::uint64_t r = 0;
  Nat alpha_upper;
  std::string alpha_source;  // "conditions-count" or "hyperplane-cover"
  CertPtr lower;
  Rat rhs;
  bool sufficient = false;

  const Rat& lower_bound() const { return lower->result; }
  std::string verdict() const { return sufficient ? "sufficient" : "inconclusive"; }
};

/// Minimal d with C(d+N, N) > r * C(m+N-1, N): forms of degree d outnumber
/// the conditions imposed by r points of multiplicity m.
Nat conditions_count_alpha_upper(unsigned N, std::uint64_t r, unsigned m);

/// Upper bound on alpha(mZ) from unions of hyperplanes, each through N of
/// the points (very general points are in linear general position):
/// m when r <= N, otherwise ceil(m r / N).
Nat hyperplane_cover_alpha_upper(unsigned N, std::uint64_t r, unsigned m);

/// alpha_upper is the smaller of the conditions count and the hyperplane
/// cover; ties report the conditions count.
DemaillyReport demailly_sufficient(unsigned N, unsigned m, std::uint64_t r,
                                   const SearchContext& ctx);

struct ScanSummary {
  std::size_t sufficient = 0;
  std::size_t inconclusive = 0;
};

/// Reports for r = r_lo..r_hi, delivered to `sink` in increasing r.
/// With jobs > 1 the r-values are evaluated concurrently.
ScanSummary scan_demailly(unsigned N, unsigned m, std::uint64_t r_lo, std::uint64_t r_hi,
                          const SearchContext& ctx,
                          const std::function<void(const DemaillyReport&)>& sink,
                          unsigned jobs = 1);

// Arithmetic ingredients of the m >= N and small-m cases.

/// {C(m(m+N-1)+1, N), C(m+N-1, N) (m+1)^N}.
std::pair<Nat, Nat> lemma52_sides(unsigned N, unsigned m);
bool verify_lemma52(unsigned N, unsigned m);

/// C(2N+3, N) >= 3^N (N+1).
bool verify_case3_binomial(unsigned N);

/// C(4n^2+9n+5, 3) >= (m+1)^3 C(m+2, 3) with m = 2n.
bool verify_case2_even(unsigned n);

}  // namespace wald

#endif  // WALD_DEMAILLY_HPP
