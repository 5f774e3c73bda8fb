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

#include "wald/demailly.hpp"

#include <atomic>
#include <optional>
#include <thread>

namespace wald {

Nat conditions_count_alpha_upper(unsigned N, std::uint64_t r, unsigned m) {
  if (N == 0 || r == 0 || m == 0) throw DomainError("conditions count needs N, r, m >= 1");
  const Nat conditions = to_nat(r) * binom(Nat(m + N - 1), Nat(N));
  auto enough = [&](const Nat& d) { return binom(d + N, Nat(N)) > conditions; };
  if (enough(0)) return 0;
  Nat lo = 0, hi = 1;  // enough(hi) once the loop ends, never enough(lo)
  while (!enough(hi)) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    Nat mid = (lo + hi) / 2;
    if (enough(mid)) hi = mid; else lo = mid;
  }
  return hi;
}

Nat hyperplane_cover_alpha_upper(unsigned N, std::uint64_t r, unsigned m) {
  if (N == 0 || r == 0 || m == 0) throw DomainError("hyperplane cover needs N, r, m >= 1");
  if (r <= N) return Nat(m);
  // Cyclic blocks of N consecutive points: h blocks cover every point at
  // least floor(hN / r) times.
  const Nat incidences = Nat(m) * to_nat(r);
  return (incidences + (N - 1)) / N;
}

DemaillyReport demailly_sufficient(unsigned N, unsigned m, std::uint64_t r,
                                   const SearchContext& ctx) {
  if (N < 2 || m == 0 || r == 0) throw DomainError("demailly check needs N >= 2, m >= 1, r >= 1");
  DemaillyReport rep;
  rep.N = N;
  rep.m = m;
  rep.r = r;
  rep.alpha_upper = conditions_count_alpha_upper(N, r, m);
  rep.alpha_source = "conditions-count";
  if (Nat cover = hyperplane_cover_alpha_upper(N, r, m); cover < rep.alpha_upper) {
    rep.alpha_upper = cover;
    rep.alpha_source = "hyperplane-cover";
  }
  rep.lower = best_bound(N, r, ctx);
  rep.rhs = Rat(rep.alpha_upper + (N - 1), Nat(m + N - 1));
  rep.sufficient = rep.lower_bound() >= rep.rhs;
  return rep;
}

ScanSummary scan_demailly(unsigned N, unsigned m, std::uint64_t r_lo, std::uint64_t r_hi,
                          const SearchContext& ctx,
                          const std::function<void(const DemaillyReport&)>& sink,
                          unsigned jobs) {
  if (r_lo > r_hi) throw DomainError("scan range is empty");
  if (r_lo == 0) throw DomainError("scan range must start at r >= 1");
  ScanSummary summary;
  auto emit = [&](const DemaillyReport& rep) {
    (rep.sufficient ? summary.sufficient : summary.inconclusive) += 1;
    if (sink) sink(rep);
  };
  if (jobs <= 1) {
    for (std::uint64_t r = r_lo; r <= r_hi; ++r) emit(demailly_sufficient(N, m, r, ctx));
    return summary;
  }
  const std::size_t count = r_hi - r_lo + 1;
  std::vector<std::optional<DemaillyReport>> reports(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> workers;
  for (unsigned t = 0; t < jobs; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          reports[i] = demailly_sufficient(N, m, r_lo + i, ctx);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (error) std::rethrow_exception(error);
  for (const auto& rep : reports) emit(*rep);
  return summary;
}

std::pair<Nat, Nat> lemma52_sides(unsigned N, unsigned m) {
  Nat left = binom(Nat(m) * (m + N - 1) + 1, Nat(N));
  Nat right = binom(Nat(m + N - 1), Nat(N)) * ipow(Nat(m + 1), N);
  return {left, right};
}

bool verify_lemma52(unsigned N, unsigned m) {
  auto [left, right] = lemma52_sides(N, m);
  return left > right;
}

bool verify_case3_binomial(unsigned N) {
  return binom(Nat(2 * N + 3), Nat(N)) >= ipow(Nat(3), N) * (N + 1);
}

bool verify_case2_even(unsigned n) {
  const unsigned m = 2 * n;
  Nat degree_side = binom(Nat(4 * n * n + 9 * n + 5), Nat(3));
  return degree_side >= ipow(Nat(m + 1), 3) * binom(Nat(m + 2), Nat(3));
}

}  // namespace wald
