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

#ifndef WALD_RECURSION_HPP
#define WALD_RECURSION_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "wald/base_bounds.hpp"
#include "wald/certificate.hpp"
#include "wald/numerics.hpp"

namespace wald {

/// A combine or stepback input failed one of its hypotheses.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Bounds a_1 >= ... >= a_s (s >= 2) for points on s hyperplanes, checked on
/// construction: every a_j >= 1, 1 - sum_{j<s} 1/a_j > 0 and
/// 1 - sum_{j<=s} 1/a_j <= 0.
class CombineInput {
 public:
  explicit CombineInput(std::vector<Rat> a);
  const std::vector<Rat>& a() const { return a_; }
  std::size_t s() const { return a_.size(); }

 private:
  std::vector<Rat> a_;
};

/// q = (1 - sum_{j<s} 1/a_j) * a_s + (s - 1).
Rat combine(const CombineInput& input);

/// Empty when the stepback hypotheses fail for this k: length k+1,
/// nonincreasing, a_1 > k, a_j >= k for j <= k, 1 <= a_{k+1} <= k+1.
std::optional<Rat> try_stepback_combine(std::uint64_t k, std::span<const Rat> a);

/// Throwing form of try_stepback_combine.
Rat stepback_combine(std::uint64_t k, std::span<const Rat> a);

enum class Strategy { kExhaustive, kHeuristic, kPurePower, kClosedForm };

std::string_view strategy_name(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);

class StrategySet {
 public:
  StrategySet() = default;
  StrategySet(std::initializer_list<Strategy> list) {
    for (Strategy s : list) insert(s);
  }
  /// {heuristic, purepower}, plus exhaustive when N = 3.
  static StrategySet defaults_for(unsigned N);

  void insert(Strategy s) { bits_ |= bit(s); }
  bool has(Strategy s) const { return (bits_ & bit(s)) != 0; }
  bool empty() const { return bits_ == 0; }
  unsigned bits() const { return bits_; }
  std::string to_string() const;

  friend bool operator==(const StrategySet&, const StrategySet&) = default;

 private:
  static unsigned bit(Strategy s) { return 1u << static_cast<unsigned>(s); }
  unsigned bits_ = 0;
};

struct SearchLimits {
  std::uint64_t max_partitions = 2'000'000;
  // Number of stepback levels below the query; unset means down to P^2.
  std::optional<unsigned> depth_cap;
  bool memo = true;
};

/// Strategy set, base table, limits and the shared memo cache. Lookups are
/// safe from several threads; a cache hit equals a fresh computation.
class SearchContext {
 public:
  SearchContext(StrategySet strategies, std::shared_ptr<const BaseTable> table,
                SearchLimits limits = {});

  const StrategySet& strategies() const { return strategies_; }
  const BaseTable& table() const { return *table_; }
  const SearchLimits& limits() const { return limits_; }

  /// Memoized bounds for (dim, 1..upto) under a given lowest searched
  /// dimension. Internal to the search; exposed for tests.
  struct Row {
    std::mutex mu;
    std::vector<CertPtr> certs;  // index r - 1
  };
  Row& row(unsigned dim, unsigned floor_dim) const;

 private:
  StrategySet strategies_;
  std::shared_ptr<const BaseTable> table_;
  SearchLimits limits_;
  std::size_t fingerprint_;
  mutable std::mutex rows_mu_;
  mutable std::map<std::tuple<unsigned, unsigned, std::size_t>, std::unique_ptr<Row>> rows_;
};

/// Stepback over every nonincreasing partition of min(r, (k+1)^N) into k+1
/// parts of size <= (k+1)^(N-1). Requires N >= 3 and r >= 2.
CertPtr search_exhaustive(unsigned N, std::uint64_t r, const SearchContext& ctx);

/// One candidate per last-part size l: parts (r_1 x k, l^(N-1)) with
/// r_1 = floor((r - l^(N-1)) / k).
CertPtr search_heuristic(unsigned N, std::uint64_t r, const SearchContext& ctx);

/// All (r_1, l) with k r_1 + l^(N-1) <= r.
CertPtr search_purepower(unsigned N, std::uint64_t r, const SearchContext& ctx);

/// N = 2: best_base_bound. N >= 3: exact maximum of the enabled strategies
/// and the base bound, then the monotone envelope in r.
CertPtr best_bound(unsigned N, std::uint64_t r, const SearchContext& ctx);

/// Recomputes every node bottom-up and returns the root value; throws
/// std::logic_error on the first node whose stored result disagrees.
Rat replay(const BoundCertificate& cert, const BaseTable& table);

}  // namespace wald

#endif  // WALD_RECURSION_HPP
