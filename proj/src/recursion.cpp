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

#include "wald/recursion.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

namespace wald {

// ---------------------------------------------------------------------------
// Combine.

CombineInput::CombineInput(std::vector<Rat> a) : a_(std::move(a)) {
  if (a_.size() < 2) throw PreconditionError("combine needs s >= 2 values");
  for (std::size_t j = 0; j < a_.size(); ++j) {
    if (a_[j] < Rat(1)) throw PreconditionError("combine needs every a_j >= 1");
    if (j > 0 && a_[j] > a_[j - 1]) throw PreconditionError("combine needs a_1 >= ... >= a_s");
  }
  Rat head_sum;
  for (std::size_t j = 0; j + 1 < a_.size(); ++j) head_sum += a_[j].inv();
  if (Rat(1) - head_sum <= Rat(0)) {
    throw PreconditionError("head condition violated: 1 - sum_{j<s} 1/a_j must be > 0");
  }
  if (Rat(1) - head_sum - a_.back().inv() > Rat(0)) {
    throw PreconditionError("tail condition violated: 1 - sum_{j<=s} 1/a_j must be <= 0");
  }
}

Rat combine(const CombineInput& input) {
  const auto& a = input.a();
  Rat head_sum;
  for (std::size_t j = 0; j + 1 < a.size(); ++j) head_sum += a[j].inv();
  return (Rat(1) - head_sum) * a.back() + Rat(static_cast<long>(a.size() - 1));
}

namespace {

// Empty string when the stepback hypotheses hold.
std::string stepback_violation(std::uint64_t k, std::span<const Rat> a) {
  if (k == 0) return "k must be >= 1";
  if (a.size() != k + 1) return "expected k+1 values";
  const Rat lo(to_nat(k));
  const Rat hi(to_nat(k + 1));
  for (std::size_t j = 1; j < a.size(); ++j) {
    if (a[j] > a[j - 1]) return "values must be nonincreasing";
  }
  if (!(a[0] > lo)) return "a_1 > k fails";
  for (std::size_t j = 0; j < k; ++j) {
    if (a[j] < lo || a[j] > hi) return "k <= a_j <= k+1 fails for j <= k";
  }
  if (a[k] > hi || a[k] < Rat(1)) return "1 <= a_{k+1} <= k+1 fails";
  return {};
}

Rat stepback_value(std::uint64_t k, std::span<const Rat> a) {
  Rat head_sum;
  for (std::size_t j = 0; j < k; ++j) head_sum += a[j].inv();
  return (Rat(1) - head_sum) * a[k] + Rat(to_nat(k));
}

}  // namespace

std::optional<Rat> try_stepback_combine(std::uint64_t k, std::span<const Rat> a) {
  if (!stepback_violation(k, a).empty()) return std::nullopt;
  return stepback_value(k, a);
}

Rat stepback_combine(std::uint64_t k, std::span<const Rat> a) {
  if (auto why = stepback_violation(k, a); !why.empty()) {
    throw PreconditionError("stepback hypothesis violated: " + why);
  }
  return stepback_value(k, a);
}

// ---------------------------------------------------------------------------
// Strategies and context.

std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kExhaustive: return "exhaustive";
    case Strategy::kHeuristic: return "heuristic";
    case Strategy::kPurePower: return "purepower";
    case Strategy::kClosedForm: return "closed-form";
  }
  return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  for (Strategy s : {Strategy::kExhaustive, Strategy::kHeuristic, Strategy::kPurePower,
                     Strategy::kClosedForm}) {
    if (strategy_name(s) == name) return s;
  }
  return std::nullopt;
}

StrategySet StrategySet::defaults_for(unsigned N) {
  StrategySet set{Strategy::kHeuristic, Strategy::kPurePower};
  if (N == 3) set.insert(Strategy::kExhaustive);
  return set;
}

std::string StrategySet::to_string() const {
  std::string out;
  for (Strategy s : {Strategy::kExhaustive, Strategy::kHeuristic, Strategy::kPurePower,
                     Strategy::kClosedForm}) {
    if (!has(s)) continue;
    if (!out.empty()) out += ',';
    out += strategy_name(s);
  }
  return out;
}

SearchContext::SearchContext(StrategySet strategies, std::shared_ptr<const BaseTable> table,
                             SearchLimits limits)
    : strategies_(strategies),
      table_(table ? std::move(table) : std::make_shared<BaseTable>(BaseTable::builtin())),
      limits_(limits),
      fingerprint_(table_->fingerprint()) {
  if (strategies_.empty()) throw DomainError("strategy set must be nonempty");
}

SearchContext::Row& SearchContext::row(unsigned dim, unsigned floor_dim) const {
  std::lock_guard lock(rows_mu_);
  auto& slot = rows_[{dim, floor_dim, fingerprint_}];
  if (!slot) slot = std::make_unique<Row>();
  return *slot;
}

// ---------------------------------------------------------------------------
// Search.

namespace {

bool is_perfect_power(std::uint64_t r, unsigned N) {
  return ipow(to_nat(int_root_floor(r, N)), N) == to_nat(r);
}

std::uint64_t small_pow(std::uint64_t base, unsigned e) {
  return to_u64(ipow(to_nat(base), e));
}

// Partitions only break ties between stepback nodes; closed forms and table
// values rank first.
const std::vector<std::uint64_t>& tie_key(const BoundCertificate& c) {
  static const std::vector<std::uint64_t> kEmpty;
  return is_stepback(c.method) ? c.partition : kEmpty;
}

bool better(const BoundCertificate& cand, const BoundCertificate& best) {
  if (cand.result != best.result) return cand.result > best.result;
  return tie_key(cand) < tie_key(best);
}

CertPtr with_note(const CertPtr& c, const std::string& note) {
  auto copy = std::make_shared<BoundCertificate>(*c);
  copy->note = copy->note.empty() ? note : copy->note + "; " + note;
  return copy;
}

class Searcher {
 public:
  Searcher(const SearchContext& ctx, unsigned top_dim) : ctx_(ctx) {
    const auto& cap = ctx.limits().depth_cap;
    floor_dim_ = cap ? (*cap >= top_dim ? 3u : std::max(3u, top_dim - *cap + 1)) : 3u;
    if (ctx.strategies().bits() == StrategySet{Strategy::kClosedForm}.bits()) {
      floor_dim_ = top_dim + 1;
    }
  }

  bool searched(unsigned d) const { return d >= 3 && d >= floor_dim_; }

  CertPtr bound(unsigned d, std::uint64_t r) { return rows(d, r)[r - 1]; }

  // Bounds for (d, 1..upto), each already enveloped.
  std::vector<CertPtr> rows(unsigned d, std::uint64_t upto) {
    if (!ctx_.limits().memo) {
      std::vector<CertPtr> local;
      extend(d, local, upto);
      return local;
    }
    auto& row = ctx_.row(d, searched(d) ? floor_dim_ : 0);
    std::lock_guard lock(row.mu);
    extend(d, row.certs, upto);
    return {row.certs.begin(), row.certs.begin() + static_cast<std::ptrdiff_t>(upto)};
  }

  CertPtr raw(unsigned d, std::uint64_t r) {
    Bound base = best_base_bound(d, r, ctx_.table());
    if (!searched(d) || is_perfect_power(r, d)) return base.certificate;
    const std::uint64_t k = int_root_floor(r, d);
    CertPtr best = base.certificate;
    auto consider = [&](const std::optional<CertPtr>& c) {
      if (c && better(**c, *best)) best = *c;
    };
    const auto& strategies = ctx_.strategies();
    if (strategies.has(Strategy::kExhaustive)) consider(exhaustive(d, r, k, best->result));
    if (strategies.has(Strategy::kHeuristic)) consider(heuristic(d, r, k));
    if (strategies.has(Strategy::kPurePower)) consider(purepower(d, r, k));
    return best;
  }

  // Best stepback certificate with value >= floor, ties to the
  // lexicographically smallest partition. Falls back to the heuristic when
  // the partition budget runs out.
  std::optional<CertPtr> exhaustive(unsigned d, std::uint64_t r, std::uint64_t k, const Rat& floor);
  std::optional<CertPtr> heuristic(unsigned d, std::uint64_t r, std::uint64_t k);
  std::optional<CertPtr> purepower(unsigned d, std::uint64_t r, std::uint64_t k);

 private:
  void extend(unsigned d, std::vector<CertPtr>& certs, std::uint64_t upto) {
    certs.reserve(upto);
    while (certs.size() < upto) {
      const std::uint64_t r = certs.size() + 1;
      CertPtr cur = raw(d, r);
      if (!certs.empty() && certs.back()->result > cur->result) {
        CertPtr prev = certs.back();
        if (prev->method == Method::kMonotone) prev = prev->children.front();
        auto c = std::make_shared<BoundCertificate>();
        c->dim = d;
        c->points = r;
        c->method = Method::kMonotone;
        c->partition = {prev->points};
        c->children = {prev};
        c->result = prev->result;
        cur = std::move(c);
      }
      certs.push_back(std::move(cur));
    }
  }

  // Sorts (a, part, child) by a descending then part descending and builds
  // the node if the hypotheses hold.
  std::optional<CertPtr> make_stepback(unsigned d, std::uint64_t r, std::uint64_t k, Method m,
                                       std::vector<std::uint64_t> parts,
                                       std::vector<CertPtr> children) {
    const Rat cap(to_nat(k + 1));
    std::vector<std::size_t> order(parts.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<Rat> a(parts.size());
    for (std::size_t j = 0; j < parts.size(); ++j) a[j] = std::min(children[j]->result, cap);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      if (a[x] != a[y]) return a[x] > a[y];
      return parts[x] > parts[y];
    });
    auto c = std::make_shared<BoundCertificate>();
    c->dim = d;
    c->points = r;
    c->method = m;
    for (std::size_t j : order) {
      c->partition.push_back(parts[j]);
      c->children.push_back(children[j]);
      c->a_values.push_back(a[j]);
    }
    auto q = try_stepback_combine(k, c->a_values);
    if (!q) return std::nullopt;
    c->result = *q;
    return c;
  }

  const SearchContext& ctx_;
  unsigned floor_dim_ = 3;
};

std::optional<CertPtr> Searcher::exhaustive(unsigned d, std::uint64_t r, std::uint64_t k,
                                            const Rat& floor) {
  const std::uint64_t max_part = small_pow(k + 1, d - 1);
  const std::uint64_t total = std::min<std::uint64_t>(r, small_pow(k + 1, d));
  const std::uint64_t upto = std::min(max_part, total);
  const auto sub = rows(d - 1, upto);

  const Rat lo_value(to_nat(k));
  const Rat cap(to_nat(k + 1));
  if (k == 0) return std::nullopt;
  std::vector<Rat> a(upto + 1), inv(upto + 1);
  std::uint64_t lo_k = 0, lo_first = 0;
  for (std::uint64_t p = 1; p <= upto; ++p) {
    a[p] = std::min(sub[p - 1]->result, cap);
    inv[p] = a[p].inv();
    if (lo_k == 0 && a[p] >= lo_value) lo_k = p;
    if (lo_first == 0 && a[p] > lo_value) lo_first = p;
  }
  if (lo_first == 0) return std::nullopt;

  // q >= best  <=>  sum_{j<=k} 1/a_j <= 1 - (best - k)/a_last, so every test
  // against the incumbent is one comparison with threshold[last].
  const Rat k_rat(to_nat(k));
  Rat best_value = floor;
  std::vector<mpq_class> threshold(upto + 1);
  auto reset_thresholds = [&] {
    for (std::uint64_t p = 1; p <= upto; ++p) {
      threshold[p] = (Rat(1) - (best_value - k_rat) / a[p]).gmp();
    }
  };
  reset_thresholds();
  // scaled[n][p] = n / a_p
  std::vector<std::vector<mpq_class>> scaled(k + 1, std::vector<mpq_class>(upto + 1));
  for (std::uint64_t n = 0; n <= k; ++n) {
    for (std::uint64_t p = 1; p <= upto; ++p) scaled[n][p] = (Rat(to_nat(n)) * inv[p]).gmp();
  }

  // Depth-first over nonincreasing tuples in lexicographic order; the last
  // part is determined by the sum.
  std::vector<std::uint64_t> parts(k + 1);
  std::vector<mpq_class> prefix(k + 1);  // prefix[j] = sum of 1/a over the first j parts
  mpq_class optimistic;
  std::optional<std::vector<std::uint64_t>> best_parts;
  std::uint64_t leaves = 0;
  bool over_budget = false;

  auto visit = [&](auto&& self, std::size_t j, std::uint64_t remaining) -> void {
    const std::uint64_t lo = j == 0 ? lo_first : lo_k;
    const std::uint64_t hi = j == 0 ? upto : parts[j - 1];
    const std::uint64_t later = k - j - 1;  // first-k parts still to place after this one
    for (std::uint64_t p = lo; p <= hi; ++p) {
      if (p > remaining) break;
      const std::uint64_t rest = remaining - p;
      // Later parts lie in [lo_k, p]; the last part in [1, p].
      if (rest < later * lo_k + 1) break;
      if (rest > (later + 1) * p) continue;
      mpq_add(prefix[j + 1].get_mpq_t(), prefix[j].get_mpq_t(), inv[p].gmp().get_mpq_t());
      if (later == 0) {
        if (++leaves > ctx_.limits().max_partitions) {
          over_budget = true;
          return;
        }
        const int c = cmp(prefix[k], threshold[rest]);
        if (c < 0 || (c == 0 && !best_parts)) {
          parts[j] = p;
          parts[k] = rest;
          best_parts = parts;
          best_value = (Rat(1) - Rat(prefix[k])) * a[rest] + k_rat;
          reset_thresholds();
        }
        continue;
      }
      // Optimistic completion: later parts as large as p, last part as large
      // as the remaining sum allows.
      const std::uint64_t last_max = std::min(p, rest - later * lo_k);
      mpq_add(optimistic.get_mpq_t(), prefix[j + 1].get_mpq_t(), scaled[later][p].get_mpq_t());
      const int c = cmp(optimistic, threshold[last_max]);
      if (c > 0 || (c == 0 && best_parts)) continue;
      parts[j] = p;
      self(self, j + 1, rest);
      if (over_budget) return;
    }
  };
  visit(visit, 0, total);

  if (over_budget) {
    auto fallback = heuristic(d, r, k);
    if (!fallback) return std::nullopt;
    return with_note(*fallback, "max_partitions " + std::to_string(ctx_.limits().max_partitions) +
                                    " exceeded; heuristic fallback");
  }
  if (!best_parts) return std::nullopt;
  std::vector<CertPtr> children;
  for (std::uint64_t p : *best_parts) children.push_back(sub[p - 1]);
  return make_stepback(d, r, k, Method::kExhaustive, *best_parts, std::move(children));
}

std::optional<CertPtr> Searcher::heuristic(unsigned d, std::uint64_t r, std::uint64_t k) {
  const std::uint64_t max_part = small_pow(k + 1, d - 1);
  std::optional<CertPtr> best;
  for (std::uint64_t l = 1; l <= k + 1; ++l) {
    const std::uint64_t last = small_pow(l, d - 1);
    if (last + k > r) break;
    const std::uint64_t r1 = std::min(max_part, (r - last) / k);
    CertPtr sub = bound(d - 1, r1);
    std::vector<std::uint64_t> parts(k, r1);
    std::vector<CertPtr> children(k, sub);
    parts.push_back(last);
    children.push_back(floor_root_bound(d - 1, last).certificate);
    auto c = make_stepback(d, r, k, Method::kHeuristic, std::move(parts), std::move(children));
    if (c && (!best || better(**c, **best))) best = c;
  }
  return best;
}

std::optional<CertPtr> Searcher::purepower(unsigned d, std::uint64_t r, std::uint64_t k) {
  const std::uint64_t max_part = small_pow(k + 1, d - 1);
  if (r <= k) return std::nullopt;
  const auto sub = rows(d - 1, std::min(max_part, (r - 1) / k));
  const Rat cap(to_nat(k + 1));
  std::optional<CertPtr> best;
  std::vector<Rat> a(k + 1);
  for (std::uint64_t l = 1; l <= k + 1; ++l) {
    const std::uint64_t last = small_pow(l, d - 1);
    if (last + k > r) break;
    const std::uint64_t r1_max = std::min(max_part, (r - last) / k);
    const Rat a_last(to_nat(l));
    CertPtr last_cert = floor_root_bound(d - 1, last).certificate;
    for (std::uint64_t r1 = 1; r1 <= r1_max; ++r1) {
      // Evaluate the sorted a-vector first; only contenders get a node.
      const Rat a_rep = std::min(sub[r1 - 1]->result, cap);
      std::fill(a.begin(), a.end(), a_rep);
      if (a_rep >= a_last) a[k] = a_last; else a[0] = a_last;
      auto q = try_stepback_combine(k, a);
      if (!q || (best && *q < (*best)->result)) continue;
      std::vector<std::uint64_t> parts(k, r1);
      std::vector<CertPtr> children(k, sub[r1 - 1]);
      parts.push_back(last);
      children.push_back(last_cert);
      auto c = make_stepback(d, r, k, Method::kPurePower, std::move(parts), std::move(children));
      if (c && (!best || better(**c, **best))) best = c;
    }
  }
  return best;
}

void require_search_query(unsigned N, std::uint64_t r) {
  if (N < 3) throw DomainError("stepback search needs N >= 3");
  if (r < 2) throw DomainError("stepback search needs r >= 2");
}

CertPtr floored(std::optional<CertPtr> found, unsigned N, std::uint64_t r, const BaseTable& table) {
  CertPtr base = best_base_bound(N, r, table).certificate;
  if (found && better(**found, *base)) return *found;
  if (found && !(*found)->note.empty()) return with_note(base, (*found)->note);
  return base;
}

}  // namespace

CertPtr search_exhaustive(unsigned N, std::uint64_t r, const SearchContext& ctx) {
  require_search_query(N, r);
  Searcher s(ctx, N);
  const std::uint64_t k = int_root_floor(r - 1, N);
  Rat floor = best_base_bound(N, r, ctx.table()).value;
  return floored(s.exhaustive(N, r, k, floor), N, r, ctx.table());
}

CertPtr search_heuristic(unsigned N, std::uint64_t r, const SearchContext& ctx) {
  require_search_query(N, r);
  Searcher s(ctx, N);
  return floored(s.heuristic(N, r, int_root_floor(r - 1, N)), N, r, ctx.table());
}

CertPtr search_purepower(unsigned N, std::uint64_t r, const SearchContext& ctx) {
  require_search_query(N, r);
  Searcher s(ctx, N);
  return floored(s.purepower(N, r, int_root_floor(r - 1, N)), N, r, ctx.table());
}

CertPtr best_bound(unsigned N, std::uint64_t r, const SearchContext& ctx) {
  if (N == 0 || r == 0) throw DomainError("best_bound needs N >= 1 and r >= 1");
  if (N <= 2) return best_base_bound(N, r, ctx.table()).certificate;
  Searcher s(ctx, N);
  return s.bound(N, r);
}

// ---------------------------------------------------------------------------
// Replay.

namespace {

[[noreturn]] void replay_fail(const BoundCertificate& c, const std::string& why) {
  std::ostringstream msg;
  msg << "replay mismatch at (" << c.dim << ", " << c.points << ") " << method_name(c.method)
      << ": " << why;
  throw std::logic_error(msg.str());
}

}  // namespace

Rat replay(const BoundCertificate& c, const BaseTable& table) {
  auto expect = [&](const Rat& value) {
    if (value != c.result) {
      replay_fail(c, "stored " + c.result.to_string() + ", recomputed " + value.to_string());
    }
    return value;
  };
  switch (c.method) {
    case Method::kFloorRoot:
      return expect(floor_root_bound(c.dim, c.points).value);
    case Method::kQuotient:
      return expect(quotient_bound(c.dim, c.points).value);
    case Method::kDistribution:
      return expect(distribution_bound(c.dim, c.points).value);
    case Method::kTable: {
      auto entry = table.lookup(c.dim, c.points);
      if (!entry) replay_fail(c, "no table entry");
      return expect(entry->bound);
    }
    case Method::kMonotone: {
      if (c.children.size() != 1) replay_fail(c, "expected one child");
      const auto& child = *c.children.front();
      if (child.dim != c.dim || child.points >= c.points) replay_fail(c, "child is not a smaller query");
      return expect(replay(child, table));
    }
    case Method::kExhaustive:
    case Method::kHeuristic:
    case Method::kPurePower: {
      const std::size_t n = c.partition.size();
      if (n < 2 || c.children.size() != n || c.a_values.size() != n) {
        replay_fail(c, "partition, children and a-values differ in length");
      }
      const std::uint64_t k = n - 1;
      const Rat cap(to_nat(k + 1));
      std::uint64_t sum = 0;
      std::vector<Rat> a;
      for (std::size_t j = 0; j < n; ++j) {
        const auto& child = *c.children[j];
        if (child.dim + 1 != c.dim || child.points != c.partition[j]) {
          replay_fail(c, "child " + std::to_string(j) + " does not match its part");
        }
        sum += c.partition[j];
        a.push_back(std::min(replay(child, table), cap));
        if (a.back() != c.a_values[j]) replay_fail(c, "clamped a-value differs");
      }
      if (sum > c.points) replay_fail(c, "parts exceed the point count");
      auto q = try_stepback_combine(k, a);
      if (!q) replay_fail(c, "stepback hypotheses fail");
      return expect(*q);
    }
  }
  replay_fail(c, "unknown method");
}

}  // namespace wald
