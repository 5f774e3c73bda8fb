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

#include "wald/base_bounds.hpp"

#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

namespace wald {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kFloorRoot: return "floor-root";
    case Method::kQuotient: return "quotient";
    case Method::kDistribution: return "distribution";
    case Method::kTable: return "table";
    case Method::kMonotone: return "monotone";
    case Method::kExhaustive: return "stepback-exhaustive";
    case Method::kHeuristic: return "stepback-heuristic";
    case Method::kPurePower: return "stepback-purepower";
  }
  return "unknown";
}

bool is_stepback(Method m) {
  return m == Method::kExhaustive || m == Method::kHeuristic || m == Method::kPurePower;
}

namespace {

void check_entry(unsigned N, std::uint64_t r, const Rat& bound) {
  if (N == 0 || r == 0) throw DomainError("table key needs N >= 1 and r >= 1");
  if (bound < Rat(1)) {
    throw DomainError("table bound " + bound.to_string() + " is below 1");
  }
  if (bound.pow(N) > Rat(to_nat(r))) {
    throw DomainError("table bound " + bound.to_string() + " exceeds the " + std::to_string(N) +
                      "-th root of " + std::to_string(r));
  }
}

}  // namespace

const BaseTable& BaseTable::builtin() {
  static const BaseTable table = [] {
    BaseTable t;
    const char* values[] = {"1", "1", "3/2", "2", "2", "12/5", "21/8", "48/17", "3"};
    for (std::uint64_t r = 1; r <= 9; ++r) t.insert(2, r, Rat::parse(values[r - 1]), "literature");
    t.insert(2, 14, Rat(86, 23), "HR09");
    return t;
  }();
  return table;
}

void BaseTable::insert(unsigned N, std::uint64_t r, const Rat& bound, std::string source) {
  check_entry(N, r, bound);
  auto [it, fresh] = entries_.try_emplace({N, r}, Entry{bound, std::move(source)});
  if (!fresh) {
    throw DomainError("duplicate table key (" + std::to_string(N) + ", " + std::to_string(r) + ")");
  }
}

BaseTable BaseTable::parse(std::istream& in) {
  BaseTable t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string n_text, r_text, b_text, source;
    if (!(fields >> n_text)) continue;
    if (!(fields >> r_text >> b_text)) {
      throw TableError("line " + std::to_string(lineno) + ": expected `N r NUM/DEN source`", lineno);
    }
    fields >> source;
    std::string extra;
    if (fields >> extra) {
      throw TableError("line " + std::to_string(lineno) + ": trailing field '" + extra + "'", lineno);
    }
    try {
      Rat n = Rat::parse(n_text);
      Rat r = Rat::parse(r_text);
      if (!n.is_integer() || !r.is_integer() || n.sign() <= 0 || r.sign() <= 0) {
        throw DomainError("N and r must be positive integers");
      }
      t.insert(static_cast<unsigned>(to_u64(n.num())), to_u64(r.num()), Rat::parse(b_text),
               source.empty() ? "user" : source);
    } catch (const DomainError& e) {
      throw TableError("line " + std::to_string(lineno) + ": " + e.what(), lineno);
    }
  }
  return t;
}

BaseTable BaseTable::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TableError("cannot open table file '" + path + "'", 0);
  return parse(in);
}

BaseTable BaseTable::merged_with(const BaseTable& other) const {
  BaseTable out = *this;
  for (const auto& [key, entry] : other.entries_) {
    auto it = out.entries_.find(key);
    if (it == out.entries_.end()) {
      out.entries_.emplace(key, entry);
    } else if (entry.bound > it->second.bound) {
      it->second = entry;
    }
  }
  return out;
}

std::optional<BaseTable::Entry> BaseTable::lookup(unsigned N, std::uint64_t r) const {
  auto it = entries_.find({N, r});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::pair<std::uint64_t, BaseTable::Entry>> BaseTable::best_at_or_below(
    unsigned N, std::uint64_t r) const {
  std::optional<std::pair<std::uint64_t, Entry>> best;
  for (auto it = entries_.lower_bound({N, 0}); it != entries_.end(); ++it) {
    if (it->first.first != N || it->first.second > r) break;
    if (!best || it->second.bound > best->second.bound) best = {it->first.second, it->second};
  }
  return best;
}

std::size_t BaseTable::fingerprint() const {
  std::ostringstream out;
  write(out);
  return std::hash<std::string>{}(out.str());
}

void BaseTable::write(std::ostream& out) const {
  for (const auto& [key, entry] : entries_) {
    out << key.first << ' ' << key.second << ' ' << entry.bound << ' ' << entry.source << '\n';
  }
}

namespace {

CertPtr leaf(unsigned N, std::uint64_t r, Method m, Rat value,
             std::vector<std::uint64_t> params = {}, std::string note = {}) {
  auto c = std::make_shared<BoundCertificate>();
  c->dim = N;
  c->points = r;
  c->method = m;
  c->partition = std::move(params);
  c->result = std::move(value);
  c->note = std::move(note);
  return c;
}

Bound as_bound(CertPtr c) {
  return Bound{c->result, c->method, std::move(c)};
}

void require_query(unsigned N, std::uint64_t r) {
  if (N == 0) throw DomainError("dimension must be at least 1");
  if (r == 0) throw DomainError("point count must be at least 1");
}

}  // namespace

Bound floor_root_bound(unsigned N, std::uint64_t r) {
  require_query(N, r);
  return as_bound(leaf(N, r, Method::kFloorRoot, Rat(to_nat(int_root_floor(r, N)))));
}

Bound quotient_bound(unsigned N, std::uint64_t r) {
  require_query(N, r);
  // Minimal k with r <= (k+1)^N.
  std::uint64_t k = int_root_ceil(r, N) - 1;
  Rat value(to_nat(r), ipow(to_nat(k + 1), N - 1));
  return as_bound(leaf(N, r, Method::kQuotient, value, {k}));
}

Bound distribution_bound(unsigned N, std::uint64_t r) {
  require_query(N, r);
  if (N < 2) throw DomainError("distribution bound needs N >= 2");
  const Nat points = to_nat(r);
  auto threshold = [N](const Nat& k, const Nat& s) -> Nat {
    return s * ipow(k + 1, N - 1) + (k + 1 - s) * ipow(k, N - 1);
  };
  // k + s/(k+1) < k+1, so the largest admissible k wins; then the largest s.
  Nat k = 0;
  while (threshold(k + 1, 1) <= points) k += 1;
  if (k == 0) return as_bound(leaf(N, r, Method::kDistribution, Rat(1)));
  Nat s = 1;
  while (s < k && threshold(k, s + 1) <= points) s += 1;
  Rat value = Rat(k) + Rat(s, k + 1);
  return as_bound(leaf(N, r, Method::kDistribution, value, {to_u64(k), to_u64(s)}));
}

std::optional<Bound> table_bound(unsigned N, std::uint64_t r, const BaseTable& table) {
  auto entry = table.lookup(N, r);
  if (!entry) return std::nullopt;
  return as_bound(leaf(N, r, Method::kTable, entry->bound, {}, entry->source));
}

Bound best_base_bound(unsigned N, std::uint64_t r, const BaseTable& table) {
  require_query(N, r);
  Bound best = floor_root_bound(N, r);
  auto consider = [&](Bound b) {
    if (b.value > best.value) best = std::move(b);
  };
  consider(quotient_bound(N, r));
  if (N >= 2) consider(distribution_bound(N, r));
  if (auto t = table_bound(N, r, table)) consider(std::move(*t));
  // The closed forms are nondecreasing in r; only table entries at smaller
  // r' can dominate.
  if (auto below = table.best_at_or_below(N, r - 1); below && below->second.bound > best.value) {
    auto child = leaf(N, below->first, Method::kTable, below->second.bound, {}, below->second.source);
    auto c = std::make_shared<BoundCertificate>();
    c->dim = N;
    c->points = r;
    c->method = Method::kMonotone;
    c->partition = {below->first};
    c->children = {child};
    c->result = below->second.bound;
    best = Bound{c->result, Method::kMonotone, std::move(c)};
  }
  return best;
}

}  // namespace wald
