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

#ifndef WALD_BASE_BOUNDS_HPP
#define WALD_BASE_BOUNDS_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "wald/certificate.hpp"
#include "wald/numerics.hpp"

namespace wald {

/// Raised while reading a table file; carries the offending line.
class TableError : public std::runtime_error {
 public:
  TableError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Known lower bounds for the Waldschmidt constant of r very general points
/// in P^N, keyed by (N, r). Every entry satisfies 1 <= b and b^N <= r.
class BaseTable {
 public:
  struct Entry {
    Rat bound;
    std::string source;
  };
  using Key = std::pair<unsigned, std::uint64_t>;

  BaseTable() = default;

  /// P^2 values for r <= 9 plus r = 14.
  static const BaseTable& builtin();

  /// Format: `N r NUM/DEN source-tag` per line, `#` starts a comment.
  /// Duplicate keys and entries violating the invariant are rejected.
  static BaseTable parse(std::istream& in);
  static BaseTable load_file(const std::string& path);

  void insert(unsigned N, std::uint64_t r, const Rat& bound, std::string source);

  /// Union of both tables; on a shared key the larger bound wins.
  BaseTable merged_with(const BaseTable& other) const;

  std::optional<Entry> lookup(unsigned N, std::uint64_t r) const;

  /// Largest stored bound among keys (N, r') with r' <= r; smallest such r'.
  std::optional<std::pair<std::uint64_t, Entry>> best_at_or_below(unsigned N,
                                                                  std::uint64_t r) const;

  const std::map<Key, Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  /// Stable hash of the contents; part of memo keys.
  std::size_t fingerprint() const;

  void write(std::ostream& out) const;

 private:
  std::map<Key, Entry> entries_;
};

/// A lower bound together with the leaf that produced it.
struct Bound {
  Rat value;
  Method provenance;
  CertPtr certificate;
};

Bound floor_root_bound(unsigned N, std::uint64_t r);
Bound quotient_bound(unsigned N, std::uint64_t r);
/// Requires N >= 2.
Bound distribution_bound(unsigned N, std::uint64_t r);
std::optional<Bound> table_bound(unsigned N, std::uint64_t r, const BaseTable& table);

/// Maximum of the closed-form and table bounds, then the monotone envelope
/// over r' <= r. Ties keep the earlier of floor-root, quotient,
/// distribution, table.
Bound best_base_bound(unsigned N, std::uint64_t r, const BaseTable& table);

}  // namespace wald

#endif  // WALD_BASE_BOUNDS_HPP
