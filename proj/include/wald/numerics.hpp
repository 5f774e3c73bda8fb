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

#ifndef WALD_NUMERICS_HPP
#define WALD_NUMERICS_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wald {

// Non-negative by convention; every count, degree and multiplicity lives here.
using Nat = mpz_class;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exact rational in lowest terms with a positive denominator.
///
/// Equality is equality of canonical forms, and the ordering agrees with the
/// order of the reals.
class Rat {
 public:
  Rat() = default;
  Rat(long value) : v_(value) {}  // NOLINT(google-explicit-constructor)
  Rat(const Nat& value) : v_(value) {}  // NOLINT(google-explicit-constructor)
  Rat(const Nat& num, const Nat& den);
  explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Parses `NUM` or `NUM/DEN` (optional leading sign on NUM).
  static Rat parse(std::string_view text);

  Nat num() const { return v_.get_num(); }
  Nat den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  bool is_integer() const { return v_.get_den() == 1; }

  Rat inv() const;
  Rat pow(unsigned exponent) const;

  /// Largest integer <= value.
  Nat floor() const;

  std::string to_string() const { return v_.get_str(); }

  // Underlying GMP value, for allocation-free inner loops.
  const mpq_class& gmp() const { return v_; }

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.v_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r);

 private:
  mpq_class v_;
};

inline Rat rat_add(const Rat& a, const Rat& b) { return a + b; }
inline Rat rat_mul(const Rat& a, const Rat& b) { return a * b; }
inline Rat rat_inv(const Rat& a) { return a.inv(); }
inline std::strong_ordering rat_cmp(const Rat& a, const Rat& b) { return a <=> b; }

/// C(n, k); zero when k > n.
Nat binom(const Nat& n, const Nat& k);

Nat ipow(const Nat& base, unsigned exponent);

/// Largest k with k^N <= r. Binary search on exact integer powers.
Nat int_root_floor(const Nat& r, unsigned N);
std::uint64_t int_root_floor(std::uint64_t r, unsigned N);

/// Smallest k with r <= k^N.
std::uint64_t int_root_ceil(std::uint64_t r, unsigned N);

static_assert(sizeof(unsigned long) == sizeof(std::uint64_t), "LP64 assumed");
inline Nat to_nat(std::uint64_t v) { return Nat(static_cast<unsigned long>(v)); }

// Narrowing helper for values known to be small (point counts, degrees).
std::uint64_t to_u64(const Nat& n);

}  // namespace wald

#endif  // WALD_NUMERICS_HPP
