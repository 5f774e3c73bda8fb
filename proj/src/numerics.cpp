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

#include "wald/numerics.hpp"

#include <charconv>
#include <limits>
#include <ostream>

namespace wald {

Rat::Rat(const Nat& num, const Nat& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    if (s.empty()) throw DomainError("empty integer in rational '" + std::string(text) + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw DomainError("bad integer in rational '" + std::string(text) + "'");
    for (std::size_t j = i; j < s.size(); ++j) {
      if (s[j] < '0' || s[j] > '9') {
        throw DomainError("bad integer in rational '" + std::string(text) + "'");
      }
    }
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return Nat(digits, 10);
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int(text));
  Nat den = parse_int(text.substr(slash + 1));
  if (den <= 0) throw DomainError("non-positive denominator in '" + std::string(text) + "'");
  return Rat(parse_int(text.substr(0, slash)), den);
}

Rat Rat::inv() const {
  if (is_zero()) throw DomainError("inversion of zero");
  return Rat(mpq_class(1) / v_);
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  v_ /= o.v_;
  return *this;
}

Rat Rat::pow(unsigned exponent) const {
  Nat n, d;
  mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), exponent);
  mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), exponent);
  return Rat(n, d);
}

Nat Rat::floor() const {
  Nat q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return q;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.to_string(); }

Nat binom(const Nat& n, const Nat& k) {
  if (n < 0 || k < 0) throw DomainError("binom of negative argument");
  if (k > n) return 0;
  Nat kk = (2 * k > n) ? Nat(n - k) : k;
  if (!kk.fits_ulong_p()) throw DomainError("binom lower index too large");
  Nat out;
  mpz_bin_ui(out.get_mpz_t(), n.get_mpz_t(), kk.get_ui());
  return out;
}

Nat ipow(const Nat& base, unsigned exponent) {
  Nat out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Nat int_root_floor(const Nat& r, unsigned N) {
  if (N == 0) throw DomainError("int_root_floor: N = 0");
  if (r <= 0) throw DomainError("int_root_floor: r must be positive");
  // Invariant: lo^N <= r < hi^N.
  Nat lo = 1;
  Nat hi = 2;
  while (ipow(hi, N) <= r) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    Nat mid = (lo + hi) / 2;
    if (ipow(mid, N) <= r) lo = mid; else hi = mid;
  }
  return lo;
}

std::uint64_t to_u64(const Nat& n) {
  if (n < 0 || mpz_sizeinbase(n.get_mpz_t(), 2) > 64) {
    throw DomainError("integer " + n.get_str() + " does not fit in 64 bits");
  }
  return n.get_ui();
}

std::uint64_t int_root_floor(std::uint64_t r, unsigned N) {
  return to_u64(int_root_floor(to_nat(r), N));
}

std::uint64_t int_root_ceil(std::uint64_t r, unsigned N) {
  if (r == 0) return 0;
  std::uint64_t k = int_root_floor(r, N);
  return ipow(to_nat(k), N) == to_nat(r) ? k : k + 1;
}

}  // namespace wald
