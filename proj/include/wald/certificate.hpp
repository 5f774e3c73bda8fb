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

#ifndef WALD_CERTIFICATE_HPP
#define WALD_CERTIFICATE_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "wald/numerics.hpp"

namespace wald {

/// How a node of a derivation tree obtained its value.
enum class Method {
  kFloorRoot,     // floor of the N-th root of r
  kQuotient,      // r / (k+1)^(N-1)
  kDistribution,  // k + s/(k+1)
  kTable,         // externally supplied value
  kMonotone,      // value inherited from fewer points
  kExhaustive,    // stepback over all partitions
  kHeuristic,     // stepback over one partition per last-part size
  kPurePower,     // stepback with a pure-power last part
};

std::string_view method_name(Method m);
bool is_stepback(Method m);

struct BoundCertificate;
using CertPtr = std::shared_ptr<const BoundCertificate>;

/// One node of a derivation. Leaves are closed-form or table bounds;
/// stepback nodes hold one child per part and the clamped a-values.
struct BoundCertificate {
  unsigned dim = 0;
  std::uint64_t points = 0;
  Method method = Method::kFloorRoot;
  // Stepback: the r-parts, ordered like a_values. Quotient: {k}.
  // Distribution: {k, s}. Monotone: {r'} of the dominating query.
  std::vector<std::uint64_t> partition;
  std::vector<CertPtr> children;
  std::vector<Rat> a_values;
  Rat result;
  std::string note;
};

}  // namespace wald

#endif  // WALD_CERTIFICATE_HPP
