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

#ifndef WALD_RENDER_HPP
#define WALD_RENDER_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "wald/certificate.hpp"
#include "wald/demailly.hpp"
#include "wald/numerics.hpp"

namespace wald {

// Decimal output is derived from exact values at print time only.

/// x rounded half-even to `digits` fractional digits.
std::string format_fixed(const Rat& x, int digits = 4);

/// N-th root of r minus `offset`, rounded half-even to `digits` digits.
std::string format_root_minus(std::uint64_t r, unsigned N, const Rat& offset, int digits = 4);

/// floor(10^digits * (N-th root of r - offset)), exact.
Nat scaled_root_minus(std::uint64_t r, unsigned N, const Rat& offset, int digits);

/// One line of the accuracy study: lower bound against the N-th root.
struct AccuracyRow {
  std::uint64_t r = 0;
  Rat lower;
  std::string upper_float;
  std::string delta_float;
  Nat delta_scaled;  // floor(10^30 * delta), for exact-enough comparisons
};

AccuracyRow accuracy_row(unsigned N, std::uint64_t r, const Rat& lower);

void write_certificate_text(std::ostream& out, const BoundCertificate& cert);
nlohmann::json certificate_json(const BoundCertificate& cert);

void write_report_text(std::ostream& out, const DemaillyReport& rep);
nlohmann::json report_json(const DemaillyReport& rep);

inline constexpr const char* kDemaillyCsvHeader =
    "N,m,r,alpha_upper,lower_num,lower_den,rhs_num,rhs_den,sufficient";
void write_report_csv(std::ostream& out, const DemaillyReport& rep);

inline constexpr const char* kFigureCsvHeader =
    "r,lower_num,lower_den,lower_float,upper_float,delta_float";
void write_accuracy_csv(std::ostream& out, const AccuracyRow& row);

}  // namespace wald

#endif  // WALD_RENDER_HPP
