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

#include "wald/render.hpp"

#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace wald {

namespace {

// sign(x - q) for the real x being rendered.
using Compare = std::function<int(const Rat& q)>;

Nat pow10(int digits) { return ipow(Nat(10), static_cast<unsigned>(digits)); }

// Largest t in [lo, hi] with t/denom <= x, given lo/denom <= x < hi/denom.
Nat floor_scaled(const Compare& cmp_x, const Nat& denom, Nat lo, Nat hi) {
  while (hi - lo > 1) {
    Nat mid = (lo + hi) / 2;
    if (mid < lo + 1) mid = lo + 1;  // mpz division truncates toward zero
    if (cmp_x(Rat(mid, denom)) >= 0) lo = mid; else hi = mid;
  }
  return lo;
}

// x * 10^digits rounded half-even, where x lies in [lo_int, hi_int).
Nat round_scaled(const Compare& cmp_x, int digits, const Nat& lo_int, const Nat& hi_int) {
  const Nat scale = pow10(digits);
  const Nat denom = 2 * scale;
  const Nat twice = floor_scaled(cmp_x, denom, lo_int * denom, hi_int * denom);  // floor(2 y)
  Nat down;
  mpz_fdiv_q_2exp(down.get_mpz_t(), twice.get_mpz_t(), 1);
  if (mpz_even_p(twice.get_mpz_t())) return down;  // y in [down, down + 1/2)
  if (cmp_x(Rat(twice, denom)) == 0) {             // exact tie
    return mpz_even_p(down.get_mpz_t()) ? down : Nat(down + 1);
  }
  return down + 1;
}

std::string render_scaled(const Nat& v, int digits) {
  const Nat scale = pow10(digits);
  Nat mag = abs(v);
  Nat whole = mag / scale;
  std::string frac = Nat(mag % scale).get_str();
  std::string out = (v < 0 ? "-" : "") + whole.get_str();
  if (digits > 0) out += "." + std::string(static_cast<std::size_t>(digits) - frac.size(), '0') + frac;
  return out;
}

Compare root_minus(std::uint64_t r, unsigned N, const Rat& offset) {
  return [r, N, offset](const Rat& q) {
    Rat v = q + offset;  // compare the root with v
    if (v.sign() < 0) return 1;
    Rat lhs(to_nat(r));
    Rat rhs = v.pow(N);
    return lhs < rhs ? -1 : (lhs == rhs ? 0 : 1);
  };
}

std::pair<Nat, Nat> root_minus_bracket(std::uint64_t r, unsigned N, const Rat& offset) {
  Nat root = to_nat(int_root_floor(r, N));
  Nat off_floor = offset.floor();
  return {root - off_floor - 1, root - off_floor + 1};
}

}  // namespace

std::string format_fixed(const Rat& x, int digits) {
  Compare cmp_x = [&x](const Rat& q) { return x < q ? -1 : (x == q ? 0 : 1); };
  Nat fl = x.floor();
  return render_scaled(round_scaled(cmp_x, digits, fl, fl + 1), digits);
}

std::string format_root_minus(std::uint64_t r, unsigned N, const Rat& offset, int digits) {
  auto [lo, hi] = root_minus_bracket(r, N, offset);
  return render_scaled(round_scaled(root_minus(r, N, offset), digits, lo, hi), digits);
}

Nat scaled_root_minus(std::uint64_t r, unsigned N, const Rat& offset, int digits) {
  auto [lo, hi] = root_minus_bracket(r, N, offset);
  const Nat scale = pow10(digits);
  return floor_scaled(root_minus(r, N, offset), scale, lo * scale, hi * scale);
}

AccuracyRow accuracy_row(unsigned N, std::uint64_t r, const Rat& lower) {
  AccuracyRow row;
  row.r = r;
  row.lower = lower;
  row.upper_float = format_root_minus(r, N, Rat(0));
  row.delta_float = format_root_minus(r, N, lower);
  row.delta_scaled = scaled_root_minus(r, N, lower, 30);
  return row;
}

namespace {

std::string parts_text(const std::vector<std::uint64_t>& parts) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < parts.size(); ++i) out << (i ? ", " : "") << parts[i];
  out << ')';
  return out.str();
}

std::string values_text(const std::vector<Rat>& values) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? ", " : "") << values[i];
  out << ')';
  return out.str();
}

void write_node(std::ostream& out, const BoundCertificate& c, const std::string& indent) {
  out << indent << "P^" << c.dim << ", r = " << c.points << ": " << c.result << " ~ "
      << format_fixed(c.result) << "  [" << method_name(c.method) << ']';
  if (c.method == Method::kQuotient && c.partition.size() == 1) out << " k = " << c.partition[0];
  if (c.method == Method::kDistribution && c.partition.size() == 2) {
    out << " k = " << c.partition[0] << ", s = " << c.partition[1];
  }
  if (!c.note.empty()) out << "  (" << c.note << ')';
  out << '\n';
  if (is_stepback(c.method)) {
    out << indent << "  k = " << c.partition.size() - 1 << ", parts " << parts_text(c.partition)
        << ", a = " << values_text(c.a_values) << '\n';
  }
  const BoundCertificate* previous = nullptr;
  for (const auto& child : c.children) {
    if (child.get() == previous) {
      out << indent << "  P^" << child->dim << ", r = " << child->points << ": as above\n";
      continue;
    }
    write_node(out, *child, indent + "  ");
    previous = child.get();
  }
}

}  // namespace

void write_certificate_text(std::ostream& out, const BoundCertificate& cert) {
  write_node(out, cert, "");
}

nlohmann::json certificate_json(const BoundCertificate& c) {
  nlohmann::json j;
  j["dim"] = c.dim;
  j["points"] = c.points;
  j["method"] = std::string(method_name(c.method));
  j["result"] = c.result.to_string();
  j["decimal"] = format_fixed(c.result);
  if (is_stepback(c.method)) {
    j["k"] = c.partition.size() - 1;
    j["partition"] = c.partition;
    std::vector<std::string> a;
    for (const auto& v : c.a_values) a.push_back(v.to_string());
    j["a_values"] = a;
  } else if (!c.partition.empty()) {
    j["params"] = c.partition;
  }
  if (!c.note.empty()) j["note"] = c.note;
  if (!c.children.empty()) {
    j["children"] = nlohmann::json::array();
    for (const auto& child : c.children) j["children"].push_back(certificate_json(*child));
  }
  return j;
}

void write_report_text(std::ostream& out, const DemaillyReport& rep) {
  out << "N = " << rep.N << ", m = " << rep.m << ", r = " << rep.r << ": " << rep.verdict()
      << "  lower " << rep.lower_bound() << " ~ " << format_fixed(rep.lower_bound())
      << (rep.sufficient ? " >= " : " < ") << "rhs " << rep.rhs << " ~ " << format_fixed(rep.rhs)
      << "  (alpha(mZ) <= " << rep.alpha_upper << " by " << rep.alpha_source << ")\n";
}

nlohmann::json report_json(const DemaillyReport& rep) {
  return {
      {"N", rep.N},
      {"m", rep.m},
      {"r", rep.r},
      {"alpha_upper", rep.alpha_upper.get_str()},
      {"alpha_source", rep.alpha_source},
      {"lower", rep.lower_bound().to_string()},
      {"rhs", rep.rhs.to_string()},
      {"verdict", rep.verdict()},
      {"certificate", certificate_json(*rep.lower)},
  };
}

void write_report_csv(std::ostream& out, const DemaillyReport& rep) {
  out << rep.N << ',' << rep.m << ',' << rep.r << ',' << rep.alpha_upper << ','
      << rep.lower_bound().num() << ',' << rep.lower_bound().den() << ',' << rep.rhs.num() << ','
      << rep.rhs.den() << ',' << (rep.sufficient ? "true" : "false") << '\n';
}

void write_accuracy_csv(std::ostream& out, const AccuracyRow& row) {
  out << row.r << ',' << row.lower.num() << ',' << row.lower.den() << ','
      << format_fixed(row.lower) << ',' << row.upper_float << ',' << row.delta_float << '\n';
}

}  // namespace wald
