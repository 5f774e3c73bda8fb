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

#ifndef WALD_CLI_HPP
#define WALD_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wald/base_bounds.hpp"
#include "wald/recursion.hpp"
#include "wald/render.hpp"

namespace wald {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class OutputFormat { kText, kCsv, kJson };

OutputFormat parse_format(const std::string& name);

struct RunConfig {
  std::optional<std::string> base_table_path;
  std::optional<StrategySet> strategies;  // unset: defaults for the dimension
  std::uint64_t max_partitions = 2'000'000;
  std::optional<unsigned> depth_cap;
  bool memo = true;
  OutputFormat format = OutputFormat::kText;
  unsigned jobs = 1;
};

// Builtin table, merged with the file named in the config if any.
std::shared_ptr<const BaseTable> load_table(const RunConfig& config);

SearchContext make_context(unsigned N, const RunConfig& config,
                           std::shared_ptr<const BaseTable> table);

struct RangeMax {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::optional<AccuracyRow> worst;
};

struct FigureData {
  std::vector<AccuracyRow> rows;
  std::vector<RangeMax> ranges;
};

FigureData compute_figure(unsigned N, std::uint64_t r_max,
                          const std::vector<std::pair<std::uint64_t, std::uint64_t>>& ranges,
                          const SearchContext& ctx);

int cmd_bound(unsigned N, std::uint64_t r, const RunConfig& config, std::ostream& out);
int cmd_demailly(unsigned N, unsigned m, std::uint64_t r_lo, std::uint64_t r_hi,
                 const RunConfig& config, std::ostream& out);
int cmd_figure(unsigned N, std::uint64_t r_max,
               const std::vector<std::pair<std::uint64_t, std::uint64_t>>& ranges,
               const RunConfig& config, std::ostream& out);
int cmd_table_check(const std::string& path, std::ostream& out);

// Full command line; errors go to err, exit code returned.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wald

#endif  // WALD_CLI_HPP
