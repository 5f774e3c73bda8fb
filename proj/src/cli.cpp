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

#include "wald/cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "wald/demailly.hpp"

namespace wald {

OutputFormat parse_format(const std::string& name) {
  if (name == "text") return OutputFormat::kText;
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  throw UsageError("unknown format '" + name + "' (expected text, csv or json)");
}

std::shared_ptr<const BaseTable> load_table(const RunConfig& config) {
  if (!config.base_table_path) return std::make_shared<const BaseTable>(BaseTable::builtin());
  BaseTable user = BaseTable::load_file(*config.base_table_path);
  return std::make_shared<const BaseTable>(BaseTable::builtin().merged_with(user));
}

SearchContext make_context(unsigned N, const RunConfig& config,
                           std::shared_ptr<const BaseTable> table) {
  SearchLimits limits;
  limits.max_partitions = config.max_partitions;
  limits.depth_cap = config.depth_cap;
  limits.memo = config.memo;
  StrategySet strategies = config.strategies.value_or(StrategySet::defaults_for(N));
  if (strategies.empty()) throw UsageError("strategy set must be nonempty");
  return SearchContext(strategies, std::move(table), limits);
}

namespace {

void check_dim(unsigned N) {
  if (N == 0) throw UsageError("--dim must be at least 1");
}

void check_points(std::uint64_t r) {
  if (r == 0) throw UsageError("--points must be at least 1");
}

}  // namespace

int cmd_bound(unsigned N, std::uint64_t r, const RunConfig& config, std::ostream& out) {
  check_dim(N);
  check_points(r);
  auto table = load_table(config);
  SearchContext ctx = make_context(N, config, table);
  CertPtr cert = best_bound(N, r, ctx);
  switch (config.format) {
    case OutputFormat::kText:
      out << "alpha-hat(P^" << N << "; " << r << ") >= " << cert->result << " ~ "
          << format_fixed(cert->result) << '\n';
      write_certificate_text(out, *cert);
      break;
    case OutputFormat::kCsv:
      out << "N,r,lower_num,lower_den,lower_float,method\n"
          << N << ',' << r << ',' << cert->result.num() << ',' << cert->result.den() << ','
          << format_fixed(cert->result) << ',' << method_name(cert->method) << '\n';
      break;
    case OutputFormat::kJson:
      out << certificate_json(*cert).dump(2) << '\n';
      break;
  }
  return kExitOk;
}

int cmd_demailly(unsigned N, unsigned m, std::uint64_t r_lo, std::uint64_t r_hi,
                 const RunConfig& config, std::ostream& out) {
  if (N < 2) throw UsageError("--dim must be at least 2 for demailly");
  if (m == 0) throw UsageError("--mult must be at least 1");
  if (r_lo == 0 || r_lo > r_hi) throw UsageError("point range must satisfy 1 <= from <= to");
  auto table = load_table(config);
  SearchContext ctx = make_context(N, config, table);
  nlohmann::json reports = nlohmann::json::array();
  if (config.format == OutputFormat::kCsv) out << kDemaillyCsvHeader << '\n';
  auto sink = [&](const DemaillyReport& rep) {
    switch (config.format) {
      case OutputFormat::kText: write_report_text(out, rep); break;
      case OutputFormat::kCsv: write_report_csv(out, rep); break;
      case OutputFormat::kJson: reports.push_back(report_json(rep)); break;
    }
  };
  ScanSummary summary = scan_demailly(N, m, r_lo, r_hi, ctx, sink, config.jobs);
  if (config.format == OutputFormat::kJson) {
    nlohmann::json doc = {{"N", N},
                          {"m", m},
                          {"from", r_lo},
                          {"to", r_hi},
                          {"sufficient", summary.sufficient},
                          {"inconclusive", summary.inconclusive},
                          {"reports", reports}};
    out << doc.dump(2) << '\n';
  } else if (config.format == OutputFormat::kText && r_hi > r_lo) {
    out << "# N = " << N << ", m = " << m << ", r = " << r_lo << ".." << r_hi
        << ": sufficient " << summary.sufficient << ", inconclusive " << summary.inconclusive
        << '\n';
  }
  return kExitOk;
}

FigureData compute_figure(unsigned N, std::uint64_t r_max,
                          const std::vector<std::pair<std::uint64_t, std::uint64_t>>& ranges,
                          const SearchContext& ctx) {
  if (N < 2) throw UsageError("--dim must be at least 2 for figure");
  if (r_max == 0) throw UsageError("--max must be at least 1");
  FigureData data;
  for (std::uint64_t r = 1; r <= r_max; ++r) {
    data.rows.push_back(accuracy_row(N, r, best_bound(N, r, ctx)->result));
  }
  std::vector<std::pair<std::uint64_t, std::uint64_t>> wanted = ranges;
  if (wanted.empty()) {
    std::uint64_t lo = std::uint64_t{1} << std::min(N, 63u);
    wanted.emplace_back(lo <= r_max ? lo : 1, r_max);
  }
  for (auto [lo, hi] : wanted) {
    if (lo == 0 || lo > hi || hi > r_max) {
      throw UsageError("range " + std::to_string(lo) + "-" + std::to_string(hi) +
                       " must lie within 1.." + std::to_string(r_max));
    }
    RangeMax rm{lo, hi, std::nullopt};
    for (std::uint64_t r = lo; r <= hi; ++r) {
      const AccuracyRow& row = data.rows[r - 1];
      if (!rm.worst || row.delta_scaled > rm.worst->delta_scaled) rm.worst = row;
    }
    data.ranges.push_back(std::move(rm));
  }
  return data;
}

int cmd_figure(unsigned N, std::uint64_t r_max,
               const std::vector<std::pair<std::uint64_t, std::uint64_t>>& ranges,
               const RunConfig& config, std::ostream& out) {
  check_dim(N);
  auto table = load_table(config);
  SearchContext ctx = make_context(N, config, table);
  FigureData data = compute_figure(N, r_max, ranges, ctx);
  out << kFigureCsvHeader << '\n';
  for (const auto& row : data.rows) write_accuracy_csv(out, row);
  for (const auto& rm : data.ranges) {
    out << "# max delta r=" << rm.lo << "-" << rm.hi << ": " << rm.worst->delta_float
        << " at r=" << rm.worst->r << '\n';
  }
  return kExitOk;
}

int cmd_table_check(const std::string& path, std::ostream& out) {
  BaseTable table = BaseTable::load_file(path);
  std::map<unsigned, std::size_t> per_dim;
  for (const auto& [key, entry] : table.entries()) ++per_dim[key.first];
  out << path << ": ok, " << table.size() << " entries";
  for (auto [dim, count] : per_dim) out << "; P^" << dim << ": " << count;
  out << '\n';
  return kExitOk;
}

namespace {

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
  auto dash = text.find('-');
  if (dash == std::string::npos) throw UsageError("range '" + text + "' must look like LO-HI");
  try {
    std::size_t used = 0;
    std::uint64_t lo = std::stoull(text.substr(0, dash), &used);
    if (used != dash) throw std::invalid_argument(text);
    std::string rest = text.substr(dash + 1);
    std::uint64_t hi = std::stoull(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(text);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError("range '" + text + "' must look like LO-HI");
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified lower bounds for Waldschmidt constants of very general points"};
  app.name("waldbound");
  app.require_subcommand(1);

  unsigned dim = 0;
  unsigned mult = 0;
  std::uint64_t points = 0;
  std::uint64_t from = 0;
  std::uint64_t to = 0;
  std::uint64_t r_max = 0;
  unsigned depth_cap = 0;
  std::vector<std::string> strategy_names;
  std::vector<std::string> range_texts;
  std::string format = "text";
  std::string table_path;
  RunConfig config;

  auto add_search_flags = [&](CLI::App* cmd) {
    cmd->add_option("--strategy", strategy_names,
                    "exhaustive, heuristic, purepower or closed-form (repeatable)");
    cmd->add_option("--base-table", table_path, "extra base-bound table file");
    cmd->add_option("--max-partitions", config.max_partitions,
                    "exhaustive search budget before falling back to heuristic");
    cmd->add_option("--depth-cap", depth_cap, "number of stepback levels searched")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--no-memo", "disable the per-row bound cache");
  };

  CLI::App* bound = app.add_subcommand("bound", "lower bound with derivation tree");
  bound->add_option("--dim", dim, "ambient dimension N")->required();
  bound->add_option("--points", points, "number of points r")->required();
  bound->add_option("--format", format, "text, csv or json");
  add_search_flags(bound);

  CLI::App* demailly = app.add_subcommand("demailly", "Demailly sufficiency check");
  demailly->add_option("--dim", dim, "ambient dimension N")->required();
  demailly->add_option("--mult", mult, "multiplicity m")->required();
  auto* points_opt = demailly->add_option("--points", points, "single point count");
  auto* from_opt = demailly->add_option("--from", from, "first point count of a scan");
  auto* to_opt = demailly->add_option("--to", to, "last point count of a scan");
  points_opt->excludes(from_opt)->excludes(to_opt);
  from_opt->needs(to_opt);
  to_opt->needs(from_opt);
  demailly->add_option("--format", format, "text, csv or json");
  demailly->add_option("--jobs", config.jobs, "worker threads for scans")
      ->check(CLI::PositiveNumber);
  add_search_flags(demailly);

  CLI::App* figure = app.add_subcommand("figure", "accuracy CSV for r = 1..max");
  figure->add_option("--dim", dim, "ambient dimension N")->required();
  figure->add_option("--max", r_max, "largest point count")->required();
  figure->add_option("--range", range_texts, "LO-HI range for the max-delta summary (repeatable)");
  add_search_flags(figure);

  CLI::App* check = app.add_subcommand("table-check", "validate a base-bound table file");
  check->add_option("file", table_path, "table file")->required();

  std::vector<const char*> argv{"waldbound"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    CLI::App* cmd = app.get_subcommands().front();
    if (cmd == check) return cmd_table_check(table_path, out);

    if (!table_path.empty()) config.base_table_path = table_path;
    if (!strategy_names.empty()) {
      StrategySet set;
      for (const auto& name : strategy_names) {
        auto s = parse_strategy(name);
        if (!s) throw UsageError("unknown strategy '" + name + "'");
        set.insert(*s);
      }
      config.strategies = set;
    }
    if (cmd->count("--depth-cap") > 0) config.depth_cap = depth_cap;
    config.memo = cmd->count("--no-memo") == 0;
    config.format = parse_format(format);

    if (cmd == bound) return cmd_bound(dim, points, config, out);
    if (cmd == demailly) {
      if (points_opt->count() > 0) return cmd_demailly(dim, mult, points, points, config, out);
      if (from_opt->count() == 0) throw UsageError("demailly needs --points or --from/--to");
      return cmd_demailly(dim, mult, from, to, config, out);
    }
    std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
    for (const auto& text : range_texts) ranges.push_back(parse_range(text));
    return cmd_figure(dim, r_max, ranges, config, out);
  } catch (const TableError& e) {
    err << "waldbound: table error: " << e.what() << '\n';
    return kExitData;
  } catch (const UsageError& e) {
    err << "waldbound: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "waldbound: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace wald
