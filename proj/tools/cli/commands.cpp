#include "cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli/config.hpp"
#include "collatz_cover/arith.hpp"
#include "collatz_cover/covering.hpp"
#include "collatz_cover/mapgen.hpp"
#include "collatz_cover/sigma_cache.hpp"
#include "collatz_cover/verify.hpp"

namespace collatz_cover::cli {
namespace {

using Json = nlohmann::ordered_json;

// Flags as given on the command line; unset ones fall back to the config
// file and then to Config defaults.
struct Flags {
  std::optional<unsigned> max_m;
  std::optional<std::uint64_t> budget;
  std::optional<std::string> cache;
  std::optional<std::string> format;
  std::optional<unsigned> threads;
  std::optional<std::string> output;
  std::optional<std::string> config;
};

Config resolve_config(const Flags& flags) {
  Config config;
  std::optional<std::filesystem::path> file;
  if (flags.config) {
    file = *flags.config;
  } else if (const char* env = std::getenv(kConfigEnvVar); env != nullptr && *env != '\0') {
    file = env;
  }
  if (file) apply_config_file(*file, config);

  if (flags.max_m) config.max_exponent = *flags.max_m;
  if (flags.budget) config.sigma_budget = *flags.budget;
  if (flags.cache) config.cache_path = *flags.cache;
  if (flags.threads) config.threads = *flags.threads;
  if (flags.format) {
    try {
      config.output_format = parse_format(*flags.format);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  config.validate();
  return config;
}

BigInt parse_positive(const std::string& text) {
  BigInt value;
  try {
    value = parse_decimal(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (sgn(value) <= 0) throw UsageError("expected a positive integer, got " + text);
  return value;
}

std::optional<SigmaCache> open_cache(const Config& config, std::ostream& err) {
  if (!config.cache_path) return std::nullopt;
  SigmaCache cache;
  if (std::filesystem::exists(*config.cache_path)) {
    cache.load(*config.cache_path);
    err << "loaded " << cache.size() << " cached stopping times from "
        << config.cache_path->string() << '\n';
  }
  return cache;
}

void save_cache(const Config& config, const std::optional<SigmaCache>& cache, std::ostream& err) {
  if (!cache || !config.cache_path) return;
  cache->save(*config.cache_path);
  err << "saved " << cache->size() << " cached stopping times to "
      << config.cache_path->string() << '\n';
}

void write_rows(std::ostream& out, Format format, const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows) {
  if (format == Format::kCsv) {
    for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
    out << '\n';
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
      out << '\n';
    }
    return;
  }
  // Text: aligned columns.
  std::vector<std::vector<std::string>> all{header};
  all.insert(all.end(), rows.begin(), rows.end());
  std::vector<std::size_t> widths(header.size(), 0);
  for (const auto& row : all) {
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  }
  for (const auto& row : all) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) line += "  ";
      line += row[c];
      if (c + 1 < row.size()) line.append(widths[c] - row[c].size(), ' ');
    }
    out << line << '\n';
  }
}

int cmd_table(const Config& config, std::optional<unsigned> class_filter,
              std::optional<unsigned> m_filter, std::ostream& out) {
  if (class_filter && (*class_filter < 1 || *class_filter > kClassCount)) {
    throw UsageError("--class must be in 1..9, got " + std::to_string(*class_filter));
  }
  if (m_filter && *m_filter < 1) throw UsageError("--m must be >= 1");

  std::vector<Profile> rows;
  const unsigned first_class = class_filter.value_or(1);
  const unsigned last_class = class_filter.value_or(kClassCount);
  for (unsigned i = first_class; i <= last_class; ++i) {
    if (m_filter) {
      rows.push_back(derive_profile(i, *m_filter));
    } else {
      for (unsigned m = 1; m <= config.max_exponent; ++m) rows.push_back(derive_profile(i, m));
    }
  }
  switch (config.output_format) {
    case Format::kText:
      write_profiles_text(out, rows);
      break;
    case Format::kCsv:
      write_profiles_csv(out, rows);
      break;
    case Format::kJson:
      write_profiles_json(out, rows);
      break;
  }
  return kExitOk;
}

int cmd_map(const Config& config, const std::string& which, std::ostream& out) {
  const ProfileTable profiles(config.max_exponent);
  if (which == "schema") {
    render(build_schema(profiles), config.output_format, out);
  } else if (which == "sigma") {
    render(build_sigma_schema(profiles), config.output_format, out);
  } else {
    throw UsageError("map expects 'schema' or 'sigma', got '" + which + "'");
  }
  return kExitOk;
}

int cmd_sigma(const Config& config, const std::vector<std::string>& inputs, std::ostream& out,
              std::ostream& err) {
  std::vector<BigInt> values;
  for (const std::string& text : inputs) values.push_back(parse_positive(text));

  std::optional<SigmaCache> cache = open_cache(config, err);
  SigmaCache* cache_ptr = cache ? &*cache : nullptr;

  bool any_deferred = false;
  std::vector<std::vector<std::string>> rows;
  Json json = Json::array();
  for (const BigInt& d : values) {
    std::vector<std::string> row{to_decimal(d)};
    Json entry = {{"d", to_decimal(d)}};
    try {
      const std::uint64_t sigma = sigma_infinity(d, cache_ptr, config.sigma_budget);
      row.push_back(std::to_string(sigma));
      entry["sigma"] = sigma;
    } catch (const BudgetExceeded& e) {
      any_deferred = true;
      row.push_back("deferred");
      entry["sigma"] = nullptr;
      entry["deferred"] = true;
      err << e.what() << '\n';
    }
    if (mpz_odd_p(d.get_mpz_t())) {
      const OddInt odd(d);
      const OddStep step = odd_step(odd);
      const unsigned i = residue_class(odd);
      row.insert(row.end(), {std::to_string(i), std::to_string(step.m), step.target.str()});
      entry["class"] = i;
      entry["m"] = step.m;
      entry["next"] = step.target.str();
    } else {
      row.insert(row.end(), {"-", "-", "-"});
      entry["class"] = nullptr;
      entry["m"] = nullptr;
      entry["next"] = nullptr;
    }
    rows.push_back(std::move(row));
    json.push_back(std::move(entry));
  }

  if (config.output_format == Format::kJson) {
    out << json.dump(2) << '\n';
  } else {
    write_rows(out, config.output_format, {"d", "sigma", "class", "m", "next"}, rows);
  }
  save_cache(config, cache, err);
  return any_deferred ? kExitDeferred : kExitOk;
}

int cmd_classify(const Config& config, const std::vector<std::string>& inputs, std::ostream& out,
                 std::ostream& err) {
  std::vector<OddInt> values;
  for (const std::string& text : inputs) {
    const BigInt value = parse_positive(text);
    if (mpz_even_p(value.get_mpz_t())) throw UsageError("classify expects odd integers, got " + text);
    values.emplace_back(value);
  }

  const ProfileTable table(config.max_exponent);
  bool disagreement = false;
  std::vector<std::vector<std::string>> rows;
  Json json = Json::array();
  for (const OddInt& d : values) {
    const unsigned by_mod = residue_class(d);
    const unsigned by_digits = digit_root_class(d);
    const Classification c = classify(d, table);
    if (by_mod != by_digits) {
      disagreement = true;
      err << "digit-root class " << by_digits << " disagrees with class " << by_mod << " for "
          << d.str() << '\n';
    }
    const std::string residue = "[" + std::to_string(residue_of_class(by_mod)) + "]_18";
    const std::string form = LinearForm{c.profile.d_modulus, c.profile.d_offset}.str();
    rows.push_back({d.str(), residue, std::to_string(by_mod), std::to_string(by_digits),
                    std::to_string(c.profile.m), to_decimal(c.n), form, c.step.target.str()});
    json.push_back({{"d", d.str()},
                    {"residue", residue_of_class(by_mod)},
                    {"class", by_mod},
                    {"digit_root_class", by_digits},
                    {"m", c.profile.m},
                    {"n", to_decimal(c.n)},
                    {"profile", form},
                    {"next", c.step.target.str()}});
  }

  if (config.output_format == Format::kJson) {
    out << json.dump(2) << '\n';
  } else {
    write_rows(out, config.output_format,
               {"d", "residue", "class", "digit_root_class", "m", "n", "profile", "next"}, rows);
  }
  return disagreement ? kExitFailure : kExitOk;
}

struct VerifyArgs {
  std::string check;
  std::uint64_t bound = 10'000;
  std::optional<std::uint64_t> start;
  std::optional<std::uint64_t> end;
  std::optional<unsigned> class_filter;
  unsigned samples = 100;
};

int cmd_verify(const Config& config, const VerifyArgs& args, std::ostream& out,
               std::ostream& err) {
  std::optional<SigmaCache> cache;
  VerifyReport report;
  const std::uint64_t first = args.start.value_or(1);
  const std::uint64_t last = args.end.value_or(args.bound);
  try {
    if (args.check == "theorem1") {
      report = verify_theorem1_symbolic(config.max_exponent);
    } else if (args.check == "conjecture1") {
      report = verify_conjecture1(first, last);
    } else if (args.check == "sigma-relation") {
      cache = open_cache(config, err);
      report = verify_sigma_relation(args.bound, cache ? &*cache : nullptr, config.sigma_budget);
    } else if (args.check == "cover") {
      report = cover_audit(args.bound, config.max_exponent);
    } else if (args.check == "cyclic") {
      report = verify_cyclic(args.samples);
    } else if (args.check == "range") {
      cache = open_cache(config, err);
      RangeOptions options;
      options.first = first;
      options.last = last;
      options.class_filter = args.class_filter;
      options.threads = config.threads;
      options.max_exponent = config.max_exponent;
      options.budget = config.sigma_budget;
      options.cache = cache ? &*cache : nullptr;
      report = verify_range(options);
    } else {
      throw UsageError("unknown check '" + args.check +
                       "' (expected theorem1, conjecture1, sigma-relation, cover, cyclic or range)");
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const std::out_of_range& e) {
    throw UsageError(e.what());
  }

  switch (config.output_format) {
    case Format::kText:
      write_summary(out, report);
      break;
    case Format::kCsv:
      write_csv(out, report);
      break;
    case Format::kJson:
      out << to_json(report) << '\n';
      break;
  }
  err << report.check_name << ": " << to_string(report.outcome) << " in "
      << report.elapsed.count() << " ms\n";
  save_cache(config, cache, err);
  return exit_code_for(report.outcome);
}

}  // namespace

int exit_code_for(Outcome outcome) {
  switch (outcome) {
    case Outcome::kPass:
      return kExitOk;
    case Outcome::kFail:
      return kExitFailure;
    case Outcome::kDeferred:
      return kExitDeferred;
  }
  return kExitFailure;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Collatz covering system: profile tables, maps, stopping times and audits",
               "collatz-cover"};
  app.fallthrough();
  app.require_subcommand(1);

  Flags flags;
  app.add_option("--max-m", flags.max_m, "Largest exponent m (default 18)");
  app.add_option("--budget", flags.budget, "Unit-step ceiling per stopping time (default 1e7)");
  app.add_option("--cache", flags.cache, "Stopping-time cache file (read and updated)");
  app.add_option("--format", flags.format, "Output format: text, csv or json");
  app.add_option("--threads", flags.threads, "Worker threads for 'verify range'");
  app.add_option("--output", flags.output, "Write data to FILE instead of stdout");
  app.add_option("--config", flags.config, "key=value config file");

  std::optional<unsigned> table_class;
  std::optional<unsigned> table_m;
  auto* table = app.add_subcommand("table", "Print derived profile progressions");
  table->add_option("--class", table_class, "Only class i (1..9)");
  table->add_option("--m", table_m, "Only exponent m");

  std::string map_which;
  auto* map = app.add_subcommand("map", "Print the generalized map or its stopping-time map");
  map->add_option("which", map_which, "schema or sigma")->required();

  std::vector<std::string> sigma_inputs;
  auto* sigma = app.add_subcommand("sigma", "Total stopping times");
  sigma->add_option("d", sigma_inputs, "Positive integers")->required();

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Run an audit and emit a report");
  verify->add_option("check", verify_args.check,
                     "theorem1, conjecture1, sigma-relation, cover, cyclic or range")
      ->required();
  verify->add_option("--bound", verify_args.bound, "Upper bound for cover/sigma-relation");
  verify->add_option("--start", verify_args.start, "Range start (default 1)");
  verify->add_option("--end", verify_args.end, "Range end (default --bound)");
  verify->add_option("--class", verify_args.class_filter, "Only class i for 'range'");
  verify->add_option("--samples", verify_args.samples, "Members per class for 'cyclic'");

  std::vector<std::string> classify_inputs;
  auto* classify_cmd = app.add_subcommand("classify", "Residue class and profile of odd integers");
  classify_cmd->add_option("d", classify_inputs, "Odd positive integers")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const Config config = resolve_config(flags);

    std::ofstream file;
    std::ostream* sink = &out;
    if (flags.output) {
      file.open(*flags.output, std::ios::binary | std::ios::trunc);
      if (!file) {
        err << "error: cannot open " << *flags.output << " for writing\n";
        return kExitFailure;
      }
      sink = &file;
    }

    int code = kExitOk;
    if (*table) {
      code = cmd_table(config, table_class, table_m, *sink);
    } else if (*map) {
      code = cmd_map(config, map_which, *sink);
    } else if (*sigma) {
      code = cmd_sigma(config, sigma_inputs, *sink, err);
    } else if (*verify) {
      code = cmd_verify(config, verify_args, *sink, err);
    } else if (*classify_cmd) {
      code = cmd_classify(config, classify_inputs, *sink, err);
    }
    sink->flush();
    if (!*sink) {
      err << "error: failed to write output\n";
      return kExitFailure;
    }
    return code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace collatz_cover::cli
