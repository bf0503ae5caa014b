#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace mmbb84::cli {

enum class Format { Csv, Json };

/// Flags shared by every subcommand. An empty out path means stdout; the
/// seed, when present, overrides whatever the config file carries.
struct CommonOptions {
  std::optional<std::uint64_t> seed;
  std::string out;
  Format format = Format::Csv;
};

/// Exit codes: 0 success (including a clean protocol abort), 1 violation or
/// internal failure, 2 unusable configuration.
int cmd_run(const std::string& config_path, const CommonOptions& options, std::ostream& err);

/// `channel` is a path, or inline JSON when it starts with '{'.
int cmd_bounds(const std::string& channel, const CommonOptions& options, std::ostream& err);

int cmd_sweep(const std::string& spec_path, const CommonOptions& options, std::ostream& err);

struct CssVerifyOptions {
  std::size_t n = 2;
  std::size_t dim_c1 = 2;
  std::size_t dim_c2 = 1;
  std::size_t trials = 3;
};

int cmd_css_verify(const CssVerifyOptions& css, const CommonOptions& options,
                   std::ostream& err);

int cmd_selftest(const CommonOptions& options, std::ostream& err);

}  // namespace mmbb84::cli
