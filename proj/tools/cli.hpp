#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace symtomo::cli {

/// Exit codes of the `tomo` front end.
enum ExitCode : int { ok = 0, check_failed = 1, usage_error = 2 };

/// Parses argv and dispatches the subcommand; never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct CheckRow {
    std::string name;
    double value;      ///< measured discrepancy
    double tolerance;  ///< pass iff value <= tolerance
    bool passed;
};

struct CheckConfig {
    double x_min = -16.0;
    double x_max = 16.0;
    std::size_t n_points = 1024;
    double hbar = 1.0;
    std::uint64_t seed = 1;
    std::size_t fbp_angles = 360;
    bool inject_fbp_error = false;
};

/// The cross-module invariant suite behind `tomo check`. Deterministic for a given config.
std::vector<CheckRow> run_checks(const CheckConfig& config);

/// Fixed-width table, one row per check, then a summary line.
std::string format_check_table(const std::vector<CheckRow>& rows);

}  // namespace symtomo::cli
