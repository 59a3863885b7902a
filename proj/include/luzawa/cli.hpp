#pragma once

// Command-line front end. Exit codes: 0 success/verified, 1 verification
// failure, 2 input validation, 3 constant-derivation failure.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "luzawa/params.hpp"

namespace luzawa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitDerivationFailed = 3;

struct RunConfig {
    std::string params_path;
    std::string family = "General1";  ///< comma-separated list for `compare`
    double k0 = 1.0;
    std::optional<double> h0;
    double t_max = 50.0;
    std::size_t steps = 101;
    double tol = 1e-6;
    std::string out_path;  ///< empty: stdout
    std::string format = "csv";
    /// Test hook for `verify`: scale one trajectory column by a constant.
    std::string corrupt_column;
    double corrupt_scale = 1.0;
};

/// Parses {"sigma","rho","beta","gamma","pi","delta","theta"}; all required.
/// Throws luzawa::Error(InvalidInput) on a missing or non-numeric key.
[[nodiscard]] ModelParams parse_params_json(const std::string& text);
[[nodiscard]] ModelParams load_params_file(const std::string& path);

int cmd_bgp(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_growth(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full argument parsing and dispatch; `argv[0]` is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// %.17g, the round-trip format used for every CSV number.
[[nodiscard]] std::string format_number(double x);

}  // namespace luzawa::cli
