#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "entswap/phase_angle.hpp"
#include "entswap/protocol.hpp"
#include "entswap/qstate.hpp"

namespace entswap::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitIoError = 1;
inline constexpr int kExitValidation = 2;

enum class Command { Swap, Sweep, Ensemble, Cascade, Measure };
enum class Format { Json, Csv };

struct RunConfig {
    Command command = Command::Swap;
    std::optional<double> theta1;
    std::optional<double> theta2;
    std::optional<double> gamma_l;
    double theta_min = 0.0;
    double theta_max = kHalfPi;
    int steps = 91;
    std::optional<std::uint64_t> pairs;
    int levels = 40;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    BsmMode bsm = BsmMode::Full;
    double tol = 1e-9;
    Format format = Format::Json;
    std::optional<std::string> output;
    std::optional<std::string> amps;
};

/// Parses "re,im,re,im,..." (8 numbers, basis order HH, HV, VH, VV) into a
/// normalized state. Vectors within 1e-6 of unit norm are renormalized;
/// anything further off throws NormalizationError. Malformed text throws
/// std::invalid_argument.
TwoQubitState parse_amplitudes(const std::string& text);

/// Formats a double with 17 significant digits.
std::string format_csv_number(double value);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Reports go to `out` (or the --output file), diagnostics to
/// `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entswap::cli
