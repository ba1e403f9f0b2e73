#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ktors::cli {

enum class Command { snf, homology, gabber_verify, zeta, volume, gamma, bound, compare };
enum class OutputFormat { json, csv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInvariantViolation = 2;

struct RunConfig {
    Command command = Command::bound;
    std::optional<std::string> input_path;
    OutputFormat format = OutputFormat::json;
    double precision = 1e-10;
    std::optional<double> alpha;
    std::optional<double> delta;
    std::optional<std::uint64_t> seed;

    // command-specific parameters
    std::vector<std::int64_t> m{-1};
    std::vector<unsigned> n;
    unsigned N = 5;
    unsigned d = 2;
    int s = 2;
    unsigned trials = 200;
    unsigned delta_max = 6;
    unsigned v = 40;
    unsigned dim = 3;
};

/// Parses argv-style arguments (without the program name), runs one command and
/// writes the report to `out`. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ktors::cli
