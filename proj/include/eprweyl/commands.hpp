#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace eprweyl {

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitUsage = 2, kExitResource = 3 };

/// Flags shared by the CLI subcommands.
struct CommandOptions {
    std::string state_file;            // empty: EPR with lambda = mu = 0
    double tol = 1e-10;
    std::optional<std::uint64_t> seed;
    int dim = 2;
    std::string out_file;              // empty: write the report to `out`
};

// Each command maps UsageError to exit 2 and ResourceError to exit 3, writing
// the message to `err`.
int cmd_eval(const CommandOptions& opts, const std::string& polynomial_file, std::ostream& out, std::ostream& err);
int cmd_psd(const CommandOptions& opts, const std::string& points_file, std::ostream& out, std::ostream& err);
int cmd_bell(const CommandOptions& opts, const std::string& config_file, std::ostream& out, std::ostream& err);
int cmd_surrogate(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_verify_all(const CommandOptions& opts, std::ostream& out, std::ostream& err);

/// Largest point set accepted by `psd`.
inline constexpr std::size_t kMaxPsdPoints = 256;

} // namespace eprweyl
