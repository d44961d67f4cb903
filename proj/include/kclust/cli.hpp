#ifndef KCLUST_CLI_HPP
#define KCLUST_CLI_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "kclust/config.hpp"

namespace kclust {

// Process exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;      // missing or malformed input files
inline constexpr int kExitConfig = 3;     // invalid configuration
inline constexpr int kExitNumerical = 4;  // internal numerical failure

enum class Command { cluster, diagnose, estimate, experiment, sweep };

// Resolved run configuration: the merged view of the config file and the
// command-line overrides (--seed, --out, --threads).
struct RunConfig {
    Command command = Command::cluster;
    ConfigMap cfg;
    std::optional<std::uint64_t> seed_override;
    std::optional<std::string> out_override;
    int threads = 1;
};

// Command entry points; each returns a process exit code and writes
// human-readable summaries to `out`.
int cmd_cluster(const RunConfig& rc, std::ostream& out);
int cmd_diagnose(const RunConfig& rc, std::ostream& out);
int cmd_estimate(const RunConfig& rc, std::ostream& out);
int cmd_experiment(const RunConfig& rc, std::ostream& out);
int cmd_sweep(const RunConfig& rc, std::ostream& out);

// Full argv-level entry point used by the binary.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kclust

#endif  // KCLUST_CLI_HPP
