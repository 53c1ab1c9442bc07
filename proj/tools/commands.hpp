#pragma once

// Figure-data commands behind the qcloner executable. Each command writes its
// output to a stream so tests can run it in-process.

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include "qcloner/eavesdrop.hpp"
#include "qcloner/fock.hpp"

namespace qcloner::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitIo = 2,
    kExitVerification = 3,
};

enum class BranchSelection { Low, High, Both };

BranchSelection branch_selection_from_string(const std::string& name);

struct RunConfig {
    int grid_points = 201;
    BranchSelection branch = BranchSelection::Low;
    std::string output_path;  ///< empty: standard output
    std::uint64_t seed = 42;
    std::optional<ChannelParams> channel;
    bool numeric = false;
    int restarts = 16;
    std::optional<fock::Convention> convention;
    std::string topology_path;

    void validate() const;
};

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// 17 significant digits, locale independent.
std::string format_number(double x);

/// r grid on [0, 1] with r = 1/3 inserted.
std::vector<double> fidelity_grid(int n);

int cmd_fidelity(const RunConfig& cfg, std::ostream& out);
int cmd_theta(const RunConfig& cfg, std::ostream& out);
int cmd_info(const RunConfig& cfg, std::ostream& out);
int cmd_qber(const RunConfig& cfg, std::ostream& out);
int cmd_fock_verify(const RunConfig& cfg, std::ostream& out);

enum class Command { Fidelity, Theta, Info, Qber, FockVerify };

/// Runs a command against cfg.output_path (or `fallback` when empty) and maps
/// failures to exit codes; diagnostics go to `err`.
int run_command(Command command, const RunConfig& cfg, std::ostream& fallback, std::ostream& err);

}  // namespace qcloner::cli
