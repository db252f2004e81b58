#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "riccati/linalg.hpp"

namespace riccati {

/// Exit-code contract shared by every command.
enum ExitCode : int {
    ExitOk = 0,
    ExitRejected = 1,   // verify: residual or kernel condition failed
    ExitValidation = 2, // malformed / invalid input document
    ExitIo = 3,         // unreadable file
    ExitNoSolution = 4  // terminal solver produced no solution
};

struct CommandOptions {
    std::string command;      // diagnose | reduce | solve | verify
    std::string triple_path;
    std::string x_path;       // verify only
    bool trace = false;
    std::string format = "human";  // human | machine
    std::optional<double> tol;     // overrides abs_residual
    std::uint64_t seed = 0;        // pencil sampling; see RICCATI_SEED
};

/// Dispatches one command, writing the report to `out` and error messages
/// to `err`. Returns the process exit code.
int run_command(const CommandOptions& opt, std::ostream& out, std::ostream& err);

/// Reads RICCATI_SEED from the environment (0 when unset or unparsable).
std::uint64_t seed_from_environment();

}  // namespace riccati
