#ifndef DIAGCERT_CLI_HPP
#define DIAGCERT_CLI_HPP

#include <cstdint>
#include <string>

#include "diagcert/homalg.hpp"

namespace diagcert::cli {

struct CommandRequest {
    std::string subcommand; // snf, analyze, qg, diagonalize, filtration, verify
    std::string input;      // path, or "-" for stdin
    Bounds bounds;
    std::uint64_t seed = 0;
    bool json = false;
};

/// Exit codes: 0 decided, 4 Unknown or NoneWithinBounds, 1 usage or parse error, 2 internal error.
struct CommandOutcome {
    int code = 0;
    std::string output;
    std::string error;
};

CommandOutcome run(const CommandRequest& request);

/// Reads DIAGCERT_BUDGET into bounds.candidates when set.
void apply_environment(Bounds& bounds);

} // namespace diagcert::cli

#endif
