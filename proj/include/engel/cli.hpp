#pragma once

#include <ostream>

namespace engel {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCertificate = 3;

/// Runs `engel <subcommand> ...`.  Reports go to `out`, diagnostics to `err`.
/// Returns 0 on success, 2 for usage and parse errors, 3 when a certificate
/// fails and 1 for anything else.
int command_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace engel
