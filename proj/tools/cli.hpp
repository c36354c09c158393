#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace deleeuw::cli {

/// Exit statuses: 0 success (all verdicts PASS or a purely computational
/// command), 1 when a verdict fails or a computation cannot meet its
/// numerical requirements, 2 on command-line or input errors.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace deleeuw::cli
