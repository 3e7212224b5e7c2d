#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bbg::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kInternal = 1;
inline constexpr int kConfig = 2;
inline constexpr int kStarvation = 3;
inline constexpr int kNumericGuard = 4;

// Runs one subcommand. The JSON report goes to `out` (or to --output),
// diagnostics to `err`. Returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bbg::cli
