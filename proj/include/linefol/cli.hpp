#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace linefol::cli {

inline constexpr const char* kReportVersion = "1.0";

/// Runs one invocation; args excludes the program name. The report goes to
/// `out`, diagnostics to `err`. Returns 0 when the property holds, 1 when
/// it definitively fails, 2 on input or sampling errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace linefol::cli
