#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ncperm {

/// Runs one CLI invocation; `args` excludes the program name. Reports are
/// JSON on `out`, diagnostics go to `err`. Returns 0 when the computation
/// succeeded and every requested check passed, 1 when a check failed and
/// 2 on usage or input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Hex SHA-256 of `data`.
std::string sha256_hex(const std::string& data);

}  // namespace ncperm
