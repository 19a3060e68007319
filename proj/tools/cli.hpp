#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace specbasis::cli {

/// Runs one command line (without the program name). Returns the process exit
/// code: 0 on success, 1 on any library or usage error. Everything the binary
/// would print goes to `out` and `err`, so tests can drive it in-process.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(const std::string& data);

}  // namespace specbasis::cli
