#pragma once

#include <iosfwd>
#include <map>
#include <string>

namespace ccd::cli {

enum ExitCode { kOk = 0, kError = 1, kBkWarning = 2, kIncompatible = 3 };

/// `key = value` lines; '#' starts a comment. Keys are lower-cased with runs
/// of spaces, dashes and dots folded to '_'.
std::map<std::string, std::string> read_config(std::istream& in);
std::map<std::string, std::string> read_config_file(const std::string& path);
std::string normalize_key(const std::string& key);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ccd::cli
