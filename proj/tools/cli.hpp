#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qsum::cli {

/// Runs the command line given as args (program name excluded). Returns the
/// process exit code: 0 on success, 1 when a verification suite fails and 2
/// on invalid arguments.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses a level: a decimal number, "8/pi2" or "4/pi2".
double parse_level(const std::string& text);

/// Parses a comma-separated list of M values. Items are single values,
/// ranges "a:b" or "a:b:s" (additive step), or "a:b:xF" (geometric factor).
std::vector<long long> parse_m_list(const std::string& text);

/// Locale-independent text with 17 significant digits (%.17g style).
std::string format_double(double x);

}  // namespace qsum::cli
