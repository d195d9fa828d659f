#pragma once

#include <string>
#include <vector>

namespace imexstab::cli {

/// Parses "2^-6..2^-13" (halving steps, inclusive), comma lists and single
/// values such as "0.04" or "2^-3". Range endpoints must be positive with the
/// start strictly larger.
std::vector<double> parse_value_grid(const std::string& spec);

/// Parses "1..5" (inclusive), "3" or comma lists of integer orders.
std::vector<int> parse_orders(const std::string& spec);

/// Entry point behind the imexstab binary. Returns the process exit status:
/// 0 success, 2 validation failure, 3 numerical failure.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);  ///< args without program name

}  // namespace imexstab::cli
