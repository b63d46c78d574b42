#pragma once

#include <string>
#include <string_view>

namespace wecnn {

/// Shortest decimal form of `v` that parses back to the identical double.
std::string format_double(double v);

/// Parses a complete decimal token; returns false on any trailing garbage.
bool parse_double(std::string_view text, double& out);

/// Parses a complete non-negative integer token.
bool parse_size(std::string_view text, std::size_t& out);

/// Percentage with one decimal place, e.g. 0.7712 -> "77.1".
std::string format_percent(double fraction, int decimals = 1);

}  // namespace wecnn
