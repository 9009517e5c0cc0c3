#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace narrframe::text {

std::string_view trim(std::string_view s);
std::string to_upper(std::string_view s);
std::string to_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);

// Vocabulary token normalization: trims, strips wrapping quotes and trailing
// punctuation, upper-cases ASCII, and folds runs of whitespace or '-' into '_'.
// "Fuel resolution" and "fuel-resolution" both become "FUEL_RESOLUTION".
std::string canonical_token(std::string_view s);

// UPPER_SNAKE identifier: every run of characters other than [A-Za-z0-9.]
// becomes a single '_', leading/trailing '_' removed.
std::string upper_snake(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
std::string replace_all(std::string s, std::string_view from, std::string_view to);

// CRLF and lone CR become LF.
std::string normalize_newlines(std::string_view s);

// Lines of `s` without terminators; a trailing newline does not yield an empty line.
std::vector<std::string_view> lines(std::string_view s);

}  // namespace narrframe::text
