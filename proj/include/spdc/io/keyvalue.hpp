#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace spdc::io {

/// One `key = value` line. `section` is empty before the first `[section]` header.
struct KeyValueEntry {
  std::string section;
  std::string key;
  std::string value;
  int line = 0;
};

/// Line-oriented `key = value` text with `[section]` headers and `#` comments.
/// Duplicate keys within a section are rejected.
std::vector<KeyValueEntry> parse_key_value(std::string_view text, const std::string& source);

std::string read_text_file(const std::string& path);

/// Strict number parsing: the whole token must be consumed.
double parse_double(const KeyValueEntry& entry, const std::string& source);
long parse_integer(const KeyValueEntry& entry, const std::string& source);
bool parse_bool(const KeyValueEntry& entry, const std::string& source);
/// Comma-separated list of numbers.
std::vector<double> parse_double_list(const KeyValueEntry& entry, const std::string& source);

std::string trim(std::string_view s);

}  // namespace spdc::io
