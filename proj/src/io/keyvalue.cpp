#include "spdc/io/keyvalue.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "spdc/errors.hpp"

namespace spdc::io {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<KeyValueEntry> parse_key_value(std::string_view text, const std::string& source) {
  std::vector<KeyValueEntry> entries;
  std::set<std::pair<std::string, std::string>> seen;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(source, line_no, "unterminated section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (section.empty()) throw ParseError(source, line_no, "empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(source, line_no, "expected 'key = value'");
    KeyValueEntry entry{section, trim(std::string_view(line).substr(0, eq)),
                        trim(std::string_view(line).substr(eq + 1)), line_no};
    if (entry.key.empty()) throw ParseError(source, line_no, "empty key");
    if (entry.value.empty()) throw ParseError(source, line_no, "missing value for '" + entry.key + "'");
    if (!seen.emplace(section, entry.key).second)
      throw ParseError(source, line_no, "duplicate key '" + entry.key + "'");
    entries.push_back(std::move(entry));
    if (end == text.size()) break;
  }
  return entries;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

double parse_double_token(const std::string& token, const KeyValueEntry& entry, const std::string& source) {
  const std::string t = trim(token);
  double value = 0.0;
  const auto* first = t.data();
  const auto* last = t.data() + t.size();
  // from_chars rejects a leading '+'
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || t.empty())
    throw ParseError(source, entry.line, "'" + entry.key + "': not a number: '" + t + "'");
  return value;
}

}  // namespace

double parse_double(const KeyValueEntry& entry, const std::string& source) {
  return parse_double_token(entry.value, entry, source);
}

long parse_integer(const KeyValueEntry& entry, const std::string& source) {
  long value = 0;
  const auto* first = entry.value.data();
  const auto* last = first + entry.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw ParseError(source, entry.line, "'" + entry.key + "': not an integer: '" + entry.value + "'");
  return value;
}

bool parse_bool(const KeyValueEntry& entry, const std::string& source) {
  if (entry.value == "true" || entry.value == "yes" || entry.value == "on" || entry.value == "1") return true;
  if (entry.value == "false" || entry.value == "no" || entry.value == "off" || entry.value == "0") return false;
  throw ParseError(source, entry.line, "'" + entry.key + "': expected true/false, got '" + entry.value + "'");
}

std::vector<double> parse_double_list(const KeyValueEntry& entry, const std::string& source) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= entry.value.size()) {
    auto comma = entry.value.find(',', pos);
    if (comma == std::string::npos) comma = entry.value.size();
    out.push_back(parse_double_token(entry.value.substr(pos, comma - pos), entry, source));
    pos = comma + 1;
  }
  return out;
}

}  // namespace spdc::io
