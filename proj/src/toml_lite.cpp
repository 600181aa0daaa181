#include "wecfarm/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "wecfarm/errors.hpp"

namespace wecfarm::toml {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Strips a trailing comment that is not inside a quoted string.
std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw SchemaError("toml: line " + std::to_string(line) + ": " + what);
}

Value parse_scalar(const std::string& tok, int line) {
  if (tok.size() >= 2 && tok.front() == '"' && tok.back() == '"')
    return tok.substr(1, tok.size() - 2);
  if (tok == "true") return true;
  if (tok == "false") return false;
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used == tok.size()) return v;
  } catch (...) {
  }
  fail(line, "cannot parse value '" + tok + "'");
}

Value parse_array(const std::string& body, int line) {
  std::vector<std::string> toks;
  std::string cur;
  bool quoted = false;
  for (char c : body) {
    if (c == '"') quoted = !quoted;
    if (c == ',' && !quoted) {
      toks.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) toks.push_back(trim(cur));

  std::vector<double> nums;
  std::vector<std::string> strs;
  for (const std::string& t : toks) {
    Value v = parse_scalar(t, line);
    if (std::holds_alternative<double>(v))
      nums.push_back(std::get<double>(v));
    else if (std::holds_alternative<std::string>(v))
      strs.push_back(std::get<std::string>(v));
    else
      fail(line, "unsupported array element '" + t + "'");
  }
  if (!nums.empty() && !strs.empty()) fail(line, "mixed-type array");
  if (!strs.empty()) return strs;
  return nums;
}

}  // namespace

void Table::set(const std::string& section, const std::string& key, Value v) {
  sections_[section][key] = std::move(v);
}

const Value* Table::find(const std::string& section, const std::string& key) const {
  auto s = sections_.find(section);
  if (s == sections_.end()) return nullptr;
  auto k = s->second.find(key);
  if (k == s->second.end()) return nullptr;
  return &k->second;
}

bool Table::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

std::optional<std::string> Table::get_string(const std::string& section,
                                             const std::string& key) const {
  const Value* v = find(section, key);
  if (!v || !std::holds_alternative<std::string>(*v)) return std::nullopt;
  return std::get<std::string>(*v);
}

std::optional<double> Table::get_number(const std::string& section,
                                        const std::string& key) const {
  const Value* v = find(section, key);
  if (!v || !std::holds_alternative<double>(*v)) return std::nullopt;
  return std::get<double>(*v);
}

std::optional<bool> Table::get_bool(const std::string& section,
                                    const std::string& key) const {
  const Value* v = find(section, key);
  if (!v || !std::holds_alternative<bool>(*v)) return std::nullopt;
  return std::get<bool>(*v);
}

std::optional<std::vector<double>> Table::get_numbers(const std::string& section,
                                                      const std::string& key) const {
  const Value* v = find(section, key);
  if (!v || !std::holds_alternative<std::vector<double>>(*v)) return std::nullopt;
  return std::get<std::vector<double>>(*v);
}

std::optional<std::vector<std::string>> Table::get_strings(
    const std::string& section, const std::string& key) const {
  const Value* v = find(section, key);
  if (!v || !std::holds_alternative<std::vector<std::string>>(*v))
    return std::nullopt;
  return std::get<std::vector<std::string>>(*v);
}

std::vector<std::string> Table::keys(const std::string& section) const {
  std::vector<std::string> out;
  auto s = sections_.find(section);
  if (s == sections_.end()) return out;
  for (const auto& [k, _] : s->second) out.push_back(k);
  return out;
}

Table parse(const std::string& text) {
  Table table;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) fail(line_no, "empty section name");
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "empty key");
    if (val.empty()) fail(line_no, "empty value");
    if (val.front() == '[') {
      if (val.back() != ']') fail(line_no, "unterminated array");
      table.set(section, key, parse_array(val.substr(1, val.size() - 2), line_no));
    } else {
      table.set(section, key, parse_scalar(val, line_no));
    }
  }
  return table;
}

Table parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("toml: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace wecfarm::toml
