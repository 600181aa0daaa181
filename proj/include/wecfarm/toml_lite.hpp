#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace wecfarm::toml {

// Minimal TOML subset: [section] headers, key = value with strings, integers,
// floats, booleans, and flat arrays; # comments. Enough for study configs;
// nested tables and multi-line values are rejected with a line-numbered error.
using Value = std::variant<std::string, double, bool, std::vector<double>,
                           std::vector<std::string>>;

class Table {
 public:
  void set(const std::string& section, const std::string& key, Value v);
  bool has(const std::string& section, const std::string& key) const;

  std::optional<std::string> get_string(const std::string& section,
                                        const std::string& key) const;
  std::optional<double> get_number(const std::string& section,
                                   const std::string& key) const;
  std::optional<bool> get_bool(const std::string& section,
                               const std::string& key) const;
  std::optional<std::vector<double>> get_numbers(const std::string& section,
                                                 const std::string& key) const;
  std::optional<std::vector<std::string>> get_strings(
      const std::string& section, const std::string& key) const;

  // All keys of a section in insertion-independent (sorted) order.
  std::vector<std::string> keys(const std::string& section) const;

 private:
  const Value* find(const std::string& section, const std::string& key) const;
  std::map<std::string, std::map<std::string, Value>> sections_;
};

// Throws SchemaError with a line number on malformed input.
Table parse(const std::string& text);
Table parse_file(const std::string& path);

}  // namespace wecfarm::toml
