#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

namespace shemass {

// One config-file key: section, name, type tag and help line.  The parser,
// the override validator and the CLI's schema dump all read this table.
struct SchemaEntry {
  const char* section;
  const char* key;
  const char* type;  // "float" | "int" | "bool" | "string" | "float-list"
  const char* help;
};

std::span<const SchemaEntry> config_schema();

// Sectioned key=value text ('#' or ';' comments).  Keys are validated against
// the schema: unknown keys are errors, not warnings.
class KeyValueConfig {
 public:
  static KeyValueConfig from_file(const std::string& path);
  static KeyValueConfig from_string(const std::string& text);

  void set(const std::string& section, const std::string& key, const std::string& value);
  // assignment has the form "section.key=value"
  void apply_override(const std::string& assignment);

  bool has(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key) const;
  std::string get_string_or(const std::string& section, const std::string& key,
                            const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key, double fallback) const;
  long get_long(const std::string& section, const std::string& key) const;
  long get_long_or(const std::string& section, const std::string& key, long fallback) const;
  bool get_bool_or(const std::string& section, const std::string& key, bool fallback) const;
  std::vector<double> get_double_list(const std::string& section, const std::string& key) const;

  const std::map<std::string, std::map<std::string, std::string>>& sections() const {
    return sections_;
  }

 private:
  void validate_keys() const;
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

}  // namespace shemass
