#include "shemass/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "shemass/errors.hpp"

namespace shemass {

namespace {

constexpr std::array<SchemaEntry, 34> kSchema{{
    {"grid", "half_length", "float", "domain half width L; domain is [-L, L]"},
    {"grid", "dx", "float", "mesh width"},
    {"grid", "dt", "float", "time step (default dx^2/(2*theta), half the CFL limit)"},
    {"grid", "theta", "float", "diffusion scale theta"},
    {"grid", "t_end", "float", "final time"},
    {"grid", "boundary", "string", "dirichlet_zero | neumann_zero"},
    {"u0", "kind", "string", "indicator | gaussian_bump | constant | csv"},
    {"u0", "lo", "float", "indicator left edge"},
    {"u0", "hi", "float", "indicator right edge"},
    {"u0", "amplitude", "float", "indicator height (default 1)"},
    {"u0", "center", "float", "gaussian bump center"},
    {"u0", "width", "float", "gaussian bump width"},
    {"u0", "mass", "float", "gaussian bump mass (default 1)"},
    {"u0", "value", "float", "constant level"},
    {"u0", "path", "string", "CSV file with columns x,value"},
    {"v0", "kind", "string", "indicator | gaussian_bump | constant | csv"},
    {"v0", "lo", "float", "indicator left edge"},
    {"v0", "hi", "float", "indicator right edge"},
    {"v0", "amplitude", "float", "indicator height (default 1)"},
    {"v0", "center", "float", "gaussian bump center"},
    {"v0", "width", "float", "gaussian bump width"},
    {"v0", "mass", "float", "gaussian bump mass (default 1)"},
    {"v0", "value", "float", "constant level"},
    {"v0", "path", "string", "CSV file with columns x,value"},
    {"sigma1", "kind", "string", "zero | linear"},
    {"sigma1", "lambda", "float", "slope of the linear nonlinearity"},
    {"sigma2", "kind", "string", "zero | linear"},
    {"sigma2", "lambda", "float", "slope of the linear nonlinearity"},
    {"run", "seed", "int", "global seed; per-path streams are derived from it"},
    {"run", "n_paths", "int", "Monte Carlo sample size (>= 2)"},
    {"run", "save_times", "float-list", "times to record (snapped to the step grid)"},
    {"run", "save_stride", "int", "record every k-th step instead of save_times"},
    {"run", "parallel", "bool", "run paths under OpenMP (default true)"},
    {"bounds", "beta_grid", "float-list", "admissible beta values for bound sweeps"},
}};

// Keys that live outside the fixed 34-entry block above.
constexpr std::array<SchemaEntry, 4> kSchemaExtra{{
    {"bounds", "delta_scale", "float", "corollary-1 schedule scale (default theta)"},
    {"bounds", "epsilon_rel", "float", "spectral support threshold, relative (default 1e-6)"},
    {"pam", "n_list", "float-list", "truncation radii N for the constant initial datum"},
    {"output", "dir", "string", "output directory (overridden by --out / SHEMASS_OUT_DIR)"},
}};

std::vector<SchemaEntry> build_full_schema() {
  std::vector<SchemaEntry> all(kSchema.begin(), kSchema.end());
  all.insert(all.end(), kSchemaExtra.begin(), kSchemaExtra.end());
  return all;
}

const std::vector<SchemaEntry>& full_schema() {
  static const std::vector<SchemaEntry> schema = build_full_schema();
  return schema;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool schema_has(const std::string& section, const std::string& key) {
  for (const auto& e : full_schema())
    if (section == e.section && key == e.key) return true;
  return false;
}

std::string known_keys_for(const std::string& section) {
  std::string out;
  for (const auto& e : full_schema()) {
    if (section == e.section) {
      if (!out.empty()) out += ", ";
      out += e.key;
    }
  }
  return out.empty() ? "(no such section)" : out;
}

double parse_double(const std::string& section, const std::string& key, const std::string& raw) {
  char* end = nullptr;
  const double v = std::strtod(raw.c_str(), &end);
  if (end == raw.c_str() || *end != '\0')
    throw ConfigError("bad float for " + section + "." + key + ": '" + raw + "'");
  return v;
}

}  // namespace

std::span<const SchemaEntry> config_schema() {
  return {full_schema().data(), full_schema().size()};
}

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return from_string(ss.str());
}

KeyValueConfig KeyValueConfig::from_string(const std::string& text) {
  KeyValueConfig cfg;
  std::istringstream is(text);
  std::string line, section;
  long lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.resize(comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": bad section");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty section");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    if (section.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": key outside any [section]");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    cfg.sections_[section][key] = value;
  }
  cfg.validate_keys();
  return cfg;
}

void KeyValueConfig::validate_keys() const {
  for (const auto& [section, kv] : sections_)
    for (const auto& [key, value] : kv)
      if (!schema_has(section, key))
        throw ConfigError("unknown config key '" + section + "." + key +
                          "'; known keys in [" + section + "]: " + known_keys_for(section));
}

void KeyValueConfig::set(const std::string& section, const std::string& key,
                         const std::string& value) {
  if (!schema_has(section, key))
    throw ConfigError("unknown config key '" + section + "." + key + "'; known keys in [" +
                      section + "]: " + known_keys_for(section));
  sections_[section][key] = value;
}

void KeyValueConfig::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override must look like section.key=value: " + assignment);
  const std::string path = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  const auto dot = path.find('.');
  if (dot == std::string::npos)
    throw ConfigError("override must look like section.key=value: " + assignment);
  set(path.substr(0, dot), path.substr(dot + 1), value);
}

bool KeyValueConfig::has(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) > 0;
}

std::string KeyValueConfig::get_string(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  if (s != sections_.end()) {
    const auto k = s->second.find(key);
    if (k != s->second.end()) return k->second;
  }
  throw ConfigError("missing required config key: " + section + "." + key);
}

std::string KeyValueConfig::get_string_or(const std::string& section, const std::string& key,
                                          const std::string& fallback) const {
  return has(section, key) ? get_string(section, key) : fallback;
}

double KeyValueConfig::get_double(const std::string& section, const std::string& key) const {
  return parse_double(section, key, get_string(section, key));
}

double KeyValueConfig::get_double_or(const std::string& section, const std::string& key,
                                     double fallback) const {
  return has(section, key) ? get_double(section, key) : fallback;
}

long KeyValueConfig::get_long(const std::string& section, const std::string& key) const {
  const std::string raw = get_string(section, key);
  char* end = nullptr;
  const long v = std::strtol(raw.c_str(), &end, 10);
  if (end == raw.c_str() || *end != '\0')
    throw ConfigError("bad integer for " + section + "." + key + ": '" + raw + "'");
  return v;
}

long KeyValueConfig::get_long_or(const std::string& section, const std::string& key,
                                 long fallback) const {
  return has(section, key) ? get_long(section, key) : fallback;
}

bool KeyValueConfig::get_bool_or(const std::string& section, const std::string& key,
                                 bool fallback) const {
  if (!has(section, key)) return fallback;
  std::string raw = get_string(section, key);
  std::transform(raw.begin(), raw.end(), raw.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (raw == "true" || raw == "1" || raw == "yes" || raw == "on") return true;
  if (raw == "false" || raw == "0" || raw == "no" || raw == "off") return false;
  throw ConfigError("bad bool for " + section + "." + key + ": '" + raw + "'");
}

std::vector<double> KeyValueConfig::get_double_list(const std::string& section,
                                                    const std::string& key) const {
  const std::string raw = get_string(section, key);
  std::vector<double> out;
  std::istringstream is(raw);
  std::string tok;
  while (is >> tok) out.push_back(parse_double(section, key, tok));
  if (out.empty()) throw ConfigError("empty list for " + section + "." + key);
  return out;
}

}  // namespace shemass
