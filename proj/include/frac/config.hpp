#pragma once

#include "frac/recipes.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace frac {

/// Flat `key = value` text with optional `[section]` headers. Lines starting
/// with '#' or ';' are comments. Keys are unique within a section.
class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::string& path);
  std::string serialize() const;

  /// Sets `key` in `section` ("" is the top level).
  void set(const std::string& key, const std::string& value, const std::string& section = "");
  bool has(const std::string& key) const;
  /// Top-level value, else the single section holding `key`.
  std::optional<std::string> find(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::string require_string(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  double require_double(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_seed(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  /// Accepts "inf".
  double get_exponent(const std::string& key, double fallback) const;
  /// Comma- or space-separated numbers.
  std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;

  const std::map<std::string, std::map<std::string, std::string>>& sections() const { return data_; }
  bool operator==(const Config& other) const { return data_ == other.data_; }

 private:
  std::map<std::string, std::map<std::string, std::string>> data_;
};

/// A sum of recipes, e.g.
///   "taylor_green(amplitude=0.05) + taylor_green(amplitude=0.02, ky=2)".
/// Vector parameters use brackets: "gaussian_bump(center=[3 3], width=0.5)".
std::vector<Recipe> parse_recipes(const std::string& text);
Recipe parse_recipe(const std::string& text);
std::string format_recipe(const Recipe& recipe);

}  // namespace frac
