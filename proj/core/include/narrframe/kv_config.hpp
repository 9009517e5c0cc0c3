#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace narrframe {

// Plain-text `key = value` configuration with optional [section] headers.
// Full-line comments start with '#' or ';'. Keys of a section are stored as
// "section.key".
class KvConfig {
 public:
  KvConfig() = default;

  static KvConfig parse(std::string_view text, std::string_view source = "<config>");
  static KvConfig load(const std::filesystem::path& path);

  std::optional<std::string> get(std::string_view key) const;
  std::string get_or(std::string_view key, std::string_view fallback) const;
  long get_int(std::string_view key, long fallback) const;
  double get_double(std::string_view key, double fallback) const;
  bool get_bool(std::string_view key, bool fallback) const;

  void set(std::string key, std::string value);

  // For every key k, a non-empty environment variable PREFIX + upper(k with
  // '.' and '-' as '_') replaces the stored value.
  void apply_env_overrides(std::string_view prefix);

  std::vector<std::string> sections() const;
  // Keys of one section with the "section." prefix stripped.
  std::map<std::string, std::string> section(std::string_view name) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
  std::vector<std::string> sections_;
};

}  // namespace narrframe
