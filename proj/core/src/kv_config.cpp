#include "narrframe/kv_config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "narrframe/error.hpp"
#include "narrframe/text.hpp"

namespace narrframe {

KvConfig KvConfig::parse(std::string_view text, std::string_view source) {
  KvConfig cfg;
  std::string section;
  std::size_t lineno = 0;
  for (auto raw : text::lines(text)) {
    ++lineno;
    const auto line = text::trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ParseError(std::string(source), lineno, "malformed section header");
      }
      section = std::string(text::trim(line.substr(1, line.size() - 2)));
      if (std::find(cfg.sections_.begin(), cfg.sections_.end(), section) == cfg.sections_.end()) {
        cfg.sections_.push_back(section);
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(std::string(source), lineno, "expected 'key = value'");
    }
    const auto key = text::trim(line.substr(0, eq));
    if (key.empty()) throw ParseError(std::string(source), lineno, "empty key");
    auto value = std::string(text::trim(line.substr(eq + 1)));
    cfg.values_[section.empty() ? std::string(key) : section + "." + std::string(key)] = std::move(value);
  }
  return cfg;
}

KvConfig KvConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

std::optional<std::string> KvConfig::get(std::string_view key) const {
  if (auto it = values_.find(std::string(key)); it != values_.end()) return it->second;
  return std::nullopt;
}

std::string KvConfig::get_or(std::string_view key, std::string_view fallback) const {
  auto v = get(key);
  return v ? *v : std::string(fallback);
}

long KvConfig::get_int(std::string_view key, long fallback) const {
  auto v = get(key);
  if (!v || v->empty()) return fallback;
  try {
    std::size_t used = 0;
    const long out = std::stol(*v, &used);
    if (used != v->size()) throw std::invalid_argument("trailing characters");
    return out;
  } catch (const std::exception&) {
    throw Error("config key '" + std::string(key) + "' is not an integer: " + *v);
  }
}

double KvConfig::get_double(std::string_view key, double fallback) const {
  auto v = get(key);
  if (!v || v->empty()) return fallback;
  std::istringstream in(*v);
  in.imbue(std::locale::classic());
  double out = 0;
  if (!(in >> out) || !in.eof()) {
    throw Error("config key '" + std::string(key) + "' is not a number: " + *v);
  }
  return out;
}

bool KvConfig::get_bool(std::string_view key, bool fallback) const {
  auto v = get(key);
  if (!v || v->empty()) return fallback;
  const auto t = text::to_lower(*v);
  if (t == "true" || t == "yes" || t == "on" || t == "1") return true;
  if (t == "false" || t == "no" || t == "off" || t == "0") return false;
  throw Error("config key '" + std::string(key) + "' is not a boolean: " + *v);
}

void KvConfig::set(std::string key, std::string value) { values_[std::move(key)] = std::move(value); }

void KvConfig::apply_env_overrides(std::string_view prefix) {
  for (auto& [key, value] : values_) {
    std::string name(prefix);
    for (char c : key) name.push_back(c == '.' || c == '-' ? '_' : c);
    name = text::to_upper(name);
    if (const char* env = std::getenv(name.c_str()); env != nullptr && *env != '\0') value = env;
  }
}

std::vector<std::string> KvConfig::sections() const { return sections_; }

std::map<std::string, std::string> KvConfig::section(std::string_view name) const {
  std::map<std::string, std::string> out;
  const std::string prefix = std::string(name) + ".";
  for (const auto& [k, v] : values_) {
    if (k.rfind(prefix, 0) == 0) out.emplace(k.substr(prefix.size()), v);
  }
  return out;
}

}  // namespace narrframe
