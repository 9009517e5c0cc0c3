#include "narrframe/llm/cache.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <random>
#include <sstream>
#include <system_error>

#include <fmt/format.h>
#include <json.hpp>

#include "narrframe/error.hpp"

namespace narrframe::llm {

using nlohmann::json;

std::string record_to_json(const CompletionRecord& r) {
  json obj{{"fingerprint", r.fingerprint}, {"model_id", r.model_id},
           {"provider", r.provider},       {"raw_response", r.raw_response},
           {"timestamp", r.timestamp},     {"run_count", r.run_count}};
  return obj.dump(2) + "\n";
}

CompletionRecord record_from_json(std::string_view text, std::string_view source) {
  try {
    const auto obj = json::parse(text);
    CompletionRecord r;
    r.fingerprint = obj.at("fingerprint").get<std::string>();
    r.model_id = obj.value("model_id", "");
    r.provider = obj.value("provider", "");
    r.raw_response = obj.at("raw_response").get<std::string>();
    r.timestamp = obj.value("timestamp", "");
    r.run_count = obj.value("run_count", 1);
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string(source), 0, e.what());
  }
}

RecordStore::RecordStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path RecordStore::path_for(const std::string& fingerprint) const {
  return dir_ / (fingerprint + ".json");
}

bool RecordStore::contains(const std::string& fingerprint) const {
  return std::filesystem::exists(path_for(fingerprint));
}

std::optional<CompletionRecord> RecordStore::load(const std::string& fingerprint) const {
  const auto path = path_for(fingerprint);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return record_from_json(ss.str(), path.string());
}

void RecordStore::store(const CompletionRecord& record) const {
  const auto target = path_for(record.fingerprint);
  if (std::filesystem::exists(target)) return;
  std::filesystem::create_directories(dir_);
  thread_local std::mt19937_64 rng{std::random_device{}()};
  const auto tmp = dir_ / fmt::format(".{}.{:016x}.tmp", record.fingerprint, rng());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write cache file " + tmp.string());
    out << record_to_json(record);
    out.flush();
    if (!out) throw Error("short write to cache file " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot move cache file into place: " + ec.message());
  }
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  return fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}Z", tm.tm_year + 1900, tm.tm_mon + 1,
                     tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
}

}  // namespace narrframe::llm
