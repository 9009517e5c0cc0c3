#pragma once

#include <filesystem>
#include <optional>
#include <string>

namespace narrframe::llm {

struct CompletionRecord {
  std::string fingerprint;
  std::string model_id;
  std::string provider;
  std::string raw_response;
  std::string timestamp;  // ISO-8601 UTC
  // Number of requested runs served by this record.
  int run_count = 1;

  bool operator==(const CompletionRecord&) const = default;
};

std::string record_to_json(const CompletionRecord& record);
CompletionRecord record_from_json(std::string_view json, std::string_view source = "<record>");

// Directory of `<fingerprint>.json` files. Records are written once, via a
// temporary file renamed into place.
class RecordStore {
 public:
  explicit RecordStore(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path_for(const std::string& fingerprint) const;

  bool contains(const std::string& fingerprint) const;
  std::optional<CompletionRecord> load(const std::string& fingerprint) const;
  // No-op when a record for the fingerprint already exists.
  void store(const CompletionRecord& record) const;

 private:
  std::filesystem::path dir_;
};

std::string utc_timestamp();

}  // namespace narrframe::llm
