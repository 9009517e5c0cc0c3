#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "narrframe/llm/provider.hpp"

namespace narrframe::llm {

std::string sha256_hex(std::string_view data);

// SHA-256 over "model\n" + full text with newlines normalized to LF, plus
// "\nrun=<k>" when `run_indexed`. Lowercase hex.
std::string fingerprint(const CompletionRequest& request, bool run_indexed);

// Runs share a fingerprint only when their outputs are expected to be identical.
bool needs_run_index(const CompletionRequest& request, const Provider& provider);

}  // namespace narrframe::llm
