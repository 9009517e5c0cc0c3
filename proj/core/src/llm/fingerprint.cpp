#include "narrframe/llm/fingerprint.hpp"

#include <openssl/evp.h>

#include <array>
#include <memory>

#include "narrframe/text.hpp"

namespace narrframe::llm {

std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
    throw Error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::string fingerprint(const CompletionRequest& request, bool run_indexed) {
  std::string material = request.model_id;
  material += '\n';
  material += text::normalize_newlines(request.full_text());
  if (run_indexed) material += "\nrun=" + std::to_string(request.run_index);
  return sha256_hex(material);
}

bool needs_run_index(const CompletionRequest& request, const Provider& provider) {
  return request.temperature > 0.0 || !provider.deterministic();
}

}  // namespace narrframe::llm
