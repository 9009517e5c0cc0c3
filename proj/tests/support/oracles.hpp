#pragma once

// Independent reference implementations used to cross-check the library.
// They favour directness over speed and share no code with the code under test.

#include <optional>
#include <string>
#include <vector>

#include "narrframe/catalog.hpp"
#include "narrframe/structure.hpp"

namespace narrframe::oracle {

// Frame ids compatible with `s`, in catalog order, slot by slot from the
// signature text. Absent scalars are wildcards.
std::vector<std::string> compatible_frames(const Catalog& catalog, const NarrativeStructure& s);

struct OracleVerdict {
  // "UNIQUE", "TIED" or "NO_MATCH"
  std::string verdict;
  // Frames at the top specificity, catalog order.
  std::vector<std::string> best;
};

// Gold semantics: an incomplete structure never matches.
OracleVerdict match(const Catalog& catalog, const NarrativeStructure& s, bool gold);

// Krippendorff's nominal alpha from pairwise disagreements:
// 1 - (n-1) * sum_u (1/(m_u-1)) * #disagreeing ordered pairs in u / sum_{c!=k} n_c n_k.
// Rows are items; nullopt is a missing value.
double alpha_pairwise(const std::vector<std::vector<std::optional<std::string>>>& rows);

double kappa(const std::vector<std::string>& a, const std::vector<std::string>& b);

// Per-class F1 by counting (gold, pred) pairs directly; 0 when undefined.
double f1_for(const std::vector<std::string>& gold, const std::vector<std::string>& pred,
              const std::string& cls);
double macro_f1(const std::vector<std::string>& gold, const std::vector<std::string>& pred,
                const std::vector<std::string>& classes);

}  // namespace narrframe::oracle
