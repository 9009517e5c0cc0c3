#include "oracles.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace narrframe::oracle {

namespace {

bool role_ok(const RoleConstraint& c, const Stakeholder& s) {
  if (c.any) return true;
  if (s.is_none()) return false;
  for (const auto& a : c.admissible) {
    if (a == s.label()) return true;
  }
  return false;
}

int specificity(const FrameSignature& f, const NarrativeStructure& s) {
  int n = 0;
  n += f.hero.any ? 0 : 1;
  n += f.villain.any ? 0 : 1;
  n += f.victim.any ? 0 : 1;
  n += s.focus ? 1 : 0;
  n += s.conflict ? 1 : 0;
  n += s.story ? 1 : 0;
  return n;
}

}  // namespace

std::vector<std::string> compatible_frames(const Catalog& catalog, const NarrativeStructure& s) {
  std::vector<std::string> out;
  for (const auto& f : catalog.frames()) {
    if (!role_ok(f.hero, s.hero) || !role_ok(f.villain, s.villain) || !role_ok(f.victim, s.victim)) continue;
    if (s.focus && *s.focus != f.focus) continue;
    if (s.conflict && *s.conflict != f.conflict) continue;
    if (s.story && *s.story != f.story) continue;
    out.push_back(f.frame_id);
  }
  return out;
}

OracleVerdict match(const Catalog& catalog, const NarrativeStructure& s, bool gold) {
  OracleVerdict v{"NO_MATCH", {}};
  if (gold && !(s.focus && s.conflict && s.story)) return v;
  int top = -1;
  for (const auto& id : compatible_frames(catalog, s)) {
    const int sp = specificity(*catalog.find(id), s);
    if (sp > top) {
      top = sp;
      v.best.clear();
    }
    if (sp == top) v.best.push_back(id);
  }
  if (!v.best.empty()) v.verdict = v.best.size() == 1 ? "UNIQUE" : "TIED";
  return v;
}

double alpha_pairwise(const std::vector<std::vector<std::optional<std::string>>>& rows) {
  std::map<std::string, double> n_c;
  double n = 0;
  double observed = 0;
  for (const auto& row : rows) {
    std::vector<std::string> values;
    for (const auto& v : row) {
      if (v) values.push_back(*v);
    }
    const auto m = values.size();
    if (m < 2) continue;
    double disagreeing = 0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (i != j && values[i] != values[j]) disagreeing += 1;
      }
    }
    observed += disagreeing / static_cast<double>(m - 1);
    for (const auto& v : values) n_c[v] += 1;
    n += static_cast<double>(m);
  }
  double expected = 0;
  for (const auto& [c, nc] : n_c) {
    for (const auto& [k, nk] : n_c) {
      if (c != k) expected += nc * nk;
    }
  }
  if (expected == 0 && observed == 0) return 1.0;  // a single value throughout
  return 1.0 - (n - 1) * observed / expected;
}

double kappa(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  const double n = static_cast<double>(a.size());
  std::set<std::string> labels(a.begin(), a.end());
  labels.insert(b.begin(), b.end());
  double agree = 0;
  for (std::size_t i = 0; i < a.size(); ++i) agree += a[i] == b[i] ? 1 : 0;
  const double po = agree / n;
  double pe = 0;
  for (const auto& l : labels) {
    const double pa = static_cast<double>(std::count(a.begin(), a.end(), l)) / n;
    const double pb = static_cast<double>(std::count(b.begin(), b.end(), l)) / n;
    pe += pa * pb;
  }
  if (pe == 1.0 && po == 1.0) return 1.0;  // both raters used one shared label
  return (po - pe) / (1 - pe);
}

double f1_for(const std::vector<std::string>& gold, const std::vector<std::string>& pred, const std::string& cls) {
  double tp = 0;
  double fp = 0;
  double fn = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const bool g = gold[i] == cls;
    const bool p = pred[i] == cls;
    if (g && p) tp += 1;
    if (!g && p) fp += 1;
    if (g && !p) fn += 1;
  }
  // F1 = 2TP / (2TP + FP + FN), which is 0/0 only when the class never occurs.
  const double denom = 2 * tp + fp + fn;
  return denom == 0 ? 0.0 : 2 * tp / denom;
}

double macro_f1(const std::vector<std::string>& gold, const std::vector<std::string>& pred,
                const std::vector<std::string>& classes) {
  double sum = 0;
  for (const auto& c : classes) sum += f1_for(gold, pred, c);
  return classes.empty() ? 0.0 : sum / static_cast<double>(classes.size());
}

}  // namespace narrframe::oracle
