#include <benchmark/benchmark.h>

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "narrframe/metrics/agreement.hpp"
#include "narrframe/metrics/classification.hpp"

using namespace narrframe;

namespace {

std::vector<std::string> draw(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  std::vector<std::string> out(n);
  for (auto& x : out) x = std::string(1, static_cast<char>('A' + rng() % k));
  return out;
}

void BM_MacroF1(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto gold = draw(rng, n, 16);
  const auto pred = draw(rng, n, 16);
  std::vector<std::string> classes;
  for (char c = 'A'; c < 'A' + 16; ++c) classes.emplace_back(1, c);
  for (auto _ : state) benchmark::DoNotOptimize(metrics::macro_f1(gold, pred, classes));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MacroF1)->Arg(1000)->Arg(100000);

void BM_KrippendorffAlpha(benchmark::State& state) {
  std::mt19937_64 rng(2);
  metrics::AgreementTable t;
  t.annotators = {"a", "b", "c", "d"};
  for (std::int64_t i = 0; i < state.range(0); ++i) {
    t.items.push_back("i" + std::to_string(i));
    std::vector<std::optional<std::string>> row;
    for (const auto& label : draw(rng, 4, 11)) {
      row.push_back(rng() % 10 == 0 ? std::nullopt : std::optional<std::string>(label));
    }
    t.labels.push_back(std::move(row));
  }
  for (auto _ : state) benchmark::DoNotOptimize(metrics::krippendorff_alpha(t));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KrippendorffAlpha)->Arg(500)->Arg(50000);

}  // namespace
