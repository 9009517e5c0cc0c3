#include <benchmark/benchmark.h>

#include <random>

#include "narrframe/catalog.hpp"
#include "narrframe/matcher.hpp"

using namespace narrframe;

namespace {

std::vector<NarrativeStructure> random_structures(const Catalog& catalog, std::size_t n) {
  std::mt19937_64 rng(7);
  const auto& classes = catalog.taxonomy().classes();
  auto role = [&] {
    const auto k = rng() % (classes.size() + 1);
    return k == classes.size() ? Stakeholder::none() : Stakeholder(classes[k].label);
  };
  std::vector<NarrativeStructure> out(n);
  for (auto& s : out) {
    s.hero = role();
    s.villain = role();
    s.victim = role();
    s.focus = kAllFocus[rng() % kAllFocus.size()];
    s.conflict = kAllConflicts[rng() % kAllConflicts.size()];
    if (rng() % 4 != 0) s.story = kAllStories[rng() % kAllStories.size()];
  }
  return out;
}

void BM_MatchPredicted(benchmark::State& state) {
  const auto catalog = climate_catalog();
  const Matcher matcher(catalog);
  const auto structures = random_structures(catalog, 4096);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(matcher.match(structures[i++ % structures.size()], MatchMode::kPredicted));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_MatchPredicted);

void BM_EnumerateClimate(benchmark::State& state) {
  const auto catalog = climate_catalog();
  EnumerationOptions options;
  options.keep_table = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_matches(catalog, {}, options));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(structure_space_size(catalog)));
}
BENCHMARK(BM_EnumerateClimate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
