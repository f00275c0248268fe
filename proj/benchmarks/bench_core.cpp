#include <benchmark/benchmark.h>

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "matchstick/flexer.hpp"
#include "matchstick/ingest.hpp"
#include "matchstick/refiner.hpp"
#include "matchstick/rigidity.hpp"
#include "matchstick/verifier.hpp"

namespace {

using namespace matchstick;

std::string figure_text(const std::string& stem) {
  std::ifstream in(std::string(MATCHSTICK_ASSET_DIR) + "/figures/" + stem + ".tikz");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Prepared {
  Graph graph;
  Embedding refined;
};

const Prepared& prepared(const std::string& stem) {
  static std::map<std::string, Prepared> cache;
  auto it = cache.find(stem);
  if (it == cache.end()) {
    const IngestResult r = ingest_tikz(figure_text(stem));
    it = cache.emplace(stem, Prepared{r.graph, refine(r.graph, r.embedding).embedding}).first;
  }
  return it->second;
}

void BM_IngestHarborth(benchmark::State& state) {
  const std::string text = figure_text("fig02_harborth");
  for (auto _ : state) benchmark::DoNotOptimize(ingest_tikz(text));
}
BENCHMARK(BM_IngestHarborth)->Unit(benchmark::kMillisecond);

void BM_RefineHarborth(benchmark::State& state) {
  const IngestResult r = ingest_tikz(figure_text("fig02_harborth"));
  for (auto _ : state) benchmark::DoNotOptimize(refine(r.graph, r.embedding));
}
BENCHMARK(BM_RefineHarborth)->Unit(benchmark::kMillisecond);

void BM_AnalyzeHarborth(benchmark::State& state) {
  const Prepared& p = prepared("fig02_harborth");
  for (auto _ : state) benchmark::DoNotOptimize(analyze(p.graph, p.refined));
}
BENCHMARK(BM_AnalyzeHarborth)->Unit(benchmark::kMillisecond);

void BM_CriticalityKite(benchmark::State& state) {
  const Prepared& p = prepared("fig01a_kite");
  for (auto _ : state) benchmark::DoNotOptimize(criticality_scan(p.graph, p.refined));
}
BENCHMARK(BM_CriticalityKite)->Unit(benchmark::kMillisecond);

void BM_NoncrossingHarborth(benchmark::State& state) {
  const Prepared& p = prepared("fig02_harborth");
  for (auto _ : state) benchmark::DoNotOptimize(check_noncrossing(p.graph, p.refined, 1e-7));
}
BENCHMARK(BM_NoncrossingHarborth)->Unit(benchmark::kMicrosecond);

void BM_SteerTwelveFold(benchmark::State& state) {
  const Prepared& p = prepared("fig05_v1");
  for (auto _ : state) benchmark::DoNotOptimize(steer_to_event(p.graph, FlexState{p.refined, 0.0, {}}, Monitor{0, 19, 2.0}));
}
BENCHMARK(BM_SteerTwelveFold)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
