// Serial reference vs OpenMP kernel for extraction, the bootstrap, and the
// threshold sweep. Each pair of kernels is checked for identical output once
// before timing.
#include <benchmark/benchmark.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "binomials/extract.hpp"
#include "binomials/graph.hpp"
#include "binomials/null_model.hpp"
#include "binomials/random.hpp"

namespace {

namespace fs = std::filesystem;
using namespace binomials;

const std::vector<std::string> kWords = {"salt",  "pepper", "bread", "butter", "fish",   "chips", "rock",
                                         "roll",  "black",  "white", "cats",   "dogs",   "hot",   "cold",
                                         "sweet", "sour",   "game",  "season", "player", "coach"};

// Four JSONL files of synthetic comments, written once per process.
const std::vector<fs::path>& corpus_files() {
  static const std::vector<fs::path> files = [] {
    std::vector<fs::path> out;
    const fs::path dir = fs::temp_directory_path() / "binomials_bench";
    fs::create_directories(dir);
    std::mt19937_64 gen(1);
    for (int f = 0; f < 4; ++f) {
      out.push_back(dir / ("corpus_" + std::to_string(f) + ".jsonl"));
      std::ofstream o(out.back());
      for (int r = 0; r < 20000; ++r) {
        std::string body;
        for (int t = 0; t < 30; ++t) {
          body += kWords[gen() % kWords.size()];
          body += (gen() % 5 == 0) ? " and " : (gen() % 9 == 0) ? ". " : " ";
        }
        o << R"({"body":")" << body << R"(","created_utc":)" << 1400000000 + gen() % 150000000
          << R"(,"subreddit":"c)" << gen() % 6 << R"(","author":"u"})" << '\n';
      }
    }
    return out;
  }();
  return files;
}

void BM_ExtractSerial(benchmark::State& state) {
  const ExtractConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(extract_files_serial(corpus_files(), config));
}

void BM_ExtractParallel(benchmark::State& state) {
  const ExtractConfig config;
  const auto shards = static_cast<std::size_t>(state.range(0));
  if (!(extract_files(corpus_files(), config, shards) == extract_files_serial(corpus_files(), config))) {
    state.SkipWithError("parallel extraction differs from the serial reference");
    return;
  }
  for (auto _ : state) benchmark::DoNotOptimize(extract_files(corpus_files(), config, shards));
}

const std::vector<CellSample>& bootstrap_input() {
  static const std::vector<CellSample> cells = [] {
    Rng rng(2);
    PairTable t;
    for (int p = 0; p < 400; ++p) {
      const double prob = 0.1 + 0.8 * uniform01(rng);
      for (int c = 0; c < 5; ++c) {
        for (int y = 2012; y < 2018; ++y) {
          std::uint64_t f = 0;
          for (int i = 0; i < 60; ++i) f += bernoulli(rng, prob);
          t[PairKey{"p" + std::to_string(p), "z"}].counts[{"c" + std::to_string(c), y}] = {f, 60 - f};
        }
      }
    }
    return bootstrap_cells(t);
  }();
  return cells;
}

void BM_BootstrapSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bootstrap_sbar_serial(bootstrap_input(), 200, 7));
}

void BM_BootstrapParallel(benchmark::State& state) {
  if (!(bootstrap_sbar(bootstrap_input(), 200, 7) == bootstrap_sbar_serial(bootstrap_input(), 200, 7))) {
    state.SkipWithError("parallel bootstrap differs from the serial reference");
    return;
  }
  for (auto _ : state) benchmark::DoNotOptimize(bootstrap_sbar(bootstrap_input(), 200, 7));
}

const BinomialGraph& sweep_graph() {
  static const BinomialGraph g = [] {
    std::mt19937_64 gen(3);
    BinomialGraph out;
    for (int i = 0; i < 3000; ++i) {
      const auto a = "w" + std::to_string(gen() % 1500);
      const auto b = "w" + std::to_string(gen() % 1500);
      if (a == b || out.edges.count({b, a})) continue;
      EdgeInfo e;
      e.asymmetry = static_cast<double>(gen() % 1001) / 1000.0;
      e.n_total = 30;
      e.ordinality = 0.5 + e.asymmetry / 2;
      out.edges.emplace(Edge{a, b}, e);
      out.nodes[a].distinct_lists += 1;
      out.nodes[b].distinct_lists += 1;
    }
    return out;
  }();
  return g;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto taus = even_taus(101);
  for (auto _ : state) benchmark::DoNotOptimize(threshold_sweep_serial(sweep_graph(), taus));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto taus = even_taus(101);
  if (threshold_sweep(sweep_graph(), taus) != threshold_sweep_serial(sweep_graph(), taus)) {
    state.SkipWithError("parallel sweep differs from the serial reference");
    return;
  }
  for (auto _ : state) benchmark::DoNotOptimize(threshold_sweep(sweep_graph(), taus));
}

}  // namespace

BENCHMARK(BM_ExtractSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExtractParallel)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BootstrapSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BootstrapParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
