#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "semchain/backends/mock.hpp"
#include "semchain/chainsim/report.hpp"
#include "semchain/chainsim/simulator.hpp"
#include "semchain/ingest/base64.hpp"
#include "semchain/ingest/chunking.hpp"
#include "semchain/ingest/gzip.hpp"
#include "semchain/semantics/rosis.hpp"

namespace {

using namespace semchain;

Bytes random_bytes(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Bytes out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng());
  return out;
}

// Original-image corpus shape: many assets of tens of chunks each, one
// submission instant.
void BM_SimulatorRun(benchmark::State& state) {
  const auto assets = static_cast<std::size_t>(state.range(0));
  chainsim::Simulator sim(chainsim::ChainConfig{});
  std::mt19937_64 rng(1);
  std::size_t txs = 0;
  for (std::size_t a = 0; a < assets; ++a) {
    std::vector<std::uint64_t> chunks(10 + rng() % 40, 100'000);
    chunks.back() = 1 + rng() % 100'000;
    txs += chunks.size();
    sim.submit("img" + std::to_string(a), chunks, 0);
  }
  for (auto _ : state) {
    auto blocks = sim.run();
    benchmark::DoNotOptimize(blocks);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * txs));
}
BENCHMARK(BM_SimulatorRun)->Arg(100)->Arg(800);

void BM_ComputeReport(benchmark::State& state) {
  chainsim::Simulator sim(chainsim::ChainConfig{});
  for (int a = 0; a < 800; ++a) sim.submit("img" + std::to_string(a), std::vector<std::uint64_t>(30, 100'000), 0);
  const auto blocks = sim.run();
  for (auto _ : state) {
    auto report = chainsim::compute_report(blocks, sim.submissions(), sim.config());
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(BM_ComputeReport);

void BM_Base64Encode(benchmark::State& state) {
  const auto payload = random_bytes(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(ingest::encode_base64(payload));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * payload.size()));
}
BENCHMARK(BM_Base64Encode)->Arg(1 << 12)->Arg(1 << 22);

void BM_Base64Decode(benchmark::State& state) {
  const auto text = ingest::encode_base64(random_bytes(static_cast<std::size_t>(state.range(0)), 3));
  for (auto _ : state) benchmark::DoNotOptimize(ingest::decode_base64(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Base64Decode)->Arg(1 << 12)->Arg(1 << 22);

void BM_ChunkAndReassemble(benchmark::State& state) {
  const auto payload = random_bytes(4 << 20, 4);
  for (auto _ : state) {
    const auto chunks = ingest::chunk_payload(payload, ingest::kDefaultChunkSize);
    benchmark::DoNotOptimize(ingest::reassemble(chunks));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * payload.size()));
}
BENCHMARK(BM_ChunkAndReassemble);

void BM_GzipPrompt(benchmark::State& state) {
  const std::string prompt = "a yellow tiger resting in tall green grass beside a quiet river at dawn";
  for (auto _ : state) benchmark::DoNotOptimize(ingest::compress_prompt(prompt));
}
BENCHMARK(BM_GzipPrompt);

void BM_RosisSelect(benchmark::State& state) {
  const backends::MockBackend mock;
  const semantics::Prompt prompt("a yellow tiger resting in tall green grass beside a quiet river at dawn");
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = i + 1;
  const auto execution = state.range(1) != 0 ? semantics::Execution::Parallel : semantics::Execution::Sequential;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        semantics::rosis_select(prompt, seeds, mock, semantics::SelectionMode::Best, std::nullopt, execution));
  }
}
BENCHMARK(BM_RosisSelect)->Args({4, 0})->Args({4, 1})->Args({64, 0});

void BM_CosineDistance(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss;
  std::vector<double> a(static_cast<std::size_t>(state.range(0))), b(a.size());
  for (auto& x : a) x = gauss(rng);
  for (auto& x : b) x = gauss(rng);
  for (auto _ : state) benchmark::DoNotOptimize(semantics::cosine_distance(a, b));
}
BENCHMARK(BM_CosineDistance)->Arg(256)->Arg(768);

}  // namespace

BENCHMARK_MAIN();
