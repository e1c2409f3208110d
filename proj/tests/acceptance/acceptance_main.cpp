// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "fifo_oracle.hpp"
#include "semchain/backends/mock.hpp"
#include "semchain/chainsim/report.hpp"
#include "semchain/chainsim/simulator.hpp"
#include "semchain/ingest/base64.hpp"
#include "semchain/ingest/chunking.hpp"
#include "semchain/ingest/gzip.hpp"
#include "semchain/pipeline/commands.hpp"
#include "semchain/semantics/embedding.hpp"
#include "semchain/semantics/rosis.hpp"
#include "semchain/semantics/stats.hpp"
#include "temp_dir.hpp"

namespace {

using namespace semchain;
using Clock = std::chrono::steady_clock;
using Failure = std::optional<std::string>;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

chainsim::ChainConfig chain_config(std::uint64_t capacity, chainsim::TimeMs interval) {
  chainsim::ChainConfig c;
  c.block_capacity_bytes = capacity;
  c.block_interval_ms = interval;
  c.chunk_size = capacity;
  return c;
}

Failure scheduler_oracle_equivalence() {
  const auto start = Clock::now();
  std::mt19937_64 rng(2024);
  for (int corpus = 0; corpus < 200; ++corpus) {
    const std::uint64_t capacity = 1 + rng() % 5000;
    const chainsim::TimeMs interval = 1 + static_cast<chainsim::TimeMs>(rng() % 3000);
    chainsim::Simulator sim(chain_config(capacity, interval));
    std::vector<testing::OracleAsset> assets;
    const std::size_t n_assets = 1 + rng() % 10;
    for (std::size_t a = 0; a < n_assets; ++a) {
      // A third of submissions sit exactly on a block boundary.
      const auto submit = rng() % 3 == 0 ? interval * static_cast<chainsim::TimeMs>(rng() % 8)
                                         : static_cast<chainsim::TimeMs>(rng() % (interval * 8));
      testing::OracleAsset asset{"asset" + std::to_string(a), {}, submit};
      const std::size_t n_chunks = 1 + rng() % 8;
      for (std::size_t c = 0; c < n_chunks; ++c) asset.chunks.push_back(1 + rng() % capacity);
      sim.submit(asset.id, asset.chunks, asset.submit_ms);
      assets.push_back(std::move(asset));
    }
    const auto blocks = sim.run();
    const auto report = chainsim::compute_report(blocks, sim.submissions(), sim.config());
    const auto oracle = testing::enumerate_fifo(assets, interval, capacity);

    const auto fail = [&](const std::string& what) { return fmt::format("corpus {}: {}", corpus, what); };
    if (blocks.size() != oracle.blocks.size()) return fail("block count differs");
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto& got = blocks[b];
      const auto& want = oracle.blocks[b];
      if (got.height != want.height || got.timestamp_ms != want.time_ms || got.txs.size() != want.txs.size()) {
        return fail(fmt::format("block {} header differs", b));
      }
      for (std::size_t t = 0; t < got.txs.size(); ++t) {
        if (got.txs[t].asset_id != want.txs[t].id || got.txs[t].chunk_index != want.txs[t].chunk ||
            got.txs[t].payload_bytes != want.txs[t].bytes) {
          return fail(fmt::format("block {} tx {} differs", b, t));
        }
      }
    }
    for (const auto& a : report.assets) {
      if (a.wt_ms != oracle.wt.at(a.asset_id)) return fail("WT differs for " + a.asset_id);
    }
    if (report.tpt_ms != oracle.tpt) return fail("TPT differs");
    if (report.mwt_ms != oracle.min_wt || report.max_wt_ms != oracle.max_wt) return fail("mWT/MWT differ");
  }
  if (const double s = seconds_since(start); s >= 10.0) return fmt::format("took {:.2f} s", s);
  return std::nullopt;
}

Failure single_block_consistency() {
  std::mt19937_64 rng(77);
  for (int corpus = 0; corpus < 500; ++corpus) {
    const std::uint64_t capacity = 100 + rng() % 1'000'000;
    const chainsim::TimeMs interval = 1 + static_cast<chainsim::TimeMs>(rng() % 5000);
    const chainsim::TimeMs instant = static_cast<chainsim::TimeMs>(rng() % 100'000);
    chainsim::Simulator sim(chain_config(capacity, interval));
    std::uint64_t budget = capacity;
    const std::size_t n_assets = 1 + rng() % 50;
    for (std::size_t a = 0; a < n_assets && budget > 0; ++a) {
      std::vector<std::uint64_t> chunks;
      const std::size_t n_chunks = 1 + rng() % 4;
      for (std::size_t c = 0; c < n_chunks && budget > 0; ++c) {
        const std::uint64_t size = 1 + rng() % std::max<std::uint64_t>(1, budget / 4);
        chunks.push_back(size);
        budget -= size;
      }
      sim.submit("a" + std::to_string(a), chunks, instant);
    }
    const auto report = chainsim::compute_report(sim.run(), sim.submissions(), sim.config());
    if (report.block_count != 1 || report.mwt_ms != report.tpt_ms || report.max_wt_ms != report.tpt_ms) {
      return fmt::format("corpus {}: blocks={} mWT={} MWT={} TPT={}", corpus, report.block_count, report.mwt_ms,
                         report.max_wt_ms, report.tpt_ms);
    }
  }
  return std::nullopt;
}

Failure selection_mode_ordering() {
  const auto start = Clock::now();
  const backends::MockBackend mock;
  const auto prompts = testing::make_prompts(100, 31337);
  const std::vector<std::uint64_t> seeds{1, 2, 3, 4};
  std::vector<double> best, random, worst;
  for (std::size_t i = 0; i < prompts.size(); ++i) {
    const semantics::Prompt prompt(prompts[i]);
    const auto rng_seed = pipeline::asset_rng_seed(0, "img_" + std::to_string(i));
    const double b = semantics::rosis_select(prompt, seeds, mock, semantics::SelectionMode::Best).chosen().distance;
    const double r =
        semantics::rosis_select(prompt, seeds, mock, semantics::SelectionMode::Random, rng_seed).chosen().distance;
    const double w = semantics::rosis_select(prompt, seeds, mock, semantics::SelectionMode::Worst).chosen().distance;
    if (!(b <= r && r <= w)) return fmt::format("prompt {}: best {} random {} worst {}", i, b, r, w);
    best.push_back(b);
    random.push_back(r);
    worst.push_back(w);
  }
  const auto mb = semantics::distance_stats(best).mean;
  const auto mr = semantics::distance_stats(random).mean;
  const auto mw = semantics::distance_stats(worst).mean;
  if (!(mb < mr && mr < mw)) return fmt::format("means not strictly ordered: {} {} {}", mb, mr, mw);
  if (const double s = seconds_since(start); s >= 5.0) return fmt::format("took {:.2f} s", s);
  return std::nullopt;
}

Failure improvement_arithmetic() {
  const double worst = semantics::improvement_percent(0.652, 0.376);
  const double random = semantics::improvement_percent(0.498, 0.376);
  if (std::abs(worst - 73.4) > 0.1) return fmt::format("worst-mode improvement {:.3f}%", worst);
  if (std::abs(random - 32.4) > 0.1) return fmt::format("random-mode improvement {:.3f}%", random);
  return std::nullopt;
}

Failure compression_ratio_arithmetic() {
  const double ratio = chainsim::compression_ratio(3800.515 * 1e6, 0.00879 * 1e6);
  if (ratio < 430'000 || ratio > 435'000) return fmt::format("ratio {:.1f}", ratio);
  return std::nullopt;
}

Failure distance_axioms() {
  std::mt19937_64 rng(4242);
  std::normal_distribution<double> gauss(0.0, 3.0);
  for (int pair = 0; pair < 10'000; ++pair) {
    const std::size_t dim = 1 + rng() % 512;
    std::vector<double> a(dim), b(dim);
    for (auto& x : a) x = gauss(rng);
    for (auto& x : b) x = gauss(rng);
    if (std::all_of(a.begin(), a.end(), [](double x) { return x == 0.0; })) a[0] = 1.0;
    if (std::all_of(b.begin(), b.end(), [](double x) { return x == 0.0; })) b[0] = 1.0;
    std::vector<double> neg(a);
    for (auto& x : neg) x = -x;
    const double d = semantics::cosine_distance(a, b);
    const double self = semantics::cosine_distance(a, a);
    const double opposite = semantics::cosine_distance(a, neg);
    if (!(d >= 0.0 && d <= 2.0)) return fmt::format("pair {}: d = {}", pair, d);
    if (std::abs(self) > 1e-9) return fmt::format("pair {}: d(v,v) = {}", pair, self);
    if (std::abs(opposite - 2.0) > 1e-9) return fmt::format("pair {}: d(v,-v) = {}", pair, opposite);
    const auto ea = semantics::Embedding::normalized(a);
    if (std::abs(semantics::cosine_distance(ea, semantics::Embedding::normalized(b)) - d) > 1e-9) {
      return fmt::format("pair {}: normalized embeddings disagree", pair);
    }
  }
  return std::nullopt;
}

Failure round_trips() {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t len = i < 8 ? static_cast<std::size_t>(i + 1) : 1 + rng() % 40'000;
    Bytes payload(len);
    for (auto& b : payload) b = static_cast<std::uint8_t>(rng());
    const std::size_t chunk_size = 1 + rng() % 20'000;
    const auto chunks = ingest::chunk_payload(payload, chunk_size, "p" + std::to_string(i));
    if (chunks.encoded_len != ingest::encoded_length(len)) return fmt::format("payload {}: encoded length", i);
    for (std::size_t c = 0; c + 1 < chunks.chunks.size(); ++c) {
      if (chunks.chunks[c].size() != chunk_size) return fmt::format("payload {}: chunk {} size", i, c);
    }
    if (ingest::reassemble(chunks) != payload) return fmt::format("payload {}: reassembly differs", i);

    // Prompt text: ASCII words plus multi-byte UTF-8.
    static constexpr std::array<std::string_view, 6> kPieces{"red ", "fox ", "caf\xc3\xa9 ", "\xe2\x82\xac ",
                                                             "\xf0\x9f\xa6\x8a ", "x"};
    std::string prompt;
    const std::size_t words = rng() % 400;
    for (std::size_t w = 0; w < words; ++w) prompt += kPieces[rng() % kPieces.size()];
    if (ingest::decompress_prompt(ingest::compress_prompt(prompt)) != prompt) {
      return fmt::format("prompt {}: gzip round trip differs", i);
    }
  }
  return std::nullopt;
}

Failure anchor_smoke() {
  const backends::MockBackend mock;
  auto prompts = testing::make_prompts(200, 8);
  prompts.insert(prompts.end(), {"red fox jumps", "  spaced   out   words  ", "A Castle, ON a hill!", "x"});
  const std::vector<std::uint64_t> seeds{0, 1, 2, 3};
  for (const auto& p : prompts) {
    const auto r = semantics::rosis_select(semantics::Prompt(p), seeds, mock, semantics::SelectionMode::Best);
    if (r.chosen().distance != 0.0) return fmt::format("'{}' best distance {}", p, r.chosen().distance);
  }
  return std::nullopt;
}

/// Full pipeline into `out`: sample, three up-chain variants, three
/// reconstruction modes, evaluation and the merged table.
void full_run(const std::filesystem::path& corpus_manifest, const std::filesystem::path& out, std::size_t jobs,
              semantics::Execution execution) {
  const backends::MockBackend mock;
  const auto prompts = pipeline::cmd_sample({corpus_manifest, out / "sample", "Ours*", true, jobs}, mock).prompts_file;
  pipeline::cmd_upchain({corpus_manifest, pipeline::Representation::Original, {}, out / "ori", {}, 0});
  pipeline::cmd_upchain({prompts, pipeline::Representation::PromptText, {}, out / "txt", {}, 0});
  pipeline::cmd_upchain({prompts, pipeline::Representation::PromptGz, {}, out / "gz", {}, 0});
  std::vector<std::filesystem::path> selections;
  for (const auto mode :
       {semantics::SelectionMode::Best, semantics::SelectionMode::Worst, semantics::SelectionMode::Random}) {
    pipeline::ReconstructOptions o;
    o.prompts = prompts;
    o.seeds = {1, 2, 3, 4};
    o.mode = mode;
    o.rng_seed = 5;
    o.output_dir = out / ("rec_" + std::string(semantics::to_string(mode)));
    o.deterministic_timing = true;
    o.jobs = jobs;
    o.execution = execution;
    selections.push_back(pipeline::cmd_reconstruct(o, mock).selections_file);
  }
  pipeline::cmd_evaluate({prompts, selections, out / "eval", "Ours*"}, mock);
  pipeline::cmd_report({{out / "ori/report.json", out / "txt/report.json", out / "gz/report.json",
                         out / "eval/evaluation.json", prompts, selections[0]},
                        out / "table",
                        "Ori."});
}

std::map<std::string, std::string> snapshot(const std::filesystem::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
    if (entry.is_regular_file()) {
      files[std::filesystem::relative(entry.path(), root).string()] = pipeline::read_text(entry.path());
    }
  }
  return files;
}

Failure end_to_end_determinism() {
  testing::TempDir tmp;
  const auto manifest = testing::write_mock_corpus(tmp / "corpus", testing::make_prompts(60, 12));
  full_run(manifest, tmp / "run1", 1, semantics::Execution::Sequential);
  full_run(manifest, tmp / "run2", 4, semantics::Execution::Parallel);
  const auto a = snapshot(tmp / "run1");
  const auto b = snapshot(tmp / "run2");
  if (a.size() != b.size()) return fmt::format("file counts differ: {} vs {}", a.size(), b.size());
  if (!a.contains("table/table.csv") || !a.contains("gz/report.json")) return "expected reports missing";
  for (const auto& [name, content] : a) {
    const auto it = b.find(name);
    if (it == b.end()) return "missing in second run: " + name;
    if (it->second != content) return "bytes differ: " + name;
  }
  return std::nullopt;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Failure()>>> criteria{
      {"scheduler oracle equivalence (200 random corpora, < 10 s)", scheduler_oracle_equivalence},
      {"single-block consistency (mWT = MWT = TPT)", single_block_consistency},
      {"selection mode ordering (100 mock prompts, seeds 1-4, < 5 s)", selection_mode_ordering},
      {"improvement arithmetic (73.4% and 32.4%, +/-0.1 pp)", improvement_arithmetic},
      {"compression ratio arithmetic (3800.515 MB / 0.00879 MB in [430000, 435000])",
       compression_ratio_arithmetic},
      {"distance axioms (10,000 random pairs, 1e-9)", distance_axioms},
      {"round trips (1,000 payloads: base64/partition/reassemble and gzip)", round_trips},
      {"anchor smoke test (best mode with seed 0 gives distance 0)", anchor_smoke},
      {"end-to-end determinism (byte-identical artifacts)", end_to_end_determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = Clock::now();
    Failure failure;
    try {
      failure = check();
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    const double s = seconds_since(start);
    if (failure) {
      ++failed;
      fmt::print("FAIL  {} [{:.2f} s]: {}\n", name, s, *failure);
    } else {
      fmt::print("PASS  {} [{:.2f} s]\n", name, s);
    }
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
