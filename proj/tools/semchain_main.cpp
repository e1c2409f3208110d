// semchain: sample -> upchain -> reconstruct -> evaluate -> report.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "semchain/backends/factory.hpp"
#include "semchain/backends/wire.hpp"
#include "semchain/error.hpp"
#include "semchain/pipeline/commands.hpp"
#include "semchain/pipeline/files.hpp"
#include "semchain/pipeline/run_config.hpp"

namespace {

using semchain::Error;
using semchain::ErrorKind;
using semchain::pipeline::ExitCode;
namespace pipeline = semchain::pipeline;

int code(ExitCode c) { return static_cast<int>(c); }

void report_failures(const std::vector<std::pair<std::string, std::string>>& failures) {
  for (const auto& [id, what] : failures) std::cerr << "semchain: " << id << ": " << what << "\n";
}

struct ChainFlags {
  std::optional<std::int64_t> interval_ms;
  std::optional<std::uint64_t> capacity;
  std::optional<std::uint32_t> nodes;
  std::optional<std::uint64_t> chunk_size;
  std::optional<std::uint64_t> gas_limit;
  std::optional<std::uint64_t> gas_per_byte;

  void apply(semchain::chainsim::ChainConfig& c) const {
    if (interval_ms) c.block_interval_ms = *interval_ms;
    if (nodes) c.node_count = *nodes;
    if (chunk_size) c.chunk_size = *chunk_size;
    if (gas_limit) c.gas_limit = *gas_limit;
    if (gas_per_byte) c.gas_per_byte = *gas_per_byte;
    if (capacity) {
      c.block_capacity_bytes = *capacity;
    } else if ((gas_limit || gas_per_byte) && c.gas_limit && c.gas_per_byte) {
      c.block_capacity_bytes = semchain::chainsim::capacity_from_gas(*c.gas_limit, *c.gas_per_byte);
    }
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantic up-chaining simulator and ROSIS reconstruction harness", "semchain"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "semchain 0.1.0");

  std::string config_path;
  std::optional<std::string> backend_url;
  std::optional<std::string> out_dir;
  bool deterministic_timing = false;
  std::optional<std::size_t> jobs;
  bool trace = false;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--backend-url", backend_url, "Model server URL (default: $SEMCHAIN_BACKEND_URL, else mocks)");
  app.add_option("--out", out_dir, "Output directory");
  app.add_flag("--deterministic-timing", deterministic_timing, "Report all model times as 0");
  app.add_option("--jobs", jobs, "Assets processed concurrently (0 = all cores)");
  app.add_flag("--trace", trace, "Log backend requests and responses to stderr");

  std::string manifest;
  std::string label;
  auto* sample = app.add_subcommand("sample", "Caption images into prompts (phase 1)");
  sample->add_option("--manifest", manifest, "Corpus manifest JSON");
  sample->add_option("--label", label, "Method label recorded in outputs");

  std::string prompts;
  std::string representation;
  ChainFlags chain_flags;
  auto* upchain = app.add_subcommand("upchain", "Simulate persisting a corpus on chain");
  upchain->add_option("--manifest", manifest, "Corpus manifest of payload files");
  upchain->add_option("--prompts", prompts, "prompts.json from `sample`");
  upchain->add_option("--representation", representation, "original | txt | gz")
      ->check(CLI::IsMember({"original", "txt", "gz"}));
  upchain->add_option("--label", label, "Method label (default Ori./Ours/Ours*)");
  upchain->add_option("--block-interval-ms", chain_flags.interval_ms);
  upchain->add_option("--block-capacity", chain_flags.capacity, "Block capacity in bytes");
  upchain->add_option("--nodes", chain_flags.nodes, "Replicating node count");
  upchain->add_option("--chunk-size", chain_flags.chunk_size, "Partition size of the base64 text");
  upchain->add_option("--gas-limit", chain_flags.gas_limit);
  upchain->add_option("--gas-per-byte", chain_flags.gas_per_byte);

  std::optional<std::string> seeds_text;
  std::optional<std::string> mode_text;
  std::optional<std::uint64_t> rng_seed;
  bool parallel_candidates = false;
  auto* reconstruct = app.add_subcommand("reconstruct", "Rebuild images from prompts with ROSIS (phase 2)");
  reconstruct->add_option("--prompts", prompts, "prompts.json from `sample`")->required();
  reconstruct->add_option("--seeds", seeds_text, "Seed list, e.g. 0-3 or 1,2,5");
  reconstruct->add_option("--mode", mode_text, "best | worst | random")
      ->check(CLI::IsMember({"best", "worst", "random"}));
  reconstruct->add_option("--rng-seed", rng_seed, "Generator seed for random mode");
  reconstruct->add_option("--label", label, "Method label recorded in outputs");
  reconstruct->add_flag("--parallel-candidates", parallel_candidates, "Evaluate seeds of one prompt concurrently");

  std::vector<std::string> selections;
  auto* evaluate = app.add_subcommand("evaluate", "Semantic distance statistics per selection mode");
  evaluate->add_option("--prompts", prompts, "Original prompts.json")->required();
  evaluate->add_option("--selections", selections, "selections.json files, one per mode")->required();
  evaluate->add_option("--label", label, "Method label recorded in outputs");

  std::vector<std::string> inputs;
  std::string baseline = "Ori.";
  auto* report = app.add_subcommand("report", "Merge artifacts into one comparison table");
  report->add_option("--in", inputs, "Artifacts: report.json, evaluation.json, prompts.json, selections.json");
  report->add_option("--baseline", baseline, "Method label used as the ratio baseline");

  std::size_t vector_count = 50;
  std::string vectors_out = "mock_vectors.json";
  auto* vectors = app.add_subcommand("mock-vectors", "Write the shared mock parity fixture");
  vectors->add_option("--count", vector_count);
  vectors->add_option("--file", vectors_out, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : code(ExitCode::InvalidConfig);
  }

  try {
    pipeline::RunConfig config;
    if (!config_path.empty()) config = pipeline::load_run_config(config_path);
    if (backend_url) config.backend_url = backend_url;
    if (out_dir) config.output_dir = *out_dir;
    if (deterministic_timing) config.deterministic_timing = true;
    if (jobs) config.jobs = *jobs;
    if (!manifest.empty()) config.manifest_path = manifest;
    if (seeds_text) config.seeds = pipeline::parse_seed_list(*seeds_text);
    if (mode_text) config.mode = semchain::semantics::selection_mode_from_string(*mode_text);
    if (rng_seed) config.rng_seed = *rng_seed;
    chain_flags.apply(config.chain);
    config.validate();

    std::mutex trace_mutex;
    semchain::backends::RemoteOptions remote;
    if (trace) {
      remote.trace = [&trace_mutex](std::string_view line) {
        std::lock_guard lock(trace_mutex);
        std::cerr << "[trace] " << line << "\n";
      };
    }

    if (*sample) {
      if (config.manifest_path.empty()) throw Error(ErrorKind::InvalidConfig, "sample needs --manifest");
      const auto backend = semchain::backends::make_backend(config.backend_url, remote);
      pipeline::SampleOptions opts{config.manifest_path, config.output_dir, label.empty() ? "Ours*" : label,
                                   config.deterministic_timing, config.jobs};
      const auto outcome = pipeline::cmd_sample(opts, *backend);
      for (const auto& r : outcome.records) {
        if (r.error) std::cerr << "semchain: " << r.id << ": " << *r.error << "\n";
      }
      std::cout << outcome.prompts_file.string() << "\n";
      return code(outcome.exit);
    }

    if (*upchain) {
      pipeline::UpchainOptions opts;
      if (!prompts.empty()) {
        opts.input = prompts;
        opts.representation =
            representation == "txt" ? pipeline::Representation::PromptText : pipeline::Representation::PromptGz;
        if (representation == "original") {
          throw Error(ErrorKind::InvalidConfig, "--representation original needs --manifest, not --prompts");
        }
      } else if (!config.manifest_path.empty()) {
        if (!representation.empty() && representation != "original") {
          throw Error(ErrorKind::InvalidConfig, "--representation txt|gz needs --prompts");
        }
        opts.input = config.manifest_path;
        opts.representation = pipeline::Representation::Original;
      } else {
        throw Error(ErrorKind::InvalidConfig, "upchain needs --manifest or --prompts");
      }
      opts.chain = config.chain;
      opts.output_dir = config.output_dir;
      if (!label.empty()) opts.method = label;
      const auto outcome = pipeline::cmd_upchain(opts);
      report_failures(outcome.failures);
      if (!outcome.blocks.empty()) std::cout << semchain::chainsim::report_csv(outcome.report);
      return code(outcome.exit);
    }

    if (*reconstruct) {
      const auto backend = semchain::backends::make_backend(config.backend_url, remote);
      pipeline::ReconstructOptions opts;
      opts.prompts = prompts;
      opts.seeds = config.seeds;
      opts.mode = config.mode;
      opts.rng_seed = config.rng_seed;
      opts.output_dir = config.output_dir;
      opts.method = label.empty() ? "Ours*" : label;
      opts.deterministic_timing = config.deterministic_timing;
      opts.jobs = config.jobs;
      opts.execution =
          parallel_candidates ? semchain::semantics::Execution::Parallel : semchain::semantics::Execution::Sequential;
      const auto outcome = pipeline::cmd_reconstruct(opts, *backend);
      report_failures(outcome.failures);
      std::cout << outcome.selections_file.string() << "\n";
      return code(outcome.exit);
    }

    if (*evaluate) {
      const auto backend = semchain::backends::make_backend(config.backend_url, remote);
      pipeline::EvaluateOptions opts{prompts, {selections.begin(), selections.end()}, config.output_dir,
                                     label.empty() ? "Ours*" : label};
      const auto outcome = pipeline::cmd_evaluate(opts, *backend);
      std::cout << pipeline::read_text(std::filesystem::path(config.output_dir) / "evaluation.csv");
      return code(outcome.exit);
    }

    if (*report) {
      pipeline::ReportOptions opts{{inputs.begin(), inputs.end()}, config.output_dir, baseline};
      const auto outcome = pipeline::cmd_report(opts);
      std::cout << pipeline::table_csv(outcome.rows);
      return code(outcome.exit);
    }

    if (*vectors) {
      pipeline::write_file_atomic(vectors_out, semchain::backends::wire::mock_test_vectors(vector_count).dump(2) + "\n");
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "semchain: " << e.what() << "\n";
    return code(ExitCode::InvalidConfig);
  } catch (const std::exception& e) {
    std::cerr << "semchain: " << e.what() << "\n";
    return code(ExitCode::InvalidConfig);
  }
  return 0;
}
