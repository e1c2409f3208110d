#include <nlohmann/json.hpp>

#include "semchain/chainsim/simulator.hpp"
#include "semchain/error.hpp"
#include "semchain/ingest/asset.hpp"
#include "semchain/ingest/chunking.hpp"
#include "semchain/pipeline/commands.hpp"
#include "semchain/pipeline/files.hpp"

namespace semchain::pipeline {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Payload {
  std::string id;
  Bytes bytes;
};

std::string default_method(Representation r) {
  switch (r) {
    case Representation::Original: return "Ori.";
    case Representation::PromptText: return "Ours";
    case Representation::PromptGz: return "Ours*";
  }
  return "Ori.";
}

json load_prompts_index(const fs::path& path) {
  json doc = read_json(path);
  if (!doc.is_object() || doc.value("schema", "") != kPromptsSchema || !doc.contains("records")) {
    throw Error(ErrorKind::SchemaMismatch, "'" + path.string() + "' is not a prompts file");
  }
  return doc;
}

}  // namespace

UpchainOutcome cmd_upchain(const UpchainOptions& options) {
  options.chain.validate();
  UpchainOutcome outcome;
  std::vector<Payload> payloads;
  std::optional<double> tss_mean;

  const fs::path base = options.input.parent_path();
  if (options.representation == Representation::Original) {
    std::vector<ingest::ManifestEntry> entries;
    try {
      entries = ingest::read_manifest(options.input);
    } catch (const Error& e) {
      throw Error(ErrorKind::InvalidConfig, std::string("cannot read manifest: ") + e.what());
    }
    for (const auto& entry : entries) {
      try {
        auto asset = ingest::load_asset(entry, base);
        payloads.push_back({asset.id(), asset.bytes()});
      } catch (const Error& e) {
        outcome.failures.emplace_back(entry.id, e.what());
      }
    }
  } else {
    const json doc = load_prompts_index(options.input);
    if (doc.contains("tss_mean_ms") && doc["tss_mean_ms"].is_number()) tss_mean = doc["tss_mean_ms"].get<double>();
    const char* key = options.representation == Representation::PromptText ? "txt_path" : "gz_path";
    for (const auto& rec : doc["records"]) {
      const auto id = rec.value("id", std::string{});
      if (rec.contains("error") || !rec.contains(key)) continue;  // failed during sampling
      try {
        payloads.push_back({id, ingest::read_file(base / rec[key].get<std::string>())});
        if (payloads.back().bytes.empty()) {
          payloads.pop_back();
          throw Error(ErrorKind::EmptyPayload, "prompt file is empty");
        }
      } catch (const Error& e) {
        outcome.failures.emplace_back(id, e.what());
      }
    }
  }

  if (payloads.empty()) {
    outcome.exit = ExitCode::Partial;
    return outcome;
  }

  chainsim::Simulator sim(options.chain);
  for (const auto& p : payloads) {
    const auto chunks = ingest::chunk_payload(p.bytes, options.chain.chunk_size, p.id);
    sim.submit(p.id, chunks.chunk_sizes(), options.submit_time_ms, p.bytes.size());
  }
  outcome.blocks = sim.run();
  outcome.report = chainsim::compute_report(outcome.blocks, sim.submissions(), options.chain);
  outcome.report.method = options.method.value_or(default_method(options.representation));
  outcome.report.tss_mean_ms = tss_mean;

  write_file_atomic(options.output_dir / "report.json", chainsim::report_json(outcome.report));
  write_file_atomic(options.output_dir / "report.csv", chainsim::report_csv(outcome.report));
  write_file_atomic(options.output_dir / "blocks.jsonl", chainsim::block_log_jsonl(outcome.blocks));
  outcome.exit = outcome.failures.empty() ? ExitCode::Success : ExitCode::Partial;
  return outcome;
}

}  // namespace semchain::pipeline
