#include <nlohmann/json.hpp>
#include <unordered_set>

#include "semchain/error.hpp"
#include "semchain/ingest/asset.hpp"
#include "semchain/ingest/gzip.hpp"
#include "semchain/pipeline/commands.hpp"
#include "semchain/pipeline/files.hpp"

namespace semchain::pipeline {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> unique_stems(const std::vector<ingest::ManifestEntry>& entries) {
  std::vector<std::string> stems;
  std::unordered_set<std::string> used;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    std::string stem = file_stem_for(entries[i].id);
    if (!used.insert(stem).second) {
      stem += "-" + std::to_string(i);
      used.insert(stem);
    }
    stems.push_back(std::move(stem));
  }
  return stems;
}

}  // namespace

SampleOutcome cmd_sample(const SampleOptions& options, const backends::Backend& backend) {
  std::vector<ingest::ManifestEntry> entries;
  try {
    entries = ingest::read_manifest(options.manifest);
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidConfig, std::string("cannot read manifest: ") + e.what());
  }
  const fs::path base = options.manifest.parent_path();
  const auto stems = unique_stems(entries);

  SampleOutcome outcome;
  outcome.records.resize(entries.size());
  parallel_for(entries.size(), options.jobs, [&](std::size_t i) {
    auto& rec = outcome.records[i];
    rec.id = entries[i].id;
    try {
      const auto asset = ingest::load_asset(entries[i], base);
      rec.source_bytes = asset.size();
      auto caption = backend.caption(asset.bytes());
      const semantics::Prompt prompt(caption.value);  // rejects blank captions
      const auto gz = ingest::compress_prompt(prompt.text());
      rec.txt_path = "prompts/" + stems[i] + ".txt";
      rec.gz_path = "prompts/" + stems[i] + ".txt.gz";
      write_file_atomic(options.output_dir / rec.txt_path, prompt.text());
      write_file_atomic(options.output_dir / rec.gz_path, ByteView(gz));
      rec.txt_bytes = prompt.text().size();
      rec.gz_bytes = gz.size();
      rec.tss_ms = options.deterministic_timing ? 0.0 : caption.elapsed_ms;
      rec.prompt = prompt.text();
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
  });

  json records = json::array();
  double tss_total = 0.0;
  std::size_t ok = 0;
  for (const auto& r : outcome.records) {
    if (r.error) {
      records.push_back({{"id", r.id}, {"error", *r.error}});
      continue;
    }
    ++ok;
    tss_total += r.tss_ms;
    records.push_back({{"id", r.id},
                       {"prompt", *r.prompt},
                       {"source_bytes", r.source_bytes},
                       {"txt_bytes", r.txt_bytes},
                       {"gz_bytes", r.gz_bytes},
                       {"tss_ms", r.tss_ms},
                       {"txt_path", r.txt_path},
                       {"gz_path", r.gz_path}});
  }
  json doc{{"schema", kPromptsSchema},
           {"method", options.method},
           {"records", std::move(records)},
           {"tss_mean_ms", ok > 0 ? json(tss_total / static_cast<double>(ok)) : json(nullptr)}};
  outcome.prompts_file = options.output_dir / "prompts.json";
  write_file_atomic(outcome.prompts_file, doc.dump(2) + "\n");
  outcome.exit = (ok == 0 && !entries.empty()) ? ExitCode::Partial : ExitCode::Success;
  return outcome;
}

}  // namespace semchain::pipeline
