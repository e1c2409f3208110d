#include <nlohmann/json.hpp>
#include <unordered_set>

#include "semchain/backends/fnv.hpp"
#include "semchain/error.hpp"
#include "semchain/pipeline/commands.hpp"
#include "semchain/pipeline/files.hpp"

namespace semchain::pipeline {

using nlohmann::json;
namespace fs = std::filesystem;

std::uint64_t asset_rng_seed(std::uint64_t run_seed, std::string_view asset_id) noexcept {
  // splitmix64 finalizer over the run seed mixed with the id hash.
  std::uint64_t z = run_seed ^ backends::fnv1a64(as_bytes(asset_id));
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ReconstructOutcome cmd_reconstruct(const ReconstructOptions& options, const backends::Backend& backend) {
  if (options.seeds.empty()) throw Error(ErrorKind::InvalidConfig, "at least one seed is required");
  if (std::unordered_set<std::uint64_t>(options.seeds.begin(), options.seeds.end()).size() != options.seeds.size()) {
    throw Error(ErrorKind::InvalidConfig, "seeds must be distinct");
  }
  json index = read_json(options.prompts);
  if (!index.is_object() || index.value("schema", "") != kPromptsSchema || !index.contains("records")) {
    throw Error(ErrorKind::SchemaMismatch, "'" + options.prompts.string() + "' is not a prompts file");
  }

  struct Work {
    std::string id;
    std::string prompt;
    std::string stem;
  };
  std::vector<Work> work;
  std::unordered_set<std::string> stems;
  for (const auto& rec : index["records"]) {
    if (rec.contains("error") || !rec.contains("prompt")) continue;
    Work w{rec.at("id").get<std::string>(), rec.at("prompt").get<std::string>(), {}};
    w.stem = file_stem_for(w.id);
    if (!stems.insert(w.stem).second) {
      w.stem += "-" + std::to_string(work.size());
      stems.insert(w.stem);
    }
    work.push_back(std::move(w));
  }

  std::vector<std::optional<ReconstructedAsset>> slots(work.size());
  std::vector<std::optional<std::string>> errors(work.size());
  parallel_for(work.size(), options.jobs, [&](std::size_t i) {
    const auto& w = work[i];
    try {
      ReconstructedAsset out;
      out.id = w.id;
      out.rng_seed = asset_rng_seed(options.rng_seed, w.id);
      out.selection = semantics::rosis_select(semantics::Prompt(w.prompt), options.seeds, backend, options.mode,
                                              out.rng_seed, options.execution);
      if (options.deterministic_timing) {
        out.selection.prompt_embed_ms = 0.0;
        for (auto& c : out.selection.candidates) c.generate_ms = c.caption_ms = c.embed_ms = 0.0;
      }
      out.tsr_ms = out.selection.model_time_ms();
      for (const auto& c : out.selection.candidates) {
        write_file_atomic(options.output_dir / "images" / (w.stem + "_seed" + std::to_string(c.seed) + ".img"),
                          ByteView(c.image));
      }
      out.chosen_image_path = "images/" + w.stem + "_seed" + std::to_string(out.selection.chosen().seed) + ".img";
      slots[i] = std::move(out);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  ReconstructOutcome outcome;
  json results = json::array();
  json failures = json::array();
  double tsr_total = 0.0;
  for (std::size_t i = 0; i < work.size(); ++i) {
    if (errors[i]) {
      outcome.failures.emplace_back(work[i].id, *errors[i]);
      failures.push_back({{"id", work[i].id}, {"error", *errors[i]}});
      continue;
    }
    auto& r = *slots[i];
    json candidates = json::array();
    for (const auto& c : r.selection.candidates) {
      candidates.push_back({{"seed", c.seed},
                            {"distance", c.distance},
                            {"caption", c.caption},
                            {"degenerate", c.degenerate},
                            {"image_path", "images/" + work[i].stem + "_seed" + std::to_string(c.seed) + ".img"}});
    }
    results.push_back({{"id", r.id},
                       {"prompt", r.selection.prompt},
                       {"mode", std::string(semantics::to_string(r.selection.mode))},
                       {"rng_seed", r.rng_seed},
                       {"candidates", std::move(candidates)},
                       {"chosen_index", r.selection.chosen_index},
                       {"chosen_image", r.chosen_image_path},
                       {"tsr_ms", r.tsr_ms}});
    tsr_total += r.tsr_ms;
    outcome.results.push_back(std::move(r));
  }

  json doc{{"schema", kSelectionsSchema},
           {"method", options.method},
           {"mode", std::string(semantics::to_string(options.mode))},
           {"rng_seed", options.rng_seed},
           {"seeds", options.seeds},
           {"results", std::move(results)},
           {"failures", std::move(failures)},
           {"tsr_mean_ms", outcome.results.empty()
                               ? json(nullptr)
                               : json(tsr_total / static_cast<double>(outcome.results.size()))}};
  outcome.selections_file = options.output_dir / "selections.json";
  write_file_atomic(outcome.selections_file, doc.dump(2) + "\n");
  outcome.exit = outcome.failures.empty() ? ExitCode::Success : ExitCode::Partial;
  return outcome;
}

}  // namespace semchain::pipeline
