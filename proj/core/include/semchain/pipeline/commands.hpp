#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "semchain/backends/backend.hpp"
#include "semchain/chainsim/report.hpp"
#include "semchain/pipeline/run_config.hpp"
#include "semchain/semantics/rosis.hpp"
#include "semchain/semantics/stats.hpp"

namespace semchain::pipeline {

// Artifact schemas. Every JSON artifact carries "schema" and "method".
inline constexpr const char* kPromptsSchema = "semchain.prompts/1";
inline constexpr const char* kSelectionsSchema = "semchain.selections/1";
inline constexpr const char* kEvaluationSchema = "semchain.evaluation/1";
inline constexpr const char* kPersistenceSchema = "semchain.persistence/1";
inline constexpr const char* kTableSchema = "semchain.table/1";

// --- Phase 1: semantic sampling --------------------------------------------

struct SampleOptions {
  std::filesystem::path manifest;
  std::filesystem::path output_dir;
  std::string method = "Ours*";
  bool deterministic_timing = false;
  std::size_t jobs = 1;
};

struct PromptRecord {
  std::string id;
  std::optional<std::string> prompt;
  std::optional<std::string> error;
  std::uint64_t source_bytes = 0;
  std::uint64_t txt_bytes = 0;
  std::uint64_t gz_bytes = 0;
  double tss_ms = 0.0;
  std::string txt_path;  // relative to the prompts file
  std::string gz_path;
};

struct SampleOutcome {
  std::vector<PromptRecord> records;
  std::filesystem::path prompts_file;
  ExitCode exit = ExitCode::Success;
};

/// Captions every manifest asset, writes <id>.txt / <id>.txt.gz under
/// prompts/ and an index at prompts.json. Per-asset failures are recorded
/// and the run continues; exit is Partial only if every asset failed.
/// Throws Error{InvalidConfig} for an unreadable manifest.
SampleOutcome cmd_sample(const SampleOptions& options, const backends::Backend& backend);

// --- Persistence simulation ------------------------------------------------

enum class Representation { Original, PromptText, PromptGz };

struct UpchainOptions {
  /// A corpus manifest (Original) or a prompts.json (PromptText/PromptGz).
  std::filesystem::path input;
  Representation representation = Representation::PromptGz;
  chainsim::ChainConfig chain;
  std::filesystem::path output_dir;
  std::optional<std::string> method;  // defaults to Ori. / Ours / Ours*
  chainsim::TimeMs submit_time_ms = 0;
};

struct UpchainOutcome {
  chainsim::PersistenceReport report;
  std::vector<chainsim::Block> blocks;
  std::vector<std::pair<std::string, std::string>> failures;  // id, error
  ExitCode exit = ExitCode::Success;
};

/// Submits every asset at one instant, simulates block production and
/// writes report.json, report.csv and blocks.jsonl.
/// Throws Error{OversizedChunk} (message names the asset) and
/// Error{InvalidConfig}.
UpchainOutcome cmd_upchain(const UpchainOptions& options);

// --- Phase 2: semantic reconstruction --------------------------------------

struct ReconstructOptions {
  std::filesystem::path prompts;
  std::vector<std::uint64_t> seeds{0, 1, 2, 3};
  semantics::SelectionMode mode = semantics::SelectionMode::Best;
  std::uint64_t rng_seed = 0;
  std::filesystem::path output_dir;
  std::string method = "Ours*";
  bool deterministic_timing = false;
  std::size_t jobs = 1;
  semantics::Execution execution = semantics::Execution::Sequential;
};

struct ReconstructedAsset {
  std::string id;
  semantics::SelectionResult selection;
  std::uint64_t rng_seed = 0;  // per-asset generator seed actually used
  std::string chosen_image_path;
  double tsr_ms = 0.0;
};

struct ReconstructOutcome {
  std::vector<ReconstructedAsset> results;
  std::vector<std::pair<std::string, std::string>> failures;
  std::filesystem::path selections_file;
  ExitCode exit = ExitCode::Success;
};

/// Per-asset generator seed for random mode, derived from the run seed and
/// the asset id so assets draw independently yet reproducibly.
std::uint64_t asset_rng_seed(std::uint64_t run_seed, std::string_view asset_id) noexcept;

/// Runs ROSIS for every prompt and writes images/ plus selections.json.
ReconstructOutcome cmd_reconstruct(const ReconstructOptions& options, const backends::Backend& backend);

// --- Evaluation -------------------------------------------------------------

struct EvaluateOptions {
  std::filesystem::path prompts;  // originals
  std::vector<std::filesystem::path> selections;
  std::filesystem::path output_dir;
  std::string method = "Ours*";
};

struct EvaluationRow {
  semantics::SelectionMode mode = semantics::SelectionMode::Best;
  semantics::DistanceStats stats;
  // Relative to the best-mode row; absent without one or when it is 0.
  std::optional<double> improvement_mean_pct;
  std::optional<double> improvement_min_pct;
  std::optional<double> improvement_max_pct;
  std::vector<std::pair<std::string, double>> distances;  // id, Dis
};

struct EvaluateOutcome {
  std::vector<EvaluationRow> rows;
  ExitCode exit = ExitCode::Success;
};

/// Scores every chosen reconstruction against its original prompt and
/// summarizes per selection mode. Throws Error{MissingPair} when a
/// reconstruction has no original.
EvaluateOutcome cmd_evaluate(const EvaluateOptions& options, const backends::Backend& backend);

// --- Table assembly -----------------------------------------------------------

struct ReportOptions {
  std::vector<std::filesystem::path> inputs;
  std::filesystem::path output_dir;
  std::string baseline = "Ori.";
};

struct TableRow {
  std::string method;
  std::optional<chainsim::PersistenceReport> persistence;
  std::optional<semantics::DistanceStats> distance;
  std::optional<std::string> distance_mode;
  std::optional<double> tss_mean_ms;
  std::optional<double> tsr_mean_ms;
  std::optional<double> fs_ratio_vs_baseline;
  std::optional<double> tpt_ratio_vs_baseline;
};

struct ReportOutcome {
  std::vector<TableRow> rows;
  ExitCode exit = ExitCode::Success;
};

/// Merges artifacts by method label into one comparison table.
/// Throws Error{SchemaMismatch} for no inputs or unknown schemas.
ReportOutcome cmd_report(const ReportOptions& options);

std::string table_csv(const std::vector<TableRow>& rows);
std::string table_json(const std::vector<TableRow>& rows);

}  // namespace semchain::pipeline
