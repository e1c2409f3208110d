#include <fmt/format.h>

#include <map>
#include <nlohmann/json.hpp>

#include "semchain/error.hpp"
#include "semchain/ingest/asset.hpp"
#include "semchain/pipeline/commands.hpp"
#include "semchain/pipeline/files.hpp"

namespace semchain::pipeline {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> safe_improvement(double other, double best) {
  if (best == 0.0) return std::nullopt;
  return semantics::improvement_percent(other, best);
}

}  // namespace

EvaluateOutcome cmd_evaluate(const EvaluateOptions& options, const backends::Backend& backend) {
  if (options.selections.empty()) {
    throw Error(ErrorKind::InvalidConfig, "evaluate needs at least one selections file");
  }
  const json originals = read_json(options.prompts);
  if (!originals.is_object() || originals.value("schema", "") != kPromptsSchema) {
    throw Error(ErrorKind::SchemaMismatch, "'" + options.prompts.string() + "' is not a prompts file");
  }
  std::map<std::string, std::string> prompt_of;
  for (const auto& rec : originals.at("records")) {
    if (rec.contains("prompt")) prompt_of[rec.at("id").get<std::string>()] = rec.at("prompt").get<std::string>();
  }

  EvaluateOutcome outcome;
  for (const auto& path : options.selections) {
    const json sel = read_json(path);
    if (!sel.is_object() || sel.value("schema", "") != kSelectionsSchema) {
      throw Error(ErrorKind::SchemaMismatch, "'" + path.string() + "' is not a selections file");
    }
    EvaluationRow row;
    row.mode = semantics::selection_mode_from_string(sel.at("mode").get<std::string>());
    std::vector<double> values;
    for (const auto& r : sel.at("results")) {
      const auto id = r.at("id").get<std::string>();
      const auto it = prompt_of.find(id);
      if (it == prompt_of.end()) {
        throw Error(ErrorKind::MissingPair, "reconstruction '" + id + "' has no original prompt");
      }
      const auto image = ingest::read_file(path.parent_path() / r.at("chosen_image").get<std::string>());
      const double d = semantics::evaluate_pair(semantics::Prompt(it->second), image, backend,
                                                semantics::DegeneratePolicy::ScoreMax);
      row.distances.emplace_back(id, d);
      values.push_back(d);
    }
    if (values.empty()) {
      throw Error(ErrorKind::MissingPair, "'" + path.string() + "' holds no reconstructions");
    }
    row.stats = semantics::distance_stats(values);
    outcome.rows.push_back(std::move(row));
  }

  const auto best = std::find_if(outcome.rows.begin(), outcome.rows.end(),
                                 [](const EvaluationRow& r) { return r.mode == semantics::SelectionMode::Best; });
  if (best != outcome.rows.end()) {
    const auto b = best->stats;
    for (auto& row : outcome.rows) {
      row.improvement_mean_pct = safe_improvement(row.stats.mean, b.mean);
      row.improvement_min_pct = safe_improvement(row.stats.min, b.min);
      row.improvement_max_pct = safe_improvement(row.stats.max, b.max);
    }
  }

  json rows = json::array();
  std::string csv = "method,mode,count,Dis_mean,Dis_min,Dis_max,impr_mean(%),impr_min(%),impr_max(%)\n";
  const auto pct = [](const std::optional<double>& v) { return v ? fmt::format("{:.1f}", *v) : std::string("-"); };
  for (const auto& row : outcome.rows) {
    json per_asset = json::array();
    for (const auto& [id, d] : row.distances) per_asset.push_back({{"id", id}, {"distance", d}});
    rows.push_back({{"mode", std::string(semantics::to_string(row.mode))},
                    {"count", row.stats.count},
                    {"dis_mean", row.stats.mean},
                    {"dis_min", row.stats.min},
                    {"dis_max", row.stats.max},
                    {"improvement_mean_pct", opt_json(row.improvement_mean_pct)},
                    {"improvement_min_pct", opt_json(row.improvement_min_pct)},
                    {"improvement_max_pct", opt_json(row.improvement_max_pct)},
                    {"distances", std::move(per_asset)}});
    csv += fmt::format("{},{},{},{:.4f},{:.4f},{:.4f},{},{},{}\n", options.method, semantics::to_string(row.mode),
                       row.stats.count, row.stats.mean, row.stats.min, row.stats.max, pct(row.improvement_mean_pct),
                       pct(row.improvement_min_pct), pct(row.improvement_max_pct));
  }
  json doc{{"schema", kEvaluationSchema}, {"method", options.method}, {"rows", std::move(rows)}};
  write_file_atomic(options.output_dir / "evaluation.json", doc.dump(2) + "\n");
  write_file_atomic(options.output_dir / "evaluation.csv", csv);
  return outcome;
}

}  // namespace semchain::pipeline
