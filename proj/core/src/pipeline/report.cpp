#include <fmt/format.h>

#include <nlohmann/json.hpp>

#include "semchain/error.hpp"
#include "semchain/pipeline/commands.hpp"
#include "semchain/pipeline/files.hpp"

namespace semchain::pipeline {

using nlohmann::json;

namespace {

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

TableRow& row_for(std::vector<TableRow>& rows, const std::string& method) {
  for (auto& r : rows) {
    if (r.method == method) return r;
  }
  rows.push_back(TableRow{method, {}, {}, {}, {}, {}, {}, {}});
  return rows.back();
}

std::optional<double> number_or_null(const json& doc, const char* key) {
  if (!doc.contains(key) || doc[key].is_null()) return std::nullopt;
  if (!doc[key].is_number()) throw Error(ErrorKind::SchemaMismatch, std::string("field '") + key + "' is not a number");
  return doc[key].get<double>();
}

}  // namespace

ReportOutcome cmd_report(const ReportOptions& options) {
  if (options.inputs.empty()) {
    throw Error(ErrorKind::SchemaMismatch, "report needs at least one input artifact");
  }
  ReportOutcome outcome;
  auto& rows = outcome.rows;
  for (const auto& path : options.inputs) {
    const json doc = read_json(path);
    if (!doc.is_object() || !doc.contains("schema") || !doc.contains("method") || !doc["method"].is_string()) {
      throw Error(ErrorKind::SchemaMismatch, "'" + path.string() + "' lacks schema/method fields");
    }
    const auto schema = doc["schema"].get<std::string>();
    const auto method = doc["method"].get<std::string>();
    try {
      if (schema == kPersistenceSchema) {
        auto& row = row_for(rows, method);
        row.persistence = chainsim::report_from_json(doc.dump());
        if (row.persistence->tss_mean_ms && !row.tss_mean_ms) row.tss_mean_ms = row.persistence->tss_mean_ms;
        if (row.persistence->tsr_mean_ms && !row.tsr_mean_ms) row.tsr_mean_ms = row.persistence->tsr_mean_ms;
      } else if (schema == kEvaluationSchema) {
        const auto& eval_rows = doc.at("rows");
        if (!eval_rows.is_array() || eval_rows.empty()) {
          throw Error(ErrorKind::SchemaMismatch, "evaluation has no rows");
        }
        // Prefer the best-mode row: that is what the method actually ships.
        const json* chosen = &eval_rows.front();
        for (const auto& r : eval_rows) {
          if (r.at("mode") == "best") {
            chosen = &r;
            break;
          }
        }
        auto& row = row_for(rows, method);
        row.distance = semantics::DistanceStats{chosen->at("dis_mean").get<double>(), chosen->at("dis_min").get<double>(),
                                                chosen->at("dis_max").get<double>(),
                                                chosen->at("count").get<std::size_t>()};
        row.distance_mode = chosen->at("mode").get<std::string>();
      } else if (schema == kPromptsSchema) {
        row_for(rows, method).tss_mean_ms = number_or_null(doc, "tss_mean_ms");
      } else if (schema == kSelectionsSchema) {
        row_for(rows, method).tsr_mean_ms = number_or_null(doc, "tsr_mean_ms");
      } else {
        throw Error(ErrorKind::SchemaMismatch, "unknown schema '" + schema + "'");
      }
    } catch (const json::exception& e) {
      throw Error(ErrorKind::SchemaMismatch, "'" + path.string() + "': " + e.what());
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::SchemaMismatch) {
        throw Error(ErrorKind::SchemaMismatch, "'" + path.string() + "': " + e.what());
      }
      throw;
    }
  }

  const TableRow* baseline = nullptr;
  for (const auto& r : rows) {
    if (r.method == options.baseline && r.persistence) baseline = &r;
  }
  if (baseline != nullptr) {
    const auto base = *baseline->persistence;
    for (auto& r : rows) {
      if (!r.persistence) continue;
      if (base.fs_onchain_bytes > 0 && r.persistence->fs_onchain_bytes > 0) {
        r.fs_ratio_vs_baseline = chainsim::compression_ratio(static_cast<double>(base.fs_onchain_bytes),
                                                             static_cast<double>(r.persistence->fs_onchain_bytes));
      }
      if (base.tpt_ms > 0 && r.persistence->tpt_ms > 0) {
        r.tpt_ratio_vs_baseline = static_cast<double>(base.tpt_ms) / static_cast<double>(r.persistence->tpt_ms);
      }
    }
  }

  write_file_atomic(options.output_dir / "table.csv", table_csv(rows));
  write_file_atomic(options.output_dir / "table.json", table_json(rows));
  return outcome;
}

std::string table_csv(const std::vector<TableRow>& rows) {
  std::string out =
      "method,TPT(s),mWT(ms),MWT(ms),F.S.(MB),Dis_mean,Dis_min,Dis_max,TSS_mean(s),TSR_mean(s),"
      "storage_pressure(MB),block_count,F.S.ratio_vs_baseline,TPT.ratio_vs_baseline\n";
  const auto dash = std::string("-");
  for (const auto& r : rows) {
    const auto& p = r.persistence;
    const auto sec = [&](const std::optional<double>& ms) { return ms ? fmt::format("{:.4f}", *ms / 1000.0) : dash; };
    const auto num = [&](const std::optional<double>& v, int digits) {
      return v ? fmt::format("{:.{}f}", *v, digits) : dash;
    };
    out += fmt::format(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.method, p ? fmt::format("{:.4f}", p->tpt_ms / 1000.0) : dash,
        p ? std::to_string(p->mwt_ms) : dash, p ? std::to_string(p->max_wt_ms) : dash,
        p ? fmt::format("{:.6f}", p->fs_onchain_bytes / 1e6) : dash,
        r.distance ? fmt::format("{:.4f}", r.distance->mean) : dash,
        r.distance ? fmt::format("{:.4f}", r.distance->min) : dash,
        r.distance ? fmt::format("{:.4f}", r.distance->max) : dash, sec(r.tss_mean_ms), sec(r.tsr_mean_ms),
        p ? fmt::format("{:.6f}", p->storage_pressure_bytes / 1e6) : dash, p ? std::to_string(p->block_count) : dash,
        num(r.fs_ratio_vs_baseline, 1), num(r.tpt_ratio_vs_baseline, 1));
  }
  return out;
}

std::string table_json(const std::vector<TableRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    json row{{"method", r.method}};
    if (r.persistence) {
      const auto& p = *r.persistence;
      row["tpt_ms"] = p.tpt_ms;
      row["mwt_ms"] = p.mwt_ms;
      row["max_wt_ms"] = p.max_wt_ms;
      row["mwt_ratio"] = p.mwt_ratio;
      row["fs_onchain_bytes"] = p.fs_onchain_bytes;
      row["fs_source_bytes"] = p.fs_source_bytes;
      row["storage_pressure_bytes"] = p.storage_pressure_bytes;
      row["block_count"] = p.block_count;
    }
    if (r.distance) {
      row["dis_mean"] = r.distance->mean;
      row["dis_min"] = r.distance->min;
      row["dis_max"] = r.distance->max;
      row["dis_mode"] = r.distance_mode.value_or("");
    }
    row["tss_mean_ms"] = opt_json(r.tss_mean_ms);
    row["tsr_mean_ms"] = opt_json(r.tsr_mean_ms);
    row["fs_ratio_vs_baseline"] = opt_json(r.fs_ratio_vs_baseline);
    row["tpt_ratio_vs_baseline"] = opt_json(r.tpt_ratio_vs_baseline);
    out.push_back(std::move(row));
  }
  return json{{"schema", kTableSchema}, {"rows", std::move(out)}}.dump(2) + "\n";
}

}  // namespace semchain::pipeline
