#include "semchain/chainsim/report.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <limits>
#include <nlohmann/json.hpp>
#include <unordered_map>

#include "semchain/error.hpp"

namespace semchain::chainsim {

using nlohmann::json;

namespace {

constexpr const char* kSchema = "semchain.persistence/1";

struct AssetCursor {
  std::size_t submission = 0;
  std::vector<int> seen;  // per chunk index
};

}  // namespace

PersistenceReport compute_report(const std::vector<Block>& blocks, const std::vector<Submission>& submissions,
                                 const ChainConfig& config) {
  if (submissions.empty()) {
    throw Error(ErrorKind::EmptyList, "no submissions to report on");
  }
  PersistenceReport report;
  report.node_count = config.node_count;
  report.block_count = blocks.size();

  std::unordered_map<std::string, AssetCursor> cursors;
  report.assets.reserve(submissions.size());
  for (std::size_t i = 0; i < submissions.size(); ++i) {
    const auto& s = submissions[i];
    cursors[s.asset_id] = {i, std::vector<int>(s.chunk_bytes.size(), 0)};
    AssetTiming t;
    t.asset_id = s.asset_id;
    t.submit_time_ms = s.submit_time_ms;
    t.chunk_count = s.chunk_bytes.size();
    t.source_bytes = s.source_bytes;
    report.assets.push_back(std::move(t));
  }

  TimeMs last_block = 0;
  for (const auto& block : blocks) {
    if (!block.txs.empty()) last_block = std::max(last_block, block.timestamp_ms);
    for (const auto& tx : block.txs) {
      const auto it = cursors.find(tx.asset_id);
      if (it == cursors.end() || tx.chunk_index >= it->second.seen.size()) {
        throw Error(ErrorKind::MissingTx, "block " + std::to_string(block.height) + " carries unknown tx " +
                                              tx.asset_id + "#" + std::to_string(tx.chunk_index));
      }
      if (++it->second.seen[tx.chunk_index] > 1) {
        throw Error(ErrorKind::MissingTx,
                    "tx " + tx.asset_id + "#" + std::to_string(tx.chunk_index) + " appears more than once");
      }
      auto& t = report.assets[it->second.submission];
      if (t.block_span == 0) t.first_height = block.height;
      if (t.block_span == 0 || t.last_height != block.height) ++t.block_span;
      t.last_height = block.height;
      t.completion_ms = std::max(t.completion_ms, block.timestamp_ms);
      t.onchain_bytes += tx.payload_bytes;
    }
  }

  report.mwt_ms = std::numeric_limits<TimeMs>::max();
  report.max_wt_ms = std::numeric_limits<TimeMs>::min();
  TimeMs earliest = std::numeric_limits<TimeMs>::max();
  for (const auto& s : submissions) {
    const auto& cursor = cursors.at(s.asset_id);
    for (std::size_t c = 0; c < cursor.seen.size(); ++c) {
      if (cursor.seen[c] == 0) {
        throw Error(ErrorKind::MissingTx,
                    "tx " + s.asset_id + "#" + std::to_string(c) + " never landed in a block");
      }
    }
    auto& t = report.assets[cursor.submission];
    t.wt_ms = t.completion_ms - t.submit_time_ms;
    report.mwt_ms = std::min(report.mwt_ms, t.wt_ms);
    report.max_wt_ms = std::max(report.max_wt_ms, t.wt_ms);
    report.fs_source_bytes += t.source_bytes;
    report.fs_onchain_bytes += t.onchain_bytes;
    earliest = std::min(earliest, s.submit_time_ms);
  }
  report.tpt_ms = last_block - earliest;
  report.storage_pressure_bytes = report.fs_onchain_bytes * config.node_count;
  if (report.mwt_ms > 0) {
    report.mwt_ratio = static_cast<double>(report.max_wt_ms) / static_cast<double>(report.mwt_ms);
  } else {
    report.mwt_ratio = report.max_wt_ms == 0 ? 1.0 : std::numeric_limits<double>::infinity();
  }
  return report;
}

double compression_ratio(double fs_baseline_bytes, double fs_ours_bytes) {
  if (!(fs_baseline_bytes > 0.0) || !(fs_ours_bytes > 0.0)) {
    throw Error(ErrorKind::ZeroSize, "compression ratio needs two positive sizes");
  }
  return fs_baseline_bytes / fs_ours_bytes;
}

std::string block_log_jsonl(const std::vector<Block>& blocks) {
  using ordered = nlohmann::ordered_json;
  std::string out;
  for (const auto& b : blocks) {
    ordered txs = ordered::array();
    for (const auto& tx : b.txs) {
      txs.push_back({{"asset_id", tx.asset_id}, {"chunk_index", tx.chunk_index}, {"bytes", tx.payload_bytes}});
    }
    out += ordered{{"height", b.height}, {"timestamp_ms", b.timestamp_ms}, {"txs", std::move(txs)}}.dump();
    out += '\n';
  }
  return out;
}

std::string report_json(const PersistenceReport& r) {
  json assets = json::array();
  for (const auto& a : r.assets) {
    assets.push_back({{"asset_id", a.asset_id},
                      {"submit_time_ms", a.submit_time_ms},
                      {"completion_ms", a.completion_ms},
                      {"wt_ms", a.wt_ms},
                      {"first_height", a.first_height},
                      {"last_height", a.last_height},
                      {"block_span", a.block_span},
                      {"chunk_count", a.chunk_count},
                      {"onchain_bytes", a.onchain_bytes},
                      {"source_bytes", a.source_bytes}});
  }
  json doc{{"schema", kSchema},
           {"method", r.method},
           {"tpt_ms", r.tpt_ms},
           {"mwt_ms", r.mwt_ms},
           {"max_wt_ms", r.max_wt_ms},
           {"mwt_ratio", r.mwt_ratio},
           {"fs_source_bytes", r.fs_source_bytes},
           {"fs_onchain_bytes", r.fs_onchain_bytes},
           {"storage_pressure_bytes", r.storage_pressure_bytes},
           {"block_count", r.block_count},
           {"node_count", r.node_count},
           {"assets", std::move(assets)},
           {"tss_mean_ms", r.tss_mean_ms ? json(*r.tss_mean_ms) : json(nullptr)},
           {"tsr_mean_ms", r.tsr_mean_ms ? json(*r.tsr_mean_ms) : json(nullptr)}};
  return doc.dump(2) + "\n";
}

PersistenceReport report_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    if (doc.value("schema", "") != kSchema) {
      throw Error(ErrorKind::SchemaMismatch, "expected schema " + std::string(kSchema));
    }
    PersistenceReport r;
    r.method = doc.at("method").get<std::string>();
    r.tpt_ms = doc.at("tpt_ms").get<TimeMs>();
    r.mwt_ms = doc.at("mwt_ms").get<TimeMs>();
    r.max_wt_ms = doc.at("max_wt_ms").get<TimeMs>();
    r.mwt_ratio = doc.at("mwt_ratio").get<double>();
    r.fs_source_bytes = doc.at("fs_source_bytes").get<std::uint64_t>();
    r.fs_onchain_bytes = doc.at("fs_onchain_bytes").get<std::uint64_t>();
    r.storage_pressure_bytes = doc.at("storage_pressure_bytes").get<std::uint64_t>();
    r.block_count = doc.at("block_count").get<std::uint64_t>();
    r.node_count = doc.at("node_count").get<std::uint32_t>();
    for (const auto& a : doc.at("assets")) {
      r.assets.push_back({a.at("asset_id").get<std::string>(), a.at("submit_time_ms").get<TimeMs>(),
                          a.at("completion_ms").get<TimeMs>(), a.at("wt_ms").get<TimeMs>(),
                          a.at("first_height").get<std::uint64_t>(), a.at("last_height").get<std::uint64_t>(),
                          a.at("block_span").get<std::uint64_t>(), a.at("chunk_count").get<std::uint64_t>(),
                          a.at("onchain_bytes").get<std::uint64_t>(), a.at("source_bytes").get<std::uint64_t>()});
    }
    if (doc.contains("tss_mean_ms") && !doc["tss_mean_ms"].is_null()) r.tss_mean_ms = doc["tss_mean_ms"].get<double>();
    if (doc.contains("tsr_mean_ms") && !doc["tsr_mean_ms"].is_null()) r.tsr_mean_ms = doc["tsr_mean_ms"].get<double>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::SchemaMismatch, std::string("persistence report: ") + e.what());
  }
}

std::string report_csv(const PersistenceReport& r) {
  const auto opt = [](const std::optional<double>& ms) {
    return ms ? fmt::format("{:.4f}", *ms / 1000.0) : std::string("-");
  };
  std::string out =
      "method,TPT(s),mWT(ms),MWT(ms),MWT/mWT,F.S.(MB),F.S.source(MB),storage_pressure(MB),block_count,"
      "node_count,TSS_mean(s),TSR_mean(s)\n";
  out += fmt::format("{},{:.4f},{},{},{:.4f},{:.6f},{:.6f},{:.6f},{},{},{},{}\n", r.method, r.tpt_ms / 1000.0,
                     r.mwt_ms, r.max_wt_ms, r.mwt_ratio, r.fs_onchain_bytes / 1e6, r.fs_source_bytes / 1e6,
                     r.storage_pressure_bytes / 1e6, r.block_count, r.node_count, opt(r.tss_mean_ms),
                     opt(r.tsr_mean_ms));
  return out;
}

}  // namespace semchain::chainsim
