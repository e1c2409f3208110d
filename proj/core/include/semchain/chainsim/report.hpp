#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semchain/chainsim/config.hpp"
#include "semchain/chainsim/simulator.hpp"

namespace semchain::chainsim {

struct AssetTiming {
  std::string asset_id;
  TimeMs submit_time_ms = 0;
  TimeMs completion_ms = 0;  // timestamp of the last block carrying a chunk
  TimeMs wt_ms = 0;
  std::uint64_t first_height = 0;
  std::uint64_t last_height = 0;
  std::uint64_t block_span = 0;  // number of distinct blocks carrying a chunk
  std::uint64_t chunk_count = 0;
  std::uint64_t onchain_bytes = 0;
  std::uint64_t source_bytes = 0;

  bool operator==(const AssetTiming&) const = default;
};

struct PersistenceReport {
  std::string method;
  TimeMs tpt_ms = 0;
  TimeMs mwt_ms = 0;      // fastest asset
  TimeMs max_wt_ms = 0;   // slowest asset
  double mwt_ratio = 1.0; // max_wt_ms / mwt_ms
  std::uint64_t fs_source_bytes = 0;
  std::uint64_t fs_onchain_bytes = 0;
  std::uint64_t storage_pressure_bytes = 0;
  std::uint64_t block_count = 0;
  std::uint32_t node_count = 0;
  std::vector<AssetTiming> assets;  // submission order
  // Off-chain model time per asset; never folded into TPT.
  std::optional<double> tss_mean_ms;
  std::optional<double> tsr_mean_ms;

  bool operator==(const PersistenceReport&) const = default;
};

/// Derives the persistence metrics from a block log.
/// Throws Error{MissingTx} if a submitted chunk is absent from the log or
/// appears more than once, and Error{EmptyList} with no submissions.
PersistenceReport compute_report(const std::vector<Block>& blocks, const std::vector<Submission>& submissions,
                                 const ChainConfig& config);

/// baseline / ours. Throws Error{ZeroSize} unless both are positive.
double compression_ratio(double fs_baseline_bytes, double fs_ours_bytes);

/// One JSON object per line: {height, timestamp_ms, txs:[{asset_id, chunk_index, bytes}]}.
std::string block_log_jsonl(const std::vector<Block>& blocks);

std::string report_json(const PersistenceReport& report);
PersistenceReport report_from_json(const std::string& text);

/// Header plus one row, same columns as the merged table.
std::string report_csv(const PersistenceReport& report);

}  // namespace semchain::chainsim
