#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "semchain/chainsim/config.hpp"

namespace semchain::ingest {
class FileAsset;
struct ChunkSet;
}  // namespace semchain::ingest

namespace semchain::chainsim {

using TxId = std::uint64_t;

struct ChainTx {
  TxId id = 0;
  std::string asset_id;
  std::size_t chunk_index = 0;
  std::uint64_t payload_bytes = 0;
  TimeMs submit_time_ms = 0;

  bool operator==(const ChainTx&) const = default;
};

struct Block {
  std::uint64_t height = 0;
  TimeMs timestamp_ms = 0;
  std::vector<ChainTx> txs;
  std::uint64_t used_bytes = 0;

  bool operator==(const Block&) const = default;
};

/// One up-chaining command: all chunks of one asset, enqueued atomically.
struct Submission {
  std::string asset_id;
  std::uint64_t source_bytes = 0;
  std::vector<std::uint64_t> chunk_bytes;
  TimeMs submit_time_ms = 0;
  std::uint64_t sequence = 0;
  TxId first_tx = 0;
};

/// Fixed-interval, capacity-limited, strict-FIFO block producer.
///
/// Genesis is at t = 0 (height 0, never recorded). The block at height h is
/// produced at h * block_interval_ms and may include any queued tx submitted
/// strictly before that instant. Packing takes txs from the queue front
/// while they fit; it never skips ahead and never splits a tx. Boundaries
/// that would produce an empty block are not recorded.
class Simulator {
 public:
  explicit Simulator(ChainConfig config);

  /// Enqueues one tx per chunk, in chunk order. `source_bytes` is the
  /// pre-encoding size of the asset and only feeds the F.S. metric.
  /// Throws Error{DuplicateAsset}, Error{OversizedChunk},
  /// Error{EmptyPayload} or Error{OutOfRange} (negative time).
  std::vector<TxId> submit(const std::string& asset_id, std::span<const std::uint64_t> chunk_bytes,
                           TimeMs submit_time_ms, std::uint64_t source_bytes = 0);
  std::vector<TxId> submit(const ingest::FileAsset& asset, const ingest::ChunkSet& chunks,
                           TimeMs submit_time_ms);

  /// Simulates from genesis until the queue drains. Pure function of the
  /// submissions and config; calling it twice yields identical logs.
  [[nodiscard]] std::vector<Block> run() const;

  [[nodiscard]] const std::vector<Submission>& submissions() const noexcept { return submissions_; }
  [[nodiscard]] const ChainConfig& config() const noexcept { return config_; }

 private:
  ChainConfig config_;
  std::vector<Submission> submissions_;
  std::unordered_set<std::string> ids_;
  TxId next_tx_ = 0;
};

}  // namespace semchain::chainsim
