#include "semchain/chainsim/simulator.hpp"

#include <algorithm>

#include "semchain/error.hpp"
#include "semchain/ingest/asset.hpp"
#include "semchain/ingest/chunking.hpp"

namespace semchain::chainsim {

Simulator::Simulator(ChainConfig config) : config_(std::move(config)) { config_.validate(); }

std::vector<TxId> Simulator::submit(const std::string& asset_id, std::span<const std::uint64_t> chunk_bytes,
                                    TimeMs submit_time_ms, std::uint64_t source_bytes) {
  if (submit_time_ms < 0) {
    throw Error(ErrorKind::OutOfRange, "negative submit time for asset '" + asset_id + "'");
  }
  if (chunk_bytes.empty()) {
    throw Error(ErrorKind::EmptyPayload, "asset '" + asset_id + "' has no chunks");
  }
  if (ids_.contains(asset_id)) {
    throw Error(ErrorKind::DuplicateAsset, "asset '" + asset_id + "' was already submitted");
  }
  for (std::size_t i = 0; i < chunk_bytes.size(); ++i) {
    if (chunk_bytes[i] == 0) {
      throw Error(ErrorKind::EmptyPayload, "asset '" + asset_id + "' chunk " + std::to_string(i) + " is empty");
    }
    if (chunk_bytes[i] > config_.block_capacity_bytes) {
      throw Error(ErrorKind::OversizedChunk, "asset '" + asset_id + "' chunk " + std::to_string(i) + " has " +
                                                 std::to_string(chunk_bytes[i]) + " bytes, block capacity is " +
                                                 std::to_string(config_.block_capacity_bytes));
    }
  }

  Submission sub{asset_id, source_bytes, {chunk_bytes.begin(), chunk_bytes.end()}, submit_time_ms,
                 submissions_.size(), next_tx_};
  std::vector<TxId> ids(chunk_bytes.size());
  for (auto& id : ids) id = next_tx_++;
  ids_.insert(asset_id);
  submissions_.push_back(std::move(sub));
  return ids;
}

std::vector<TxId> Simulator::submit(const ingest::FileAsset& asset, const ingest::ChunkSet& chunks,
                                    TimeMs submit_time_ms) {
  std::vector<std::uint64_t> sizes;
  sizes.reserve(chunks.chunks.size());
  for (const auto& c : chunks.chunks) sizes.push_back(c.size());
  return submit(asset.id(), sizes, submit_time_ms, asset.size());
}

std::vector<Block> Simulator::run() const {
  std::vector<const Submission*> order;
  order.reserve(submissions_.size());
  for (const auto& s : submissions_) order.push_back(&s);
  std::stable_sort(order.begin(), order.end(), [](const Submission* a, const Submission* b) {
    return a->submit_time_ms < b->submit_time_ms;
  });

  std::vector<ChainTx> queue;
  for (const auto* s : order) {
    for (std::size_t i = 0; i < s->chunk_bytes.size(); ++i) {
      queue.push_back({s->first_tx + i, s->asset_id, i, s->chunk_bytes[i], s->submit_time_ms});
    }
  }

  const TimeMs interval = config_.block_interval_ms;
  std::vector<Block> blocks;
  std::uint64_t height = 0;
  std::size_t head = 0;
  while (head < queue.size()) {
    // First boundary strictly after the front tx was submitted.
    const auto earliest = static_cast<std::uint64_t>(queue[head].submit_time_ms / interval) + 1;
    height = std::max(height + 1, earliest);
    const TimeMs now = static_cast<TimeMs>(height) * interval;

    Block block{height, now, {}, 0};
    while (head < queue.size() && queue[head].submit_time_ms < now &&
           block.used_bytes + queue[head].payload_bytes <= config_.block_capacity_bytes) {
      block.used_bytes += queue[head].payload_bytes;
      block.txs.push_back(std::move(queue[head]));
      ++head;
    }
    blocks.push_back(std::move(block));
  }
  return blocks;
}

}  // namespace semchain::chainsim
