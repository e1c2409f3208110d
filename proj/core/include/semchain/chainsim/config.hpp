#pragma once

#include <cstdint>
#include <optional>

namespace semchain::chainsim {

/// Milliseconds since chain genesis.
using TimeMs = std::int64_t;

inline constexpr TimeMs kDefaultBlockIntervalMs = 1000;
inline constexpr std::uint64_t kDefaultBlockCapacityBytes = 2'000'000;
inline constexpr std::uint32_t kDefaultNodeCount = 10;
inline constexpr std::uint64_t kDefaultChunkSize = 100'000;

/// floor(gas_limit / gas_per_byte). Throws Error{ZeroDivisor} when
/// gas_per_byte is 0. A zero result is returned as-is; ChainConfig rejects it.
std::uint64_t capacity_from_gas(std::uint64_t gas_limit, std::uint64_t gas_per_byte);

struct ChainConfig {
  TimeMs block_interval_ms = kDefaultBlockIntervalMs;
  std::uint64_t block_capacity_bytes = kDefaultBlockCapacityBytes;
  std::uint32_t node_count = kDefaultNodeCount;
  std::uint64_t chunk_size = kDefaultChunkSize;
  std::optional<std::uint64_t> gas_limit;
  std::optional<std::uint64_t> gas_per_byte;

  /// Capacity derived from a gas budget; both gas fields are recorded.
  static ChainConfig from_gas(std::uint64_t gas_limit, std::uint64_t gas_per_byte);

  /// Throws Error{InvalidConfig} on a non-positive field, a chunk size above
  /// block capacity, or gas fields inconsistent with the capacity.
  void validate() const;

  bool operator==(const ChainConfig&) const = default;
};

}  // namespace semchain::chainsim
