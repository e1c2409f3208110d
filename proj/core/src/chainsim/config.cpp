#include "semchain/chainsim/config.hpp"

#include <string>

#include "semchain/error.hpp"

namespace semchain::chainsim {

std::uint64_t capacity_from_gas(std::uint64_t gas_limit, std::uint64_t gas_per_byte) {
  if (gas_per_byte == 0) {
    throw Error(ErrorKind::ZeroDivisor, "gas_per_byte must be non-zero");
  }
  return gas_limit / gas_per_byte;
}

ChainConfig ChainConfig::from_gas(std::uint64_t gas_limit, std::uint64_t gas_per_byte) {
  ChainConfig config;
  config.block_capacity_bytes = capacity_from_gas(gas_limit, gas_per_byte);
  config.gas_limit = gas_limit;
  config.gas_per_byte = gas_per_byte;
  if (config.chunk_size > config.block_capacity_bytes) {
    config.chunk_size = config.block_capacity_bytes;
  }
  return config;
}

void ChainConfig::validate() const {
  const auto bad = [](const std::string& what) { throw Error(ErrorKind::InvalidConfig, what); };
  if (block_interval_ms <= 0) bad("block_interval_ms must be positive");
  if (block_capacity_bytes == 0) bad("block_capacity_bytes must be positive");
  if (node_count == 0) bad("node_count must be positive");
  if (chunk_size == 0) bad("chunk_size must be positive");
  if (chunk_size > block_capacity_bytes) {
    bad("chunk_size " + std::to_string(chunk_size) + " exceeds block capacity " +
        std::to_string(block_capacity_bytes));
  }
  if (gas_limit.has_value() != gas_per_byte.has_value()) {
    bad("gas_limit and gas_per_byte must be given together");
  }
  if (gas_limit && capacity_from_gas(*gas_limit, *gas_per_byte) != block_capacity_bytes) {
    bad("block_capacity_bytes does not equal gas_limit / gas_per_byte");
  }
}

}  // namespace semchain::chainsim
