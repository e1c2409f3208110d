#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "semchain/ingest/bytes.hpp"

namespace semchain::ingest {

inline constexpr std::size_t kDefaultChunkSize = 100'000;

/// Base64 text of one asset cut into consecutive fixed-size slices.
/// Every chunk but the last is exactly chunk_size characters long.
struct ChunkSet {
  std::string asset_id;
  std::vector<std::string> chunks;
  std::size_t encoded_len = 0;

  [[nodiscard]] std::vector<std::size_t> chunk_sizes() const;
};

/// Throws Error{EmptyPayload} for empty text, Error{InvalidChunkSize} for 0.
ChunkSet partition(std::string_view encoded, std::size_t chunk_size, std::string asset_id = {});

/// Concatenates and base64-decodes. Throws Error{DecodeError}.
Bytes reassemble(const ChunkSet& chunks);

/// encode_base64 followed by partition.
ChunkSet chunk_payload(ByteView bytes, std::size_t chunk_size, std::string asset_id = {});

}  // namespace semchain::ingest
