#include "semchain/ingest/chunking.hpp"

#include "semchain/error.hpp"
#include "semchain/ingest/base64.hpp"

namespace semchain::ingest {

std::vector<std::size_t> ChunkSet::chunk_sizes() const {
  std::vector<std::size_t> sizes;
  sizes.reserve(chunks.size());
  for (const auto& c : chunks) sizes.push_back(c.size());
  return sizes;
}

ChunkSet partition(std::string_view encoded, std::size_t chunk_size, std::string asset_id) {
  if (chunk_size == 0) {
    throw Error(ErrorKind::InvalidChunkSize, "chunk_size must be at least 1");
  }
  if (encoded.empty()) {
    throw Error(ErrorKind::EmptyPayload, "nothing to partition for asset '" + asset_id + "'");
  }
  ChunkSet set{std::move(asset_id), {}, encoded.size()};
  set.chunks.reserve((encoded.size() + chunk_size - 1) / chunk_size);
  for (std::size_t pos = 0; pos < encoded.size(); pos += chunk_size) {
    set.chunks.emplace_back(encoded.substr(pos, chunk_size));
  }
  return set;
}

Bytes reassemble(const ChunkSet& chunks) {
  std::string joined;
  joined.reserve(chunks.encoded_len);
  for (const auto& c : chunks.chunks) joined += c;
  return decode_base64(joined);
}

ChunkSet chunk_payload(ByteView bytes, std::size_t chunk_size, std::string asset_id) {
  return partition(encode_base64(bytes), chunk_size, std::move(asset_id));
}

}  // namespace semchain::ingest
