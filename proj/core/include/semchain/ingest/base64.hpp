#pragma once

#include <string>
#include <string_view>

#include "semchain/ingest/bytes.hpp"

namespace semchain::ingest {

/// Standard-alphabet base64 with '=' padding. Output length is
/// 4 * ceil(n / 3).
std::string encode_base64(ByteView bytes);

/// Strict inverse of encode_base64. Rejects characters outside the standard
/// alphabet, lengths that are not a multiple of 4, misplaced padding and
/// non-canonical trailing bits. Throws Error{DecodeError}.
Bytes decode_base64(std::string_view text);

constexpr std::size_t encoded_length(std::size_t raw_len) noexcept {
  return 4 * ((raw_len + 2) / 3);
}

}  // namespace semchain::ingest
