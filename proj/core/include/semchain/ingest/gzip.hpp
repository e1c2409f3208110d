#pragma once

#include <string>
#include <string_view>

#include "semchain/ingest/bytes.hpp"

namespace semchain::ingest {

/// RFC 1952 gzip container around a DEFLATE stream. The header mtime is 0,
/// so equal input always yields equal output bytes.
/// Throws Error{InvalidUtf8} when `text` is not well-formed UTF-8.
Bytes compress_prompt(std::string_view text);

/// Throws Error{DecompressError} on a malformed or truncated container and
/// Error{InvalidUtf8} if the payload is not UTF-8.
std::string decompress_prompt(ByteView gz);

bool is_valid_utf8(std::string_view text) noexcept;

}  // namespace semchain::ingest
