#pragma once

#include <cstdint>

#include "semchain/ingest/bytes.hpp"

namespace semchain::backends {

inline constexpr std::uint64_t kFnvOffsetBasis = 14695981039346656037ULL;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(ByteView data) noexcept;

}  // namespace semchain::backends
