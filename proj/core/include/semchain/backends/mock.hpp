#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semchain/backends/backend.hpp"

namespace semchain::backends {

inline constexpr std::size_t kMockEmbeddingDim = 256;
inline constexpr std::string_view kMockImageMagic = "MOCKIMG1";

/// Layout: "MOCKIMG1" | seed (u64 big-endian) | UTF-8 prompt.
struct MockImage {
  std::uint64_t seed = 0;
  std::string prompt;
};

std::optional<MockImage> parse_mock_image(ByteView bytes);

/// Lowercased (ASCII) tokens split on ASCII whitespace and punctuation.
std::vector<std::string> embedding_tokens(std::string_view text);

/// Signed feature hashing of the token bag into 256 dims, then L2
/// normalization. Bucket = h mod 256, sign from bit 0 of (h ^ h >> 32)
/// truncated to 32 bits, where h = fnv1a64(token). No tokens gives the
/// degenerate zero vector.
semantics::Embedding mock_embed(std::string_view text);

/// Throws Error{EmptyPrompt} on an empty prompt.
Bytes mock_generate(std::string_view prompt, std::uint64_t seed);

/// For mock images: seed 0 returns the prompt verbatim; any other seed keeps
/// whitespace-separated token t iff fnv1a64(seed_be8 | 0x1F | t) % 4 != 0 and
/// joins survivors with single spaces. Foreign bytes caption to
/// "image-" + the first 8 hex digits of fnv1a64(bytes).
std::string mock_caption(ByteView image);

/// In-process deterministic backend. Reports wall time of each call as
/// elapsed_ms.
class MockBackend final : public Backend {
 public:
  Timed<std::string> caption(ByteView image) const override;
  Timed<Bytes> generate(const std::string& prompt, std::uint64_t seed) const override;
  Timed<semantics::Embedding> embed(const std::string& text) const override;
  [[nodiscard]] std::string name() const override { return "mock"; }
};

}  // namespace semchain::backends
