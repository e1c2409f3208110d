#include "semchain/backends/mock.hpp"

#include <fmt/format.h>

#include <array>
#include <chrono>

#include "semchain/backends/fnv.hpp"
#include "semchain/error.hpp"

namespace semchain::backends {
namespace {

bool is_ascii_space(unsigned char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\v' || c == '\f' || c == '\r';
}

bool is_ascii_punct(unsigned char c) noexcept {
  return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) || (c >= 0x5B && c <= 0x60) ||
         (c >= 0x7B && c <= 0x7E);
}

std::array<std::uint8_t, 8> seed_bytes(std::uint64_t seed) noexcept {
  std::array<std::uint8_t, 8> out{};
  for (int i = 7; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(seed & 0xFF);
    seed >>= 8;
  }
  return out;
}

template <typename F>
auto timed(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  auto value = f();
  const std::chrono::duration<double, std::milli> took = std::chrono::steady_clock::now() - start;
  return Timed<decltype(value)>{std::move(value), took.count()};
}

}  // namespace

std::optional<MockImage> parse_mock_image(ByteView bytes) {
  if (bytes.size() < 16 || to_string(bytes.first(8)) != kMockImageMagic) {
    return std::nullopt;
  }
  MockImage img;
  for (std::size_t i = 8; i < 16; ++i) img.seed = (img.seed << 8) | bytes[i];
  img.prompt = to_string(bytes.subspan(16));
  return img;
}

std::vector<std::string> embedding_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (const char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_ascii_space(c) || is_ascii_punct(c)) {
      if (!cur.empty()) tokens.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c + ('a' - 'A')) : ch);
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

semantics::Embedding mock_embed(std::string_view text) {
  std::vector<double> v(kMockEmbeddingDim, 0.0);
  for (const auto& tok : embedding_tokens(text)) {
    const std::uint64_t h = fnv1a64(as_bytes(tok));
    const auto folded = static_cast<std::uint32_t>(h ^ (h >> 32));
    v[h % kMockEmbeddingDim] += (folded & 1U) == 0 ? 1.0 : -1.0;
  }
  return semantics::Embedding::normalized(std::move(v));
}

Bytes mock_generate(std::string_view prompt, std::uint64_t seed) {
  if (prompt.empty()) {
    throw Error(ErrorKind::EmptyPrompt, "mock_generate needs a non-empty prompt");
  }
  Bytes out;
  out.reserve(16 + prompt.size());
  out.insert(out.end(), kMockImageMagic.begin(), kMockImageMagic.end());
  const auto sb = seed_bytes(seed);
  out.insert(out.end(), sb.begin(), sb.end());
  out.insert(out.end(), prompt.begin(), prompt.end());
  return out;
}

std::string mock_caption(ByteView image) {
  const auto parsed = parse_mock_image(image);
  if (!parsed) {
    return fmt::format("image-{:016x}", fnv1a64(image)).substr(0, 14);
  }
  if (parsed->seed == 0) return parsed->prompt;

  const auto sb = seed_bytes(parsed->seed);
  std::string out;
  std::size_t pos = 0;
  const std::string& p = parsed->prompt;
  while (pos < p.size()) {
    while (pos < p.size() && is_ascii_space(static_cast<unsigned char>(p[pos]))) ++pos;
    const std::size_t start = pos;
    while (pos < p.size() && !is_ascii_space(static_cast<unsigned char>(p[pos]))) ++pos;
    if (start == pos) break;
    const std::string_view token(p.data() + start, pos - start);

    Bytes keyed(sb.begin(), sb.end());
    keyed.push_back(0x1F);
    keyed.insert(keyed.end(), token.begin(), token.end());
    if (fnv1a64(keyed) % 4 != 0) {
      if (!out.empty()) out.push_back(' ');
      out.append(token);
    }
  }
  return out;
}

Timed<std::string> MockBackend::caption(ByteView image) const {
  return timed([&] { return mock_caption(image); });
}

Timed<Bytes> MockBackend::generate(const std::string& prompt, std::uint64_t seed) const {
  return timed([&] { return mock_generate(prompt, seed); });
}

Timed<semantics::Embedding> MockBackend::embed(const std::string& text) const {
  return timed([&] { return mock_embed(text); });
}

}  // namespace semchain::backends
