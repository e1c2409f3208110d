#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace semchain::backends::wire {

inline constexpr std::string_view kCaptionPath = "/v1/caption";
inline constexpr std::string_view kGeneratePath = "/v1/generate";
inline constexpr std::string_view kEmbedPath = "/v1/embed";
inline constexpr std::string_view kHealthPath = "/healthz";

nlohmann::json caption_request(std::string_view image_b64);
nlohmann::json generate_request(std::string_view prompt, std::uint64_t seed);
nlohmann::json embed_request(std::string_view text);

struct Response {
  int status = 200;
  std::string body;
};

/// Reference implementation of the wire protocol in mock mode, backed by the
/// in-process mocks. Bad JSON or missing fields give 400, unknown paths 404,
/// all with an {"error": ...} body. elapsed_ms is reported as 0.
Response handle_mock_request(std::string_view method, std::string_view path, std::string_view body);

/// Shared fixture for server parity checks: `count` entries of
/// {"endpoint", "request", "response"} produced by the in-process mocks.
/// Responses omit elapsed_ms. Output depends only on `count`.
nlohmann::json mock_test_vectors(std::size_t count);

}  // namespace semchain::backends::wire
