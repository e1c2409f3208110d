#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <string_view>

#include "semchain/backends/backend.hpp"

namespace semchain::backends {

struct RemoteOptions {
  std::chrono::milliseconds timeout{120'000};
  /// Receives "-> path body" / "<- status body" lines when set.
  std::function<void(std::string_view)> trace;
};

/// JSON-over-HTTP client for a model server. Each call opens its own
/// connection, so concurrent calls never share client state.
///
/// Failures: Error{Timeout} when the server does not answer in time,
/// Error{BackendError} when it cannot be reached, Error{ServerError} for
/// status >= 500, Error{ProtocolError} for 4xx answers and for bodies that
/// are not JSON or lack a required field (the message names the field).
class RemoteBackend final : public Backend {
 public:
  /// `endpoint` is "http://host[:port][/prefix]". Throws Error{InvalidConfig}.
  explicit RemoteBackend(std::string endpoint, RemoteOptions options = {});

  Timed<std::string> caption(ByteView image) const override;
  Timed<Bytes> generate(const std::string& prompt, std::uint64_t seed) const override;
  Timed<semantics::Embedding> embed(const std::string& text) const override;
  [[nodiscard]] std::string name() const override { return "remote:" + endpoint_; }

  /// GET /healthz; returns the body's "mode" field.
  [[nodiscard]] std::string health() const;

 private:
  std::string post(std::string_view path, const std::string& body) const;

  std::string endpoint_;
  std::string scheme_host_port_;
  std::string prefix_;
  RemoteOptions options_;
};

}  // namespace semchain::backends
