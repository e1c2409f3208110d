#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace semchain {

enum class ErrorKind {
  // ingest
  EmptyPayload,
  InvalidChunkSize,
  DecodeError,
  DecompressError,
  InvalidUtf8,
  DuplicateAsset,
  Io,
  // chainsim
  ZeroDivisor,
  InvalidConfig,
  OversizedChunk,
  MissingTx,
  ZeroSize,
  // semantics
  DegenerateEmbedding,
  DimensionMismatch,
  EmptyPrompt,
  NoSeeds,
  DuplicateSeed,
  EmptyList,
  OutOfRange,
  // backends
  BackendError,
  Timeout,
  ProtocolError,
  ServerError,
  // pipeline
  MissingPair,
  SchemaMismatch,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a machine-readable kind so
/// callers (and the CLI exit-code mapping) can branch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace semchain
