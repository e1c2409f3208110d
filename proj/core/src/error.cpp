#include "semchain/error.hpp"

namespace semchain {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::EmptyPayload: return "EmptyPayload";
    case ErrorKind::InvalidChunkSize: return "InvalidChunkSize";
    case ErrorKind::DecodeError: return "DecodeError";
    case ErrorKind::DecompressError: return "DecompressError";
    case ErrorKind::InvalidUtf8: return "InvalidUtf8";
    case ErrorKind::DuplicateAsset: return "DuplicateAsset";
    case ErrorKind::Io: return "Io";
    case ErrorKind::ZeroDivisor: return "ZeroDivisor";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::OversizedChunk: return "OversizedChunk";
    case ErrorKind::MissingTx: return "MissingTx";
    case ErrorKind::ZeroSize: return "ZeroSize";
    case ErrorKind::DegenerateEmbedding: return "DegenerateEmbedding";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::EmptyPrompt: return "EmptyPrompt";
    case ErrorKind::NoSeeds: return "NoSeeds";
    case ErrorKind::DuplicateSeed: return "DuplicateSeed";
    case ErrorKind::EmptyList: return "EmptyList";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::BackendError: return "BackendError";
    case ErrorKind::Timeout: return "Timeout";
    case ErrorKind::ProtocolError: return "ProtocolError";
    case ErrorKind::ServerError: return "ServerError";
    case ErrorKind::MissingPair: return "MissingPair";
    case ErrorKind::SchemaMismatch: return "SchemaMismatch";
  }
  return "Unknown";
}

}  // namespace semchain
