#pragma once

#include <cstdint>
#include <string>

#include "semchain/ingest/bytes.hpp"
#include "semchain/semantics/embedding.hpp"

namespace semchain::backends {

/// A model answer plus the model's own execution time.
template <typename T>
struct Timed {
  T value;
  double elapsed_ms = 0.0;
};

/// The fixed sampler (caption), reconstructor (generate) and semantic
/// embedder. Implementations must tolerate concurrent calls.
class Backend {
 public:
  virtual ~Backend() = default;

  virtual Timed<std::string> caption(ByteView image) const = 0;
  virtual Timed<Bytes> generate(const std::string& prompt, std::uint64_t seed) const = 0;
  /// Always returns a unit-norm or degenerate embedding.
  virtual Timed<semantics::Embedding> embed(const std::string& text) const = 0;

  [[nodiscard]] virtual std::string name() const = 0;
};

}  // namespace semchain::backends
