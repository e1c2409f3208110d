#pragma once

#include <cstddef>
#include <vector>

namespace semchain::semantics {

/// A semantic vector handed to distance computations. Either unit L2 norm,
/// or the zero vector flagged as degenerate (e.g. an empty caption).
class Embedding {
 public:
  Embedding() = default;

  /// L2-normalizes `raw`. An all-zero (or non-finite) input becomes a
  /// degenerate zero vector of the same dimension.
  static Embedding normalized(std::vector<double> raw);

  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
  [[nodiscard]] std::size_t dim() const noexcept { return values_.size(); }
  [[nodiscard]] bool degenerate() const noexcept { return degenerate_; }

  bool operator==(const Embedding&) const = default;

 private:
  std::vector<double> values_;
  bool degenerate_ = true;
};

/// 1 - a.b / (|a| |b|), clamped to [0, 2].
/// Throws Error{DegenerateEmbedding} if either side has zero norm and
/// Error{DimensionMismatch} if the dimensions differ.
double cosine_distance(const Embedding& a, const Embedding& b);
double cosine_distance(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace semchain::semantics
