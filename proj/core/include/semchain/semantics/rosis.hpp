#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semchain/backends/backend.hpp"
#include "semchain/error.hpp"
#include "semchain/ingest/bytes.hpp"

namespace semchain::semantics {

inline constexpr std::size_t kDefaultSeedCount = 4;
/// Distance assigned to a candidate whose caption embeds to the zero vector.
inline constexpr double kDegenerateDistance = 2.0;

/// Semantic text stored on chain. Non-empty after trimming whitespace.
class Prompt {
 public:
  /// Throws Error{EmptyPrompt}.
  explicit Prompt(std::string text);
  [[nodiscard]] const std::string& text() const noexcept { return text_; }

 private:
  std::string text_;
};

enum class SelectionMode { Best, Worst, Random };

std::string_view to_string(SelectionMode mode) noexcept;
/// Throws Error{InvalidConfig}.
SelectionMode selection_mode_from_string(std::string_view name);

enum class Execution { Sequential, Parallel };

struct Candidate {
  std::uint64_t seed = 0;
  Bytes image;
  std::string caption;
  double distance = kDegenerateDistance;
  bool degenerate = false;
  double generate_ms = 0.0;
  double caption_ms = 0.0;
  double embed_ms = 0.0;
};

struct SelectionResult {
  std::string prompt;
  SelectionMode mode = SelectionMode::Best;
  std::optional<std::uint64_t> rng_seed;
  std::vector<Candidate> candidates;
  std::size_t chosen_index = 0;
  double prompt_embed_ms = 0.0;

  [[nodiscard]] const Candidate& chosen() const { return candidates.at(chosen_index); }
  /// Sum of all model time spent on this selection.
  [[nodiscard]] double model_time_ms() const noexcept;
};

/// A backend call failed while evaluating one candidate.
class BackendFailure : public Error {
 public:
  BackendFailure(std::uint64_t seed, ErrorKind cause, const std::string& message)
      : Error(ErrorKind::BackendError, "seed " + std::to_string(seed) + ": " + message), seed_(seed), cause_(cause) {}

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
  [[nodiscard]] ErrorKind cause() const noexcept { return cause_; }

 private:
  std::uint64_t seed_;
  ErrorKind cause_;
};

/// Argmin/argmax over distances with ties going to the smallest index, or a
/// draw from mt19937_64(rng_seed) reduced modulo the count in random mode.
/// Throws Error{EmptyList}; Error{InvalidConfig} for random mode without a
/// generator seed.
std::size_t choose_index(std::span<const double> distances, SelectionMode mode,
                         std::optional<std::uint64_t> rng_seed = std::nullopt);

/// Relative optimal semantic isotope selection. For every seed: generate an
/// image from (prompt, seed), caption it, embed the caption and score it by
/// cosine distance to the prompt's embedding; then pick one candidate per
/// `mode`. Candidates whose caption embedding is degenerate score 2.
///
/// The result depends only on the inputs and backend answers, never on the
/// order in which parallel evaluations complete.
///
/// Throws Error{NoSeeds}, Error{DuplicateSeed}, Error{DegenerateEmbedding}
/// when the prompt itself embeds to zero, and BackendFailure.
SelectionResult rosis_select(const Prompt& prompt, std::span<const std::uint64_t> seeds,
                             const backends::Backend& backend, SelectionMode mode,
                             std::optional<std::uint64_t> rng_seed = std::nullopt,
                             Execution execution = Execution::Sequential);

enum class DegeneratePolicy { Throw, ScoreMax };

/// cosine_distance(embed(prompt), embed(caption(image))).
double evaluate_pair(const Prompt& original, ByteView reconstructed, const backends::Backend& backend,
                     DegeneratePolicy policy = DegeneratePolicy::Throw);

}  // namespace semchain::semantics
