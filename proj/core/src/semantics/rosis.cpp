#include "semchain/semantics/rosis.hpp"

#include <algorithm>
#include <future>
#include <random>
#include <unordered_set>

#include "semchain/semantics/embedding.hpp"

namespace semchain::semantics {
namespace {

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\v' || c == '\f' || c == '\r';
  });
}

Candidate evaluate_candidate(const std::string& prompt, std::uint64_t seed, const Embedding& reference,
                             const backends::Backend& backend) {
  Candidate c;
  c.seed = seed;
  try {
    auto image = backend.generate(prompt, seed);
    c.image = std::move(image.value);
    c.generate_ms = image.elapsed_ms;
    auto caption = backend.caption(c.image);
    c.caption = std::move(caption.value);
    c.caption_ms = caption.elapsed_ms;
    const auto emb = backend.embed(c.caption);
    c.embed_ms = emb.elapsed_ms;
    if (emb.value.degenerate()) {
      c.degenerate = true;
      c.distance = kDegenerateDistance;
    } else {
      c.distance = cosine_distance(emb.value, reference);
    }
  } catch (const BackendFailure&) {
    throw;
  } catch (const Error& e) {
    throw BackendFailure(seed, e.kind(), e.what());
  } catch (const std::exception& e) {
    throw BackendFailure(seed, ErrorKind::BackendError, e.what());
  }
  return c;
}

}  // namespace

Prompt::Prompt(std::string text) : text_(std::move(text)) {
  if (blank(text_)) throw Error(ErrorKind::EmptyPrompt, "prompt is empty after trimming whitespace");
}

std::string_view to_string(SelectionMode mode) noexcept {
  switch (mode) {
    case SelectionMode::Best: return "best";
    case SelectionMode::Worst: return "worst";
    case SelectionMode::Random: return "random";
  }
  return "best";
}

SelectionMode selection_mode_from_string(std::string_view name) {
  if (name == "best") return SelectionMode::Best;
  if (name == "worst") return SelectionMode::Worst;
  if (name == "random") return SelectionMode::Random;
  throw Error(ErrorKind::InvalidConfig, "unknown selection mode '" + std::string(name) + "'");
}

double SelectionResult::model_time_ms() const noexcept {
  double total = prompt_embed_ms;
  for (const auto& c : candidates) total += c.generate_ms + c.caption_ms + c.embed_ms;
  return total;
}

std::size_t choose_index(std::span<const double> distances, SelectionMode mode,
                         std::optional<std::uint64_t> rng_seed) {
  if (distances.empty()) throw Error(ErrorKind::EmptyList, "no candidates to choose from");
  switch (mode) {
    case SelectionMode::Best:
      return static_cast<std::size_t>(std::min_element(distances.begin(), distances.end()) - distances.begin());
    case SelectionMode::Worst: {
      // max_element returns the first of equal maxima.
      return static_cast<std::size_t>(std::max_element(distances.begin(), distances.end()) - distances.begin());
    }
    case SelectionMode::Random: {
      if (!rng_seed) throw Error(ErrorKind::InvalidConfig, "random selection needs an rng seed");
      std::mt19937_64 gen(*rng_seed);
      return static_cast<std::size_t>(gen() % distances.size());
    }
  }
  return 0;
}

SelectionResult rosis_select(const Prompt& prompt, std::span<const std::uint64_t> seeds,
                             const backends::Backend& backend, SelectionMode mode,
                             std::optional<std::uint64_t> rng_seed, Execution execution) {
  if (seeds.empty()) throw Error(ErrorKind::NoSeeds, "ROSIS needs at least one seed");
  std::unordered_set<std::uint64_t> distinct(seeds.begin(), seeds.end());
  if (distinct.size() != seeds.size()) throw Error(ErrorKind::DuplicateSeed, "seeds must be distinct");
  if (mode == SelectionMode::Random && !rng_seed) {
    throw Error(ErrorKind::InvalidConfig, "random selection needs an rng seed");
  }

  SelectionResult result;
  result.prompt = prompt.text();
  result.mode = mode;
  result.rng_seed = rng_seed;

  const auto reference = backend.embed(prompt.text());
  result.prompt_embed_ms = reference.elapsed_ms;
  if (reference.value.degenerate()) {
    throw Error(ErrorKind::DegenerateEmbedding, "prompt '" + prompt.text() + "' embeds to the zero vector");
  }

  result.candidates.reserve(seeds.size());
  if (execution == Execution::Parallel && seeds.size() > 1) {
    std::vector<std::future<Candidate>> pending;
    pending.reserve(seeds.size());
    for (const auto seed : seeds) {
      pending.push_back(std::async(std::launch::async, evaluate_candidate, std::cref(prompt.text()), seed,
                                   std::cref(reference.value), std::cref(backend)));
    }
    // Collected in seed order; the first failing seed in list order wins.
    for (auto& f : pending) result.candidates.push_back(f.get());
  } else {
    for (const auto seed : seeds) {
      result.candidates.push_back(evaluate_candidate(prompt.text(), seed, reference.value, backend));
    }
  }

  std::vector<double> distances;
  distances.reserve(result.candidates.size());
  for (const auto& c : result.candidates) distances.push_back(c.distance);
  result.chosen_index = choose_index(distances, mode, rng_seed);
  return result;
}

double evaluate_pair(const Prompt& original, ByteView reconstructed, const backends::Backend& backend,
                     DegeneratePolicy policy) {
  const auto reference = backend.embed(original.text());
  if (reference.value.degenerate()) {
    throw Error(ErrorKind::DegenerateEmbedding, "prompt '" + original.text() + "' embeds to the zero vector");
  }
  const auto caption = backend.caption(reconstructed);
  const auto emb = backend.embed(caption.value);
  if (emb.value.degenerate()) {
    if (policy == DegeneratePolicy::ScoreMax) return kDegenerateDistance;
    throw Error(ErrorKind::DegenerateEmbedding, "caption '" + caption.value + "' embeds to the zero vector");
  }
  return cosine_distance(emb.value, reference.value);
}

}  // namespace semchain::semantics
