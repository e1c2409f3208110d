#include "semchain/semantics/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "semchain/error.hpp"

namespace semchain::semantics {

Embedding Embedding::normalized(std::vector<double> raw) {
  double sq = 0.0;
  for (double v : raw) sq += v * v;
  const double norm = std::sqrt(sq);
  Embedding e;
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    std::fill(raw.begin(), raw.end(), 0.0);
    e.values_ = std::move(raw);
    e.degenerate_ = true;
    return e;
  }
  for (double& v : raw) v /= norm;
  e.values_ = std::move(raw);
  e.degenerate_ = false;
  return e;
}

double cosine_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "cannot compare dimensions " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (!(na > 0.0) || !(nb > 0.0)) {
    throw Error(ErrorKind::DegenerateEmbedding, "cosine distance of a zero-norm vector");
  }
  const double d = 1.0 - dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(d, 0.0, 2.0);
}

double cosine_distance(const Embedding& a, const Embedding& b) {
  if (a.degenerate() || b.degenerate()) {
    throw Error(ErrorKind::DegenerateEmbedding, "cosine distance of a degenerate embedding");
  }
  return cosine_distance(a.values(), b.values());
}

}  // namespace semchain::semantics
