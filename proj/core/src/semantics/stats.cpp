#include "semchain/semantics/stats.hpp"

#include <algorithm>
#include <string>

#include "semchain/error.hpp"

namespace semchain::semantics {

DistanceStats distance_stats(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorKind::EmptyList, "no distances to summarize");
  DistanceStats s{0.0, values.front(), values.front(), values.size()};
  double sum = 0.0;
  for (const double v : values) {
    if (!(v >= 0.0 && v <= 2.0)) {
      throw Error(ErrorKind::OutOfRange, "distance " + std::to_string(v) + " is outside [0, 2]");
    }
    sum += v;
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
  }
  // Rounding in the sum must not push the mean outside [min, max].
  s.mean = std::clamp(sum / static_cast<double>(values.size()), s.min, s.max);
  return s;
}

double improvement_percent(double other, double best) {
  if (best == 0.0) throw Error(ErrorKind::ZeroSize, "improvement is undefined against a zero best value");
  return (other - best) / best * 100.0;
}

}  // namespace semchain::semantics
