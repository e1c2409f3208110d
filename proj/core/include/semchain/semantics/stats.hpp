#pragma once

#include <cstddef>
#include <span>

namespace semchain::semantics {

struct DistanceStats {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;
};

/// Arithmetic mean, min and max. Throws Error{EmptyList} for no values and
/// Error{OutOfRange} for anything outside [0, 2].
DistanceStats distance_stats(std::span<const double> values);

/// (other - best) / best, in percent. Throws Error{ZeroSize} if best is 0.
double improvement_percent(double other, double best);

}  // namespace semchain::semantics
