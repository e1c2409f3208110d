#include "semchain/backends/fnv.hpp"

namespace semchain::backends {

std::uint64_t fnv1a64(ByteView data) noexcept {
  std::uint64_t h = kFnvOffsetBasis;
  for (const auto b : data) {
    h ^= b;
    h *= kFnvPrime;
  }
  return h;
}

}  // namespace semchain::backends
