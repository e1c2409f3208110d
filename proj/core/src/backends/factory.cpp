#include "semchain/backends/factory.hpp"

#include <cstdlib>

#include "semchain/backends/mock.hpp"

namespace semchain::backends {

std::unique_ptr<Backend> make_backend(const std::optional<std::string>& url, RemoteOptions options) {
  if (url && !url->empty()) {
    return std::make_unique<RemoteBackend>(*url, std::move(options));
  }
  if (const char* env = std::getenv(kBackendUrlEnv); env != nullptr && *env != '\0') {
    return std::make_unique<RemoteBackend>(env, std::move(options));
  }
  return std::make_unique<MockBackend>();
}

}  // namespace semchain::backends
