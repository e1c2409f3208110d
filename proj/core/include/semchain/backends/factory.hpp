#pragma once

#include <memory>
#include <optional>
#include <string>

#include "semchain/backends/backend.hpp"
#include "semchain/backends/remote.hpp"

namespace semchain::backends {

inline constexpr const char* kBackendUrlEnv = "SEMCHAIN_BACKEND_URL";

/// An explicit URL wins; otherwise SEMCHAIN_BACKEND_URL; otherwise mocks.
std::unique_ptr<Backend> make_backend(const std::optional<std::string>& url = std::nullopt,
                                      RemoteOptions options = {});

}  // namespace semchain::backends
