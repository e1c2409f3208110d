#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "semchain/chainsim/config.hpp"
#include "semchain/semantics/rosis.hpp"

namespace semchain::pipeline {

/// Stable process exit codes.
enum class ExitCode : int { Success = 0, Partial = 1, InvalidConfig = 2 };

struct RunConfig {
  std::string manifest_path;
  chainsim::ChainConfig chain;
  std::vector<std::uint64_t> seeds{0, 1, 2, 3};
  semantics::SelectionMode mode = semantics::SelectionMode::Best;
  std::uint64_t rng_seed = 0;
  std::string output_dir = "out";
  bool deterministic_timing = false;
  std::optional<std::string> backend_url;
  std::size_t jobs = 1;

  /// Throws Error{InvalidConfig} (repeated seeds, empty seed list, bad chain
  /// parameters).
  void validate() const;
};

/// Reads a JSON object whose keys mirror RunConfig. Missing keys keep their
/// defaults; unknown keys are rejected. Throws Error{InvalidConfig}.
RunConfig run_config_from_json(const nlohmann::json& doc, RunConfig base = {});
RunConfig load_run_config(const std::filesystem::path& path);
nlohmann::json to_json(const RunConfig& config);

nlohmann::json to_json(const chainsim::ChainConfig& chain);
chainsim::ChainConfig chain_config_from_json(const nlohmann::json& doc, chainsim::ChainConfig base = {});

/// "0,1,2,3" or ranges such as "0-3" and "1-4,9". Throws Error{InvalidConfig}.
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

}  // namespace semchain::pipeline
