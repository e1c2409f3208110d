#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "semchain/ingest/bytes.hpp"

namespace semchain::pipeline {

/// Writes to a sibling temp file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);
void write_file_atomic(const std::filesystem::path& path, ByteView contents);

std::string read_text(const std::filesystem::path& path);
/// Throws Error{SchemaMismatch} if the file is not JSON.
nlohmann::json read_json(const std::filesystem::path& path);

/// Maps an asset id onto a portable file stem ([A-Za-z0-9._-], others -> '_').
std::string file_stem_for(std::string_view id);

/// Runs fn(0..count-1) on up to `jobs` threads (0 = hardware concurrency).
/// fn must not throw.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn);

}  // namespace semchain::pipeline
