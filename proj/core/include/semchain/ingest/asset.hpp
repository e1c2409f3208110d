#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semchain/ingest/bytes.hpp"

namespace semchain::ingest {

enum class AssetKind { Image, PromptText, PromptGz, Other };

std::string_view to_string(AssetKind kind) noexcept;
/// Throws Error{InvalidConfig} for unknown names.
AssetKind asset_kind_from_string(std::string_view name);

/// A source payload. Construction rejects empty bytes with Error{EmptyPayload}.
class FileAsset {
 public:
  FileAsset(std::string id, Bytes bytes, AssetKind kind,
            std::optional<std::string> source_path = std::nullopt);

  [[nodiscard]] const std::string& id() const noexcept { return id_; }
  [[nodiscard]] const Bytes& bytes() const noexcept { return bytes_; }
  [[nodiscard]] AssetKind kind() const noexcept { return kind_; }
  [[nodiscard]] const std::optional<std::string>& source_path() const noexcept { return source_path_; }
  [[nodiscard]] std::size_t size() const noexcept { return bytes_.size(); }

 private:
  std::string id_;
  Bytes bytes_;
  AssetKind kind_;
  std::optional<std::string> source_path_;
};

struct ManifestEntry {
  std::string id;
  std::string path;
  AssetKind kind = AssetKind::Other;

  bool operator==(const ManifestEntry&) const = default;
};

/// Corpus manifest: a JSON array of {"id", "path", "kind"} objects.
/// Ids must be unique (Error{DuplicateAsset}); schema problems raise
/// Error{InvalidConfig}.
std::vector<ManifestEntry> parse_manifest(std::string_view json_text);
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);
std::string dump_manifest(const std::vector<ManifestEntry>& entries);

/// Reads the file behind an entry. Relative paths resolve against base_dir.
/// Throws Error{Io} if unreadable, Error{EmptyPayload} if empty.
FileAsset load_asset(const ManifestEntry& entry, const std::filesystem::path& base_dir = {});

Bytes read_file(const std::filesystem::path& path);

}  // namespace semchain::ingest
