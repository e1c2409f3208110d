#include "semchain/ingest/asset.hpp"

#include <fstream>
#include <iterator>
#include <nlohmann/json.hpp>
#include <unordered_set>

#include "semchain/error.hpp"

namespace semchain::ingest {

using nlohmann::json;

std::string_view to_string(AssetKind kind) noexcept {
  switch (kind) {
    case AssetKind::Image: return "image";
    case AssetKind::PromptText: return "prompt_text";
    case AssetKind::PromptGz: return "prompt_gz";
    case AssetKind::Other: return "other";
  }
  return "other";
}

AssetKind asset_kind_from_string(std::string_view name) {
  if (name == "image") return AssetKind::Image;
  if (name == "prompt_text") return AssetKind::PromptText;
  if (name == "prompt_gz") return AssetKind::PromptGz;
  if (name == "other") return AssetKind::Other;
  throw Error(ErrorKind::InvalidConfig, "unknown asset kind '" + std::string(name) + "'");
}

FileAsset::FileAsset(std::string id, Bytes bytes, AssetKind kind, std::optional<std::string> source_path)
    : id_(std::move(id)), bytes_(std::move(bytes)), kind_(kind), source_path_(std::move(source_path)) {
  if (bytes_.empty()) {
    throw Error(ErrorKind::EmptyPayload, "asset '" + id_ + "' has no bytes");
  }
}

std::vector<ManifestEntry> parse_manifest(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidConfig, std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) {
    throw Error(ErrorKind::InvalidConfig, "manifest must be a JSON array");
  }
  std::vector<ManifestEntry> entries;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& item = doc[i];
    const auto field = [&](const char* name) -> std::string {
      if (!item.is_object() || !item.contains(name) || !item[name].is_string()) {
        throw Error(ErrorKind::InvalidConfig,
                    "manifest entry " + std::to_string(i) + " lacks string field '" + name + "'");
      }
      return item[name].get<std::string>();
    };
    ManifestEntry entry{field("id"), field("path"), asset_kind_from_string(field("kind"))};
    if (!seen.insert(entry.id).second) {
      throw Error(ErrorKind::DuplicateAsset, "manifest repeats id '" + entry.id + "'");
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

Bytes read_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorKind::Io, "'" + path.string() + "' is not a readable file");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  }
  Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw Error(ErrorKind::Io, "read failed for '" + path.string() + "'");
  }
  return data;
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
  const auto data = read_file(path);
  return parse_manifest(semchain::to_string(data));
}

std::string dump_manifest(const std::vector<ManifestEntry>& entries) {
  json doc = json::array();
  for (const auto& e : entries) {
    doc.push_back({{"id", e.id}, {"path", e.path}, {"kind", std::string(to_string(e.kind))}});
  }
  return doc.dump(2) + "\n";
}

FileAsset load_asset(const ManifestEntry& entry, const std::filesystem::path& base_dir) {
  std::filesystem::path p(entry.path);
  if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
  return FileAsset(entry.id, read_file(p), entry.kind, entry.path);
}

}  // namespace semchain::ingest
