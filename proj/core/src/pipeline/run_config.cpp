#include "semchain/pipeline/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <type_traits>
#include <unordered_set>

#include "semchain/error.hpp"
#include "semchain/pipeline/files.hpp"

namespace semchain::pipeline {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidConfig, what); }

bool all_unsigned(const json& v) {
  if (v.is_array()) return std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_number_unsigned(); });
  return v.is_number_unsigned();
}

template <typename T>
T get_as(const json& doc, const char* key) {
  // json converts -1 to a huge unsigned value without complaint.
  constexpr bool wants_unsigned =
      (std::is_unsigned_v<T> && !std::is_same_v<T, bool>) || std::is_same_v<T, std::vector<std::uint64_t>>;
  if constexpr (wants_unsigned) {
    if (!all_unsigned(doc.at(key))) bad(std::string("config field '") + key + "' must be a non-negative integer");
  }
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    bad(std::string("config field '") + key + "' has the wrong type");
  }
}

std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    bad("'" + std::string(s) + "' is not an unsigned integer");
  }
  return v;
}

}  // namespace

void RunConfig::validate() const {
  chain.validate();
  if (seeds.empty()) bad("at least one seed is required");
  std::unordered_set<std::uint64_t> distinct(seeds.begin(), seeds.end());
  if (distinct.size() != seeds.size()) bad("seeds must be distinct");
  if (output_dir.empty()) bad("output_dir must not be empty");
}

json to_json(const chainsim::ChainConfig& c) {
  json doc{{"block_interval_ms", c.block_interval_ms},
           {"block_capacity_bytes", c.block_capacity_bytes},
           {"node_count", c.node_count},
           {"chunk_size", c.chunk_size}};
  doc["gas_limit"] = c.gas_limit ? json(*c.gas_limit) : json(nullptr);
  doc["gas_per_byte"] = c.gas_per_byte ? json(*c.gas_per_byte) : json(nullptr);
  return doc;
}

chainsim::ChainConfig chain_config_from_json(const json& doc, chainsim::ChainConfig c) {
  if (!doc.is_object()) bad("chain config must be a JSON object");
  static const std::unordered_set<std::string> known{"block_interval_ms", "block_capacity_bytes", "node_count",
                                                     "chunk_size", "gas_limit", "gas_per_byte"};
  for (const auto& [key, _] : doc.items()) {
    if (!known.contains(key)) bad("unknown chain config field '" + key + "'");
  }
  if (doc.contains("block_interval_ms")) c.block_interval_ms = get_as<chainsim::TimeMs>(doc, "block_interval_ms");
  if (doc.contains("block_capacity_bytes")) c.block_capacity_bytes = get_as<std::uint64_t>(doc, "block_capacity_bytes");
  if (doc.contains("node_count")) c.node_count = get_as<std::uint32_t>(doc, "node_count");
  if (doc.contains("chunk_size")) c.chunk_size = get_as<std::uint64_t>(doc, "chunk_size");
  const auto opt = [&](const char* key, std::optional<std::uint64_t>& field) {
    if (!doc.contains(key)) return;
    field = doc[key].is_null() ? std::nullopt : std::optional(get_as<std::uint64_t>(doc, key));
  };
  opt("gas_limit", c.gas_limit);
  opt("gas_per_byte", c.gas_per_byte);
  // A gas budget without an explicit capacity determines the capacity.
  if (c.gas_limit && c.gas_per_byte && !doc.contains("block_capacity_bytes")) {
    c.block_capacity_bytes = chainsim::capacity_from_gas(*c.gas_limit, *c.gas_per_byte);
  }
  return c;
}

RunConfig run_config_from_json(const json& doc, RunConfig c) {
  if (!doc.is_object()) bad("run config must be a JSON object");
  static const std::unordered_set<std::string> known{"manifest_path", "chain", "seeds", "mode",
                                                     "rng_seed", "output_dir", "deterministic_timing",
                                                     "backend_url", "jobs"};
  for (const auto& [key, _] : doc.items()) {
    if (!known.contains(key)) bad("unknown config field '" + key + "'");
  }
  if (doc.contains("manifest_path")) c.manifest_path = get_as<std::string>(doc, "manifest_path");
  if (doc.contains("chain")) c.chain = chain_config_from_json(doc["chain"], c.chain);
  if (doc.contains("seeds")) c.seeds = get_as<std::vector<std::uint64_t>>(doc, "seeds");
  if (doc.contains("mode")) c.mode = semantics::selection_mode_from_string(get_as<std::string>(doc, "mode"));
  if (doc.contains("rng_seed")) c.rng_seed = get_as<std::uint64_t>(doc, "rng_seed");
  if (doc.contains("output_dir")) c.output_dir = get_as<std::string>(doc, "output_dir");
  if (doc.contains("deterministic_timing")) c.deterministic_timing = get_as<bool>(doc, "deterministic_timing");
  if (doc.contains("backend_url")) {
    c.backend_url = doc["backend_url"].is_null() ? std::nullopt : std::optional(get_as<std::string>(doc, "backend_url"));
  }
  if (doc.contains("jobs")) c.jobs = get_as<std::size_t>(doc, "jobs");
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  try {
    auto config = run_config_from_json(read_json(path));
    config.validate();
    return config;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidConfig) throw;
    throw Error(ErrorKind::InvalidConfig, e.what());
  }
}

json to_json(const RunConfig& c) {
  return {{"manifest_path", c.manifest_path},
          {"chain", to_json(c.chain)},
          {"seeds", c.seeds},
          {"mode", std::string(semantics::to_string(c.mode))},
          {"rng_seed", c.rng_seed},
          {"output_dir", c.output_dir},
          {"deterministic_timing", c.deterministic_timing},
          {"backend_url", c.backend_url ? json(*c.backend_url) : json(nullptr)},
          {"jobs", c.jobs}};
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (const auto dash = item.find('-'); dash != std::string_view::npos) {
      const auto lo = parse_u64(item.substr(0, dash));
      const auto hi = parse_u64(item.substr(dash + 1));
      if (hi < lo || hi - lo > 1'000'000) bad("bad seed range '" + std::string(item) + "'");
      for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
    } else {
      seeds.push_back(parse_u64(item));
    }
  }
  if (seeds.empty()) bad("empty seed list");
  std::unordered_set<std::uint64_t> distinct(seeds.begin(), seeds.end());
  if (distinct.size() != seeds.size()) bad("seeds must be distinct");
  return seeds;
}

}  // namespace semchain::pipeline
