#include "semchain/backends/remote.hpp"

#include <httplib.h>

#include <array>
#include <nlohmann/json.hpp>

#include "semchain/backends/mock.hpp"
#include "semchain/backends/wire.hpp"
#include "semchain/error.hpp"
#include "semchain/ingest/base64.hpp"

namespace semchain::backends {

using nlohmann::json;

namespace wire {

json caption_request(std::string_view image_b64) { return {{"image_b64", image_b64}}; }
json generate_request(std::string_view prompt, std::uint64_t seed) { return {{"prompt", prompt}, {"seed", seed}}; }
json embed_request(std::string_view text) { return {{"text", text}}; }

namespace {

Response error_response(int status, const std::string& message) {
  return {status, json{{"error", message}}.dump()};
}

const json& require(const json& body, const char* field, json::value_t type) {
  if (!body.contains(field)) throw std::invalid_argument(std::string("missing field '") + field + "'");
  const auto& v = body[field];
  const bool ok = type == json::value_t::number_unsigned ? v.is_number_unsigned() : v.type() == type;
  if (!ok) throw std::invalid_argument(std::string("field '") + field + "' has the wrong type");
  return v;
}

}  // namespace

Response handle_mock_request(std::string_view method, std::string_view path, std::string_view body) {
  if (method == "GET" && path == kHealthPath) {
    return {200, json{{"status", "ok"}, {"mode", "mock"}}.dump()};
  }
  if (method != "POST" || (path != kCaptionPath && path != kGeneratePath && path != kEmbedPath)) {
    return error_response(404, "no route for " + std::string(method) + " " + std::string(path));
  }
  json req;
  try {
    req = json::parse(body);
  } catch (const json::parse_error&) {
    return error_response(400, "request body is not valid JSON");
  }
  if (!req.is_object()) return error_response(400, "request body must be a JSON object");
  try {
    if (path == kCaptionPath) {
      const auto image = ingest::decode_base64(require(req, "image_b64", json::value_t::string).get<std::string>());
      return {200, json{{"text", mock_caption(image)}, {"elapsed_ms", 0}}.dump()};
    }
    if (path == kGeneratePath) {
      const auto prompt = require(req, "prompt", json::value_t::string).get<std::string>();
      const auto seed = require(req, "seed", json::value_t::number_unsigned).get<std::uint64_t>();
      const auto image = mock_generate(prompt, seed);
      return {200, json{{"image_b64", ingest::encode_base64(image)}, {"elapsed_ms", 0}}.dump()};
    }
    const auto text = require(req, "text", json::value_t::string).get<std::string>();
    return {200, json{{"vector", mock_embed(text).values()}, {"elapsed_ms", 0}}.dump()};
  } catch (const std::invalid_argument& e) {
    return error_response(400, e.what());
  } catch (const Error& e) {
    return error_response(400, e.what());
  }
}

json mock_test_vectors(std::size_t count) {
  static constexpr std::array<std::string_view, 10> kPrompts{
      "a yellow tiger in grass", "red fox jumps",   "two people walking on a beach at sunset",
      "x",                       "A Castle, ON a hill!", "city skyline at night with bright lights",
      "bowl of fruit",           "snowy mountain peak under blue sky", "  spaced   out   words  ",
      "caf\xc3\xa9 terrace with chairs"};
  json out = json::array();
  for (std::size_t i = 0; i < count; ++i) {
    const std::string prompt(kPrompts[i % kPrompts.size()]);
    const std::uint64_t seed = (i / 3) % 7 == 6 ? 0xFFFFFFFFFFFFFFFFULL : (i / 3) % 7;
    json entry;
    switch (i % 3) {
      case 0:
        entry = {{"endpoint", kGeneratePath},
                 {"request", generate_request(prompt, seed)},
                 {"response", {{"image_b64", ingest::encode_base64(mock_generate(prompt, seed))}}}};
        break;
      case 1: {
        // Every seventh caption vector uses non-mock bytes.
        const Bytes image = i % 7 == 1 ? to_bytes(prompt) : mock_generate(prompt, seed);
        entry = {{"endpoint", kCaptionPath},
                 {"request", caption_request(ingest::encode_base64(image))},
                 {"response", {{"text", mock_caption(image)}}}};
        break;
      }
      default: {
        const std::string text = i % 11 == 2 ? std::string() : prompt;
        entry = {{"endpoint", kEmbedPath},
                 {"request", embed_request(text)},
                 {"response", {{"vector", mock_embed(text).values()}}}};
        break;
      }
    }
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace wire

namespace {

json parse_body(const std::string& body, std::string_view path) {
  try {
    json doc = json::parse(body);
    if (!doc.is_object()) {
      throw Error(ErrorKind::ProtocolError, std::string(path) + ": response is not a JSON object");
    }
    return doc;
  } catch (const json::parse_error&) {
    throw Error(ErrorKind::ProtocolError, std::string(path) + ": response is not valid JSON");
  }
}

double elapsed_of(const json& doc, std::string_view path) {
  if (!doc.contains("elapsed_ms") || !doc["elapsed_ms"].is_number() || doc["elapsed_ms"].get<double>() < 0.0) {
    throw Error(ErrorKind::ProtocolError, std::string(path) + ": field 'elapsed_ms' missing or invalid");
  }
  return doc["elapsed_ms"].get<double>();
}

std::string string_field(const json& doc, const char* field, std::string_view path) {
  if (!doc.contains(field) || !doc[field].is_string()) {
    throw Error(ErrorKind::ProtocolError, std::string(path) + ": field '" + field + "' missing or not a string");
  }
  return doc[field].get<std::string>();
}

}  // namespace

RemoteBackend::RemoteBackend(std::string endpoint, RemoteOptions options)
    : endpoint_(std::move(endpoint)), options_(std::move(options)) {
  const auto scheme_end = endpoint_.find("://");
  if (scheme_end == std::string::npos || endpoint_.substr(0, scheme_end) != "http") {
    throw Error(ErrorKind::InvalidConfig, "backend url must start with http://, got '" + endpoint_ + "'");
  }
  const auto path_start = endpoint_.find('/', scheme_end + 3);
  scheme_host_port_ = endpoint_.substr(0, path_start);
  if (scheme_host_port_.size() == scheme_end + 3) {
    throw Error(ErrorKind::InvalidConfig, "backend url has no host: '" + endpoint_ + "'");
  }
  if (path_start != std::string::npos) {
    prefix_ = endpoint_.substr(path_start);
    while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
  }
}

namespace {

void apply_timeouts(httplib::Client& client, std::chrono::milliseconds timeout) {
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
}

}  // namespace

std::string RemoteBackend::post(std::string_view path, const std::string& body) const {
  httplib::Client client(scheme_host_port_);
  apply_timeouts(client, options_.timeout);

  const std::string full = prefix_ + std::string(path);
  if (options_.trace) options_.trace("-> POST " + full + " " + body);
  auto res = client.Post(full, body, "application/json");
  if (!res) {
    const auto err = res.error();
    const std::string what = httplib::to_string(err);
    if (err == httplib::Error::Read || err == httplib::Error::Write || err == httplib::Error::ConnectionTimeout) {
      throw Error(ErrorKind::Timeout, full + ": " + what);
    }
    throw Error(ErrorKind::BackendError, full + ": " + what);
  }
  if (options_.trace) options_.trace("<- " + std::to_string(res->status) + " " + res->body);
  if (res->status >= 400) {
    std::string message = res->body;
    try {
      const auto doc = json::parse(res->body);
      if (doc.is_object() && doc.contains("error") && doc["error"].is_string()) message = doc["error"];
    } catch (const json::parse_error&) {
    }
    throw Error(res->status >= 500 ? ErrorKind::ServerError : ErrorKind::ProtocolError,
                full + ": status " + std::to_string(res->status) + ": " + message);
  }
  return res->body;
}

Timed<std::string> RemoteBackend::caption(ByteView image) const {
  const auto path = wire::kCaptionPath;
  const auto doc = parse_body(post(path, wire::caption_request(ingest::encode_base64(image)).dump()), path);
  return {string_field(doc, "text", path), elapsed_of(doc, path)};
}

Timed<Bytes> RemoteBackend::generate(const std::string& prompt, std::uint64_t seed) const {
  const auto path = wire::kGeneratePath;
  const auto doc = parse_body(post(path, wire::generate_request(prompt, seed).dump()), path);
  const auto b64 = string_field(doc, "image_b64", path);
  Bytes image;
  try {
    image = ingest::decode_base64(b64);
  } catch (const Error& e) {
    throw Error(ErrorKind::ProtocolError, std::string(path) + ": field 'image_b64' is not base64: " + e.what());
  }
  return {std::move(image), elapsed_of(doc, path)};
}

Timed<semantics::Embedding> RemoteBackend::embed(const std::string& text) const {
  const auto path = wire::kEmbedPath;
  const auto doc = parse_body(post(path, wire::embed_request(text).dump()), path);
  if (!doc.contains("vector") || !doc["vector"].is_array()) {
    throw Error(ErrorKind::ProtocolError, std::string(path) + ": field 'vector' missing or not an array");
  }
  std::vector<double> raw;
  raw.reserve(doc["vector"].size());
  for (const auto& v : doc["vector"]) {
    if (!v.is_number()) {
      throw Error(ErrorKind::ProtocolError, std::string(path) + ": field 'vector' holds a non-number");
    }
    raw.push_back(v.get<double>());
  }
  return {semantics::Embedding::normalized(std::move(raw)), elapsed_of(doc, path)};
}

std::string RemoteBackend::health() const {
  httplib::Client client(scheme_host_port_);
  apply_timeouts(client, options_.timeout);
  const std::string full = prefix_ + std::string(wire::kHealthPath);
  auto res = client.Get(full);
  if (!res) throw Error(ErrorKind::BackendError, full + ": " + httplib::to_string(res.error()));
  if (res->status != 200) throw Error(ErrorKind::ServerError, full + ": status " + std::to_string(res->status));
  return string_field(parse_body(res->body, full), "mode", full);
}

}  // namespace semchain::backends
