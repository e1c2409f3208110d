#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <future>
#include <mutex>
#include <nlohmann/json.hpp>
#include <thread>

#include "kind_of.hpp"
#include "mock_server.hpp"
#include "semchain/backends/mock.hpp"
#include "semchain/backends/remote.hpp"
#include "semchain/error.hpp"
#include "semchain/ingest/base64.hpp"

namespace {

using namespace semchain;
using namespace semchain::backends;
using semchain::testing::kind_of;
using semchain::testing::MockServer;
using nlohmann::json;

MockServer::Override answer_on(std::string path, int status, std::string body) {
  return [=](const std::string& p, const std::string&) -> std::optional<wire::Response> {
    if (p != path) return std::nullopt;
    return wire::Response{status, body};
  };
}

std::string error_message(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

TEST(RemoteBackend, RoundTripsThroughMockServer) {
  MockServer server;
  const RemoteBackend remote(server.url());
  const auto img = remote.generate("red fox jumps", 7);
  EXPECT_EQ(img.value, mock_generate("red fox jumps", 7));
  EXPECT_EQ(img.elapsed_ms, 0.0);
  EXPECT_EQ(remote.caption(img.value).value, "fox jumps");
  EXPECT_EQ(remote.embed("Hello").value, mock_embed("Hello"));
  EXPECT_TRUE(remote.embed("").value.degenerate());
  EXPECT_EQ(remote.health(), "mock");
}

TEST(RemoteBackend, NormalizesServerVectorsOfAnyDimension) {
  json body{{"vector", std::vector<double>(384, 2.0)}, {"elapsed_ms", 12.5}};
  MockServer server(answer_on("/v1/embed", 200, body.dump()));
  const auto e = RemoteBackend(server.url()).embed("anything");
  ASSERT_EQ(e.value.dim(), 384U);
  EXPECT_FALSE(e.value.degenerate());
  double norm = 0.0;
  for (double x : e.value.values()) norm += x * x;
  EXPECT_NEAR(std::sqrt(norm), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(e.elapsed_ms, 12.5);
}

TEST(RemoteBackend, MalformedBodiesNameTheField) {
  struct Case {
    std::string path;
    std::string body;
    std::string field;
  };
  const std::vector<Case> cases{
      {"/v1/caption", R"({"text": 5, "elapsed_ms": 1})", "text"},
      {"/v1/caption", R"({"text": "ok"})", "elapsed_ms"},
      {"/v1/caption", R"({"text": "ok", "elapsed_ms": -1})", "elapsed_ms"},
      {"/v1/generate", R"({"image_b64": "@@@", "elapsed_ms": 1})", "image_b64"},
      {"/v1/generate", R"({"elapsed_ms": 1})", "image_b64"},
      {"/v1/embed", R"({"vector": "nope", "elapsed_ms": 1})", "vector"},
      {"/v1/embed", R"({"vector": [1, "x"], "elapsed_ms": 1})", "vector"},
  };
  for (const auto& c : cases) {
    MockServer server(answer_on(c.path, 200, c.body));
    const RemoteBackend remote(server.url());
    const auto call = [&] {
      if (c.path == "/v1/caption") remote.caption(mock_generate("a", 1));
      else if (c.path == "/v1/generate") remote.generate("a", 1);
      else remote.embed("a");
    };
    EXPECT_EQ(kind_of(call), ErrorKind::ProtocolError) << c.body;
    EXPECT_NE(error_message(call).find("'" + c.field + "'"), std::string::npos) << error_message(call);
  }
  MockServer garbage(answer_on("/v1/embed", 200, "<html>"));
  EXPECT_EQ(kind_of([&] { RemoteBackend(garbage.url()).embed("a"); }), ErrorKind::ProtocolError);
  MockServer array(answer_on("/v1/embed", 200, "[1,2]"));
  EXPECT_EQ(kind_of([&] { RemoteBackend(array.url()).embed("a"); }), ErrorKind::ProtocolError);
}

TEST(RemoteBackend, MapsStatusCodes) {
  MockServer crash(answer_on("/v1/generate", 500, R"({"error":"CUDA out of memory"})"));
  EXPECT_EQ(kind_of([&] { RemoteBackend(crash.url()).generate("a", 1); }), ErrorKind::ServerError);
  EXPECT_NE(error_message([&] { RemoteBackend(crash.url()).generate("a", 1); }).find("CUDA out of memory"),
            std::string::npos);
  MockServer unavailable(answer_on("/v1/embed", 503, "busy"));
  EXPECT_EQ(kind_of([&] { RemoteBackend(unavailable.url()).embed("a"); }), ErrorKind::ServerError);
  // A real 400 from the reference handler: the empty prompt.
  MockServer plain;
  EXPECT_EQ(kind_of([&] { RemoteBackend(plain.url()).generate("", 1); }), ErrorKind::ProtocolError);
  MockServer missing(answer_on("/v1/caption", 404, R"({"error":"no route"})"));
  EXPECT_EQ(kind_of([&] { RemoteBackend(missing.url()).caption(mock_generate("a", 1)); }),
            ErrorKind::ProtocolError);
}

TEST(RemoteBackend, UnreachableAndSlowServers) {
  EXPECT_EQ(kind_of([] { RemoteBackend("http://127.0.0.1:1").embed("a"); }), ErrorKind::BackendError);

  MockServer slow([](const std::string&, const std::string&) -> std::optional<wire::Response> {
    std::this_thread::sleep_for(std::chrono::milliseconds(600));
    return std::nullopt;
  });
  RemoteOptions options;
  options.timeout = std::chrono::milliseconds(100);
  EXPECT_EQ(kind_of([&] { RemoteBackend(slow.url(), options).embed("a"); }), ErrorKind::Timeout);
}

TEST(RemoteBackend, HonoursPathPrefixAndTrace) {
  std::vector<std::string> seen;
  std::mutex mu;
  MockServer server([&](const std::string& path, const std::string& body) -> std::optional<wire::Response> {
    {
      std::lock_guard lock(mu);
      seen.push_back(path);
    }
    const std::string prefix = "/models";
    if (path.rfind(prefix, 0) != 0) return wire::Response{404, R"({"error":"no prefix"})"};
    return wire::handle_mock_request("POST", path.substr(prefix.size()), body);
  });
  std::vector<std::string> trace;
  RemoteOptions options;
  options.trace = [&](std::string_view line) { trace.emplace_back(line); };
  const RemoteBackend remote(server.url() + "/models/", options);
  EXPECT_EQ(remote.embed("Hello").value, mock_embed("Hello"));
  ASSERT_EQ(seen.size(), 1U);
  EXPECT_EQ(seen[0], "/models/v1/embed");
  ASSERT_EQ(trace.size(), 2U);
  EXPECT_EQ(trace[0].rfind("-> POST /models/v1/embed ", 0), 0U);
  EXPECT_EQ(trace[1].rfind("<- 200 ", 0), 0U);
}

TEST(RemoteBackend, ConcurrentCallsAreIndependent) {
  MockServer server;
  const RemoteBackend remote(server.url());
  std::vector<std::future<bool>> workers;
  for (int t = 0; t < 8; ++t) {
    workers.push_back(std::async(std::launch::async, [&remote, t] {
      for (std::uint64_t s = 0; s < 10; ++s) {
        const std::string prompt = "prompt " + std::to_string(t) + " tokens here";
        const auto img = remote.generate(prompt, s).value;
        if (img != mock_generate(prompt, s)) return false;
        if (remote.caption(img).value != mock_caption(img)) return false;
      }
      return true;
    }));
  }
  for (auto& w : workers) EXPECT_TRUE(w.get());
}

json load_fixture() {
  std::ifstream in(std::string(SEMCHAIN_FIXTURE_DIR) + "/mock_vectors.json");
  EXPECT_TRUE(in.good());
  return json::parse(in);
}

TEST(WireParity, FixtureIsCurrent) {
  const auto fixture = load_fixture();
  ASSERT_GE(fixture.size(), 50U);
  EXPECT_EQ(fixture, wire::mock_test_vectors(fixture.size()))
      << "regenerate with: semchain mock-vectors --file tests/fixtures/mock_vectors.json";
}

TEST(WireParity, RemoteClientReproducesFixture) {
  MockServer server;
  const RemoteBackend remote(server.url());
  for (const auto& v : load_fixture()) {
    const auto endpoint = v["endpoint"].get<std::string>();
    const auto& req = v["request"];
    const auto& expected = v["response"];
    if (endpoint == wire::kGeneratePath) {
      const auto img = remote.generate(req["prompt"].get<std::string>(), req["seed"].get<std::uint64_t>());
      EXPECT_EQ(ingest::encode_base64(img.value), expected["image_b64"]);
    } else if (endpoint == wire::kCaptionPath) {
      const auto cap = remote.caption(ingest::decode_base64(req["image_b64"].get<std::string>()));
      EXPECT_EQ(cap.value, expected["text"]);
    } else {
      const auto e = remote.embed(req["text"].get<std::string>());
      const auto want = expected["vector"].get<std::vector<double>>();
      ASSERT_EQ(e.value.dim(), want.size());
      for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(e.value.values()[i], want[i], 1e-12);
    }
  }
}

}  // namespace
