#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "eisenfact/cli.hpp"

using namespace eisenfact;

namespace {

struct Captured {
  int exit_code;
  std::string out;
};

Captured run(std::vector<std::string> args) {
  std::ostringstream buf;
  std::streambuf* old = std::cout.rdbuf(buf.rdbuf());
  int rc = run_cli(args);
  std::cout.rdbuf(old);
  return {rc, buf.str()};
}

}  // namespace

TEST_CASE("expand matches the documented format") {
  auto r = run({"expand", "E1m3", "--depth", "5"});
  CHECK(r.exit_code == 0);
  CHECK(r.out == "1/6, q:1, q^2:0, q^3:1, q^4:1\n");
  auto f = run({"expand", "f(2,0)", "--depth", "2"});
  CHECK(f.out == "1, q^{1/2}:4i, q:4, q^{3/2}:0\n");
  auto bad = run({"expand", "E2[(1*t+1)/5]", "--depth", "4"});
  CHECK(bad.exit_code == 2);
}

TEST_CASE("verify exit codes") {
  CHECK(run({"verify", "E4^3 - E6^2 - 1728*eta^24", "--level", "1",
             "--weight", "12"})
            .exit_code == 0);
  CHECK(run({"verify", "E4^3 - E6^2 - 1729*eta^24", "--level", "1",
             "--weight", "12"})
            .exit_code == 1);
  CHECK(run({"verify", "E4^^2"}).exit_code == 2);
  auto by_id = run({"verify", "--id", "L3-thm-cube-0", "--catalog",
                    CATALOG_PATH});
  CHECK(by_id.exit_code == 0);
  CHECK(by_id.out.find("PASS") != std::string::npos);
}

TEST_CASE("verify --format json depth respects EISEN_DEPTH and flags") {
  setenv("EISEN_DEPTH", "64", 1);
  auto r = run({"verify", "theta^2 - 4*E1m4", "--level", "8", "--weight", "1",
                "--format", "json"});
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["entries"][0]["depth_used"] == 64.0);
  // Flags beat the environment.
  auto r2 = run({"verify", "theta^2 - 4*E1m4", "--level", "8", "--weight",
                 "1", "--format", "json", "--depth", "72"});
  auto j2 = nlohmann::json::parse(r2.out);
  CHECK(j2["entries"][0]["depth_used"] == 72.0);
  unsetenv("EISEN_DEPTH");
}

TEST_CASE("eval rejects the lower half-plane") {
  CHECK(run({"eval", "E4", "--tau", "0", "-1"}).exit_code == 2);
  auto ok = run({"eval", "theta", "--tau", "0", "0.5"});
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("1.0864348") != std::string::npos);
  auto z = run({"eval", "f(1,0)", "--tau", "0.5", "0.8660254038"});
  CHECK(z.out.find("|value| = ") != std::string::npos);
}

TEST_CASE("catalog command handles missing files") {
  CHECK(run({"catalog", "/nonexistent/nope.cat"}).exit_code == 2);
}

TEST_CASE("transform-check ad hoc") {
  auto ok = run({"transform-check", "--lhs", "G(4,0)[-1/(4*t)]", "--rhs",
                 "G(4,0)", "--multiplier", "-4*t^2"});
  CHECK(ok.exit_code == 0);
  auto bad = run({"transform-check", "--lhs", "G(4,0)[-1/(4*t)]", "--rhs",
                  "G(4,0)", "--multiplier", "4*t^2"});
  CHECK(bad.exit_code == 1);
}

TEST_CASE("cache changes timing only") {
  std::string dir = "/tmp/eisenfact_cli_cache";
  std::string cmd_out1, cmd_out2;
  auto strip_ms = [](const std::string& json_text) {
    auto j = nlohmann::json::parse(json_text);
    for (auto& e : j["entries"]) e.erase("ms");
    return j.dump();
  };
  auto a = run({"verify", "E22^4 - E24^2 - 256*eta2^8", "--level", "8",
                "--weight", "8", "--format", "json", "--cache", dir});
  auto b = run({"verify", "E22^4 - E24^2 - 256*eta2^8", "--level", "8",
                "--weight", "8", "--format", "json", "--cache", dir});
  auto c = run({"verify", "E22^4 - E24^2 - 256*eta2^8", "--level", "8",
                "--weight", "8", "--format", "json"});
  CHECK(a.exit_code == 0);
  CHECK(strip_ms(a.out) == strip_ms(b.out));
  CHECK(strip_ms(a.out) == strip_ms(c.out));
}

TEST_CASE("expand json output") {
  auto r = run({"expand", "eta", "--depth", "2", "--format", "json"});
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["denom"] == 24);
  REQUIRE(j["terms"].is_array());
  CHECK(j["terms"][0]["exponent"] == "1/24");
  CHECK(j["terms"][0]["coefficient"] == "1");
  CHECK(j["terms"][0]["approx_re"] == 1.0);
}
