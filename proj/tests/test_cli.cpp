#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rcvf/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = rcvf::run(args, out, err);
  return {code, out.str()};
}

std::string golden(const std::string& name) { return std::string(RCVF_GOLDEN_DIR) + "/" + name; }

// Every key of `want` is present in `got` with a matching value.
bool contains(const json& got, const json& want) {
  if (want.is_object()) {
    if (!got.is_object()) return false;
    for (auto it = want.begin(); it != want.end(); ++it)
      if (!got.contains(it.key()) || !contains(got.at(it.key()), it.value())) return false;
    return true;
  }
  return got == want;
}

}  // namespace

TEST_CASE("golden corpus: exit codes and outputs") {
  std::ifstream in(golden("cases.json"));
  REQUIRE(in);
  json cases = json::parse(in);
  REQUIRE(cases.size() >= 40);
  for (const auto& c : cases) {
    std::vector<std::string> args;
    for (const auto& a : c.at("args")) {
      std::string s = a.get<std::string>();
      if (auto pos = s.find("@G@"); pos != std::string::npos) s.replace(pos, 3, RCVF_GOLDEN_DIR);
      args.push_back(s);
    }
    CAPTURE(c.at("args").dump());
    Run r = call(args);
    CAPTURE(r.out);
    CHECK(r.code == c.at("exit").get<int>());
    if (c.contains("stdout")) {
      json got = json::parse(r.out);
      CHECK(contains(got, c.at("stdout")));
    }
  }
}

TEST_CASE("found certificates verify from file") {
  const auto path = std::filesystem::temp_directory_path() / "rcvf_test_cli_cert.json";
  for (const char* p : {"1 - eps*x^2", "x^2 + 2*x*y + 2*y^2", "1 + eps*x^2 + eps^3*y^4"}) {
    CAPTURE(p);
    Run found = call({"cert", "find", "--p", p, "--seed", "5"});
    REQUIRE(found.code == 0);
    std::ofstream(path) << found.out;
    Run checked = call({"cert", "verify", path.string()});
    CHECK(checked.code == 0);
  }
  std::filesystem::remove(path);
}

TEST_CASE("randomized commands are reproducible") {
  std::vector<std::vector<std::string>> commands{
      {"psd", "--p", "eps - x^2", "--falsify", "--seed", "7"},
      {"psd", "--p", "x^2 - y^2 + eps*x*y", "--falsify", "--seed", "11", "--samples", "300"},
      {"psd", "--p", "x^2*y^2 + 1/4 - x*y", "--probe41", "--seed", "3", "--samples", "100"},
      {"integral", "--h", "(x+eps)/x", "--seed", "7"},
      {"integral", "--h", "1/(1 + x^2 + y^2)", "--seed", "9", "--samples", "200"},
      {"cert", "find", "--p", "2 - eps*x*y", "--seed", "13"},
  };
  for (const auto& c : commands) {
    Run a = call(c), b = call(c);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("pretty output") {
  Run r = call({"eval", "--expr", "x + 1", "--pretty"});
  CHECK(r.code == 0);
  CHECK(r.out == "kind: polynomial\nvalue: 1 + x\n");
}
