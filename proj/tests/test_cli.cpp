#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(std::vector<std::string> args, const std::string& dir) {
  args.push_back("--out");
  args.push_back(dir);
  std::ostringstream out, err;
  const int code = amoeba::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_dir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("amoeba_cli_test_" + name);
  std::filesystem::remove_all(p);
  return p.string();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("info report") {
  const auto dir = temp_dir("info");
  const auto r = call({"info", "-f", "1 + z1^3 + z2^3 + 10*z1*z2"}, dir);
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["command"] == "info");
  CHECK(j["config"]["poly"] == "1 + z1^3 + z2^3 + 10*z1*z2");
  CHECK_FALSE(j["config"].contains("threads"));
  CHECK_FALSE(j["config"].contains("out"));
  CHECK(j.dump().find("InteriorSupported") != std::string::npos);
  CHECK(slurp(std::filesystem::path(dir) / "info.json") == r.out);
}

TEST_CASE("solid-check of the interior example") {
  const auto dir = temp_dir("solid");
  const auto r = call({"solid-check", "-f", "1 + z1^3 + z2^3 + 80*z1*z2", "--resolution", "256", "--format", "json",
                       "--format", "csv", "--format", "svg"},
                      dir);
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.dump().find("\"solid\":false") != std::string::npos);
  CHECK(std::filesystem::exists(std::filesystem::path(dir) / "solid-check.json"));
  bool csv = false, svg = false;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    csv = csv || e.path().extension() == ".csv";
    svg = svg || e.path().extension() == ".svg";
  }
  CHECK(csv);
  CHECK(svg);
}

TEST_CASE("exit codes") {
  const auto dir = temp_dir("codes");
  CHECK(call({"raster", "-f", "0"}, dir).code == 1);
  CHECK(call({"info", "-f", "1 + z1 +"}, dir).code == 1);
  CHECK(call({"info", "-f", "1 + z1 + z2", "--format", "png"}, dir).code == 1);
  CHECK(call({"nonsense"}, dir).code == 1);
  CHECK(call({"info", "--bogus-flag"}, dir).code == 1);
  // A raster too coarse to place witnesses away from the amoeba.
  CHECK(call({"solid-check", "-f", "1 + z1^3 + z2^3 + 80*z1*z2", "--resolution", "12"}, dir).code == 2);
}

TEST_CASE("help lists every option") {
  std::ostringstream out, err;
  CHECK(amoeba::cli::run({"--help"}, out, err) == 0);
  const std::string help = out.str();
  for (const char* flag : {"--poly", "--dim", "--box", "--resolution", "--fibers", "--quadrature", "--nodes",
                           "--samples", "--seed", "--weights", "--t", "--k", "--x", "--gradient", "--step", "--grid-min",
                           "--grid-max", "--grid-count", "--alpha0", "--alpha1", "--x0", "--v", "--trials",
                           "--spacing", "--estimate", "--frames", "--out", "--format", "--threads", "--config"})
    CHECK_MESSAGE(help.find(flag) != std::string::npos, flag);
  for (const char* cmd : {"info", "subdivision", "spine", "raster", "ronkin", "solid-check", "bound-check",
                          "sweep-convergence", "sweep-solid", "sweep-subdivision", "phi-bound", "threshold"})
    CHECK_MESSAGE(help.find(cmd) != std::string::npos, cmd);
}

TEST_CASE("reports are reproducible across runs and thread counts") {
  const std::vector<std::string> base{"solid-check", "-f", "2 - z1 + 0.5*z2 + z1*z2", "--resolution", "128"};
  auto one = base, four = base;
  one.insert(one.end(), {"--threads", "1"});
  four.insert(four.end(), {"--threads", "4"});
  const auto a = call(one, temp_dir("det_a"));
  const auto b = call(one, temp_dir("det_b"));
  const auto c = call(four, temp_dir("det_c"));
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);

  const std::vector<std::string> mc{"ronkin", "-f", "1 + z1 + z2 + z3", "-n", "3", "--x", "0,0,0;1,-1,0.5",
                                    "--quadrature", "mc", "--samples", "20000", "--seed", "9"};
  auto m1 = mc, m4 = mc;
  m1.insert(m1.end(), {"--threads", "1"});
  m4.insert(m4.end(), {"--threads", "4"});
  const auto p = call(m1, temp_dir("mc_a"));
  const auto q = call(m4, temp_dir("mc_b"));
  REQUIRE(p.code == 0);
  CHECK(p.out == q.out);
}

TEST_CASE("config file") {
  const auto dir = temp_dir("config");
  std::filesystem::create_directories(dir);
  const auto cfg = std::filesystem::path(dir) / "run.ini";
  std::ofstream(cfg) << "poly = \"1 + z1 + z2\"\nnodes = 64\n";
  const auto r = call({"ronkin", "--config", cfg.string(), "--x", "10,0"}, dir);
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["config"]["poly"] == "1 + z1 + z2");
  CHECK(j["config"]["nodes"] == "64");
  CHECK_FALSE(j["config"].contains("config"));
}

TEST_CASE("subdivision with exact weights") {
  const auto dir = temp_dir("subdiv");
  const auto r = call({"subdivision", "-f", "1 + z1^3 + z2^3 + z1*z2", "--weights", "(0,0):0;(3,0):0;(0,3):0;(1,1):-1"},
                      dir);
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["result"]["subdivision"]["cells"].size() == 3);

  const auto pos = call({"subdivision", "-f", "1 + z1^3 + z2^3 + z1*z2", "--weights", "0,0,1/3,0"}, dir);
  REQUIRE(pos.code == 0);
  CHECK(nlohmann::json::parse(pos.out)["result"]["subdivision"]["cells"].size() == 1);
  CHECK(call({"subdivision", "-f", "1 + z1 + z2", "--weights", "0,1"}, dir).code == 1);
}

TEST_CASE("threshold command") {
  const auto dir = temp_dir("threshold");
  const auto r = call({"threshold", "-f", "1 + z1", "-n", "1", "--weights", "0,0", "--x0", "-2", "--v", "1",
                       "--alpha1", "1", "--t", "0.1"},
                      dir);
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["result"]["s0"].get<double>() == doctest::Approx(2.0));
}
