#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "eisen/errors.hpp"
#include "eisen_verify/sampler.hpp"
#include "output.hpp"

using namespace eisen;
using namespace eisen::cli;

namespace {

const char* kMinimal = R"({"group": {"level": 1},
  "evaluate": {"requests": [{"m": 0, "n": 0, "cusp": "inf", "z": [0, 1], "s": 2}]}})";

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) n += (c == '\n');
  return n;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string scratch(const std::string& name) { return std::string(EISEN_TEST_SCRATCH) + "/" + name; }

void write(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

// Exit status of the command-line tool with the given arguments.
int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + EISEN_CLI_PATH + "\" " + args + " 2>" + scratch("stderr.txt");
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("config resolution fills defaults") {
  const RunConfig cfg = load_config(kMinimal, Command::Evaluate, {});
  REQUIRE(cfg.requests.size() == 1);
  CHECK(cfg.requests[0].s == cplx(2.0, 0.0));
  CHECK(cfg.resolved["truncation"]["c_max"] == 1000.0);
  CHECK(cfg.resolved["character"]["kind"] == "trivial");
  CHECK(cfg.tail_target == 1e-8);
  Overrides o;
  o.tail_target = 1e-6;
  CHECK(load_config(kMinimal, Command::Evaluate, o).resolved["truncation"]["tail_target"] == 1e-6);
}

TEST_CASE("config hash is stable and sensitive") {
  const RunConfig a = load_config(kMinimal, Command::Evaluate, {});
  const RunConfig b = load_config(kMinimal, Command::Evaluate, {});
  const std::string h = config_hash(a.resolved);
  CHECK(h.size() == 16);
  CHECK(h == config_hash(b.resolved));
  Overrides o;
  o.tail_target = 1e-6;
  CHECK(h != config_hash(load_config(kMinimal, Command::Evaluate, o).resolved));
  // 64-bit FNV-1a of the compact dump {"a":1}.
  CHECK(config_hash(Json{{"a", 1}}) == "9c3e82dd6fcae8b1");
}

TEST_CASE("config errors are reported before computing") {
  CHECK_THROWS_AS(load_config("{", Command::Evaluate, {}), ConfigError);
  CHECK_THROWS_AS(load_config("[]", Command::Evaluate, {}), ConfigError);
  CHECK_THROWS_AS(load_config(R"({"evaluate": {"requests": []}})", Command::Evaluate, {}), ConfigError);
  CHECK_THROWS_AS(load_config(R"({"group": {"level": 1}})", Command::Evaluate, {}), ConfigError);
  CHECK_THROWS_AS(load_config(R"({"group": {"level": 1}, "evaluate": {"requests": [{"z": [0, -1], "s": 2}]}})",
                              Command::Evaluate, {}),
                  ConfigError);
  CHECK_THROWS_AS(load_config(R"({"group": {"level": 11}, "character": {"kind": "odd"},
                                 "evaluate": {"requests": [{"z": [0, 1], "s": 2}]}})",
                              Command::Evaluate, {}),
                  ConfigError);
  CHECK_THROWS_AS(load_config(R"({"group": {"level": 11},
                                 "evaluate": {"requests": [{"cusp": "1/3", "z": [0, 1], "s": 2}]}})",
                              Command::Evaluate, {}),
                  std::exception);
  CHECK_THROWS_AS(load_config(R"({"group": {"level": 1}, "fourier": {"s": 2.5, "k_min": 3, "k_max": 1}})",
                              Command::Fourier, {}),
                  ConfigError);
}

TEST_CASE("verify config only carries the seed") {
  Overrides o;
  o.seed = 7;
  const RunConfig cfg = load_config("{}", Command::Verify, o);
  CHECK(cfg.seed == 7);
  CHECK(cfg.resolved["seed"] == 7);
  CHECK(cfg.resolved["tail_target"].is_null());
}

TEST_CASE("fourier rendering has one row per k plus the constant row") {
  const RunConfig cfg = load_config(R"({"group": {"level": 1}, "fourier": {"s": 2.5}})", Command::Fourier, {});
  FourierLine line;
  line.s = 2.5;
  for (std::int64_t k = -5; k <= 5; ++k)
    if (k != 0) line.coefficients[k] = {cplx(double(k), 0.0), 1e-9};
  const std::string csv = render_fourier(cfg, line, std::nullopt, Format::Csv);
  CHECK(count_lines(csv) == 2 + 11 + 1);
  CHECK(csv.find("m,n,a,b,k,re_s,im_s,re_phi,im_phi,tail_estimate\n") != std::string::npos);
  const std::string with_residual = render_fourier(cfg, line, 1e-10, Format::Csv);
  CHECK(with_residual.find("tail_estimate,residual\n") != std::string::npos);
  const Json json = Json::parse(render_fourier(cfg, line, std::nullopt, Format::Json));
  CHECK(json["line"]["coefficients"].size() == 10);
  CHECK(json["config_hash"] == config_hash(cfg.resolved));
}

TEST_CASE("sampler is deterministic and stays in the group") {
  verify::Sampler a(verify::stream_seed(0, 1)), b(verify::stream_seed(0, 1)), c(verify::stream_seed(1, 1));
  bool differs = false;
  for (int k = 0; k < 100; ++k) {
    const double x = a.uniform(0.0, 1.0);
    CHECK(x == b.uniform(0.0, 1.0));
    differs = differs || x != c.uniform(0.0, 1.0);
  }
  CHECK(differs);
  const Gamma0 group(11);
  for (int k = 0; k < 200; ++k) {
    const GroupElement g = a.group_element(11, 50);
    CHECK(group.contains(g));
    CHECK(std::abs(g.a()) <= 50);
    CHECK(std::abs(g.b()) <= 50);
    CHECK(std::abs(g.c()) <= 50);
    CHECK(std::abs(g.d()) <= 50);
  }
}

TEST_CASE("command-line exit codes") {
  write(scratch("minimal.json"), kMinimal);
  CHECK(run_cli("evaluate --config " + scratch("minimal.json") + " --out " + scratch("minimal.out")) == 0);
  const Json out = Json::parse(slurp(scratch("minimal.out")));
  CHECK(out["records"].size() == 1);

  write(scratch("edge.json"), R"({"group": {"level": 1},
    "evaluate": {"requests": [{"z": [0, 1], "s": [1, 0]}]}})");
  CHECK(run_cli("evaluate --config " + scratch("edge.json")) == 2);
  CHECK(slurp(scratch("stderr.txt")).find("\"domain\"") != std::string::npos);

  CHECK(run_cli("verify nonsense") == 2);
  CHECK(run_cli("evaluate") == 2);
  CHECK(run_cli("evaluate --config " + scratch("missing.json")) == 2);
  CHECK(run_cli("verify heights --format xml") == 2);
  CHECK(run_cli("") == 2);
}

TEST_CASE("evaluate grid is reproducible") {
  std::string points, values;
  for (int i = 0; i < 10; ++i) points += std::string(i ? "," : "") + "[" + std::to_string(-0.45 + 0.1 * i) + ", 1.1]";
  for (int i = 0; i < 10; ++i) values += std::string(i ? "," : "") + "[" + std::to_string(2.0 + 0.1 * i) + ", 0.5]";
  write(scratch("grid.json"), R"({"group": {"level": 1}, "truncation": {"c_max": 200},
    "evaluate": {"grid": {"points": [)" + points + "], \"s\": [" + values + "]}}}");
  REQUIRE(run_cli("evaluate --config " + scratch("grid.json") + " --out " + scratch("grid1.out")) == 0);
  REQUIRE(run_cli("evaluate --config " + scratch("grid.json") + " --threads 2 --out " + scratch("grid2.out")) == 0);
  const std::string first = slurp(scratch("grid1.out"));
  CHECK(Json::parse(first)["records"].size() == 100);
  CHECK(first == slurp(scratch("grid2.out")));
}

TEST_CASE("fourier export is reproducible and appends the residual column") {
  write(scratch("fourier.json"), R"({"group": {"level": 1}, "truncation": {"c_max": 300},
    "fourier": {"s": 2.5, "k_min": -5, "k_max": 5, "verify_expansion": true}})");
  REQUIRE(run_cli("fourier --format csv --config " + scratch("fourier.json") + " --out " + scratch("f1.csv")) == 0);
  REQUIRE(run_cli("fourier --format csv --config " + scratch("fourier.json") + " --out " + scratch("f2.csv")) == 0);
  const std::string csv = slurp(scratch("f1.csv"));
  CHECK(count_lines(csv) == 2 + 11 + 1);
  CHECK(csv.find(",residual\n") != std::string::npos);
  CHECK(csv == slurp(scratch("f2.csv")));
}

TEST_CASE("environment overrides sit between config and flags") {
  write(scratch("minimal.json"), kMinimal);
  const std::string cfg = " --config " + scratch("minimal.json");
  REQUIRE(run_cli("evaluate" + cfg + " --out " + scratch("env0.out")) == 0);
  REQUIRE(std::system(("EISEN_TAIL_TARGET=1e-5 \"" + std::string(EISEN_CLI_PATH) + "\" evaluate" + cfg + " --out " +
                       scratch("env1.out"))
                          .c_str()) == 0);
  REQUIRE(std::system(("EISEN_TAIL_TARGET=1e-5 \"" + std::string(EISEN_CLI_PATH) + "\" evaluate" + cfg +
                       " --tail-target 1e-4 --out " + scratch("env2.out"))
                          .c_str()) == 0);
  CHECK(Json::parse(slurp(scratch("env0.out")))["config"]["truncation"]["tail_target"] == 1e-8);
  CHECK(Json::parse(slurp(scratch("env1.out")))["config"]["truncation"]["tail_target"] == 1e-5);
  CHECK(Json::parse(slurp(scratch("env2.out")))["config"]["truncation"]["tail_target"] == 1e-4);
  CHECK(std::system(("EISEN_THREADS=lots \"" + std::string(EISEN_CLI_PATH) + "\" evaluate" + cfg + " 2>/dev/null >/dev/null").c_str()) != 0);
}
