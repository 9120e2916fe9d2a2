#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string stdout_text;
};

CliResult run_cli(const std::string& args) {
  const char* bin = std::getenv("SELFNORM_CLI");
  REQUIRE_MESSAGE(bin != nullptr, "SELFNORM_CLI must point at the binary");
  const std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
  CliResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (fgets(buf.data(), buf.size(), pipe) != nullptr)
    result.stdout_text += buf.data();
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("bounds eval prints the json value with exit 0") {
  const CliResult r = run_cli("bounds eval --theorem 2.1 --params x=1,y=1");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.stdout_text);
  CHECK(j.at("value").get<double>() == doctest::Approx(0.60653065971263342));
  CHECK(j.at("saturated").get<bool>() == false);
}

TEST_CASE("grid mode emits csv") {
  const CliResult r =
      run_cli("bounds eval --theorem 2.1 --grid x=1:2:lin:3,y=1");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("x,y,value,saturated\n") == 0);
  CHECK(std::count(r.stdout_text.begin(), r.stdout_text.end(), '\n') == 4);
}

TEST_CASE("unknown flags exit 2 with usage text") {
  CHECK(run_cli("bounds eval --no-such-flag").exit_code == 2);
  CHECK(run_cli("nonsense").exit_code == 2);
  CHECK(run_cli("simulate --config /nonexistent/missing.json").exit_code == 2);
}

TEST_CASE("selftest runs the trivial example table") {
  const CliResult r = run_cli("selftest");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("\"pass\"") != std::string::npos);
}

TEST_CASE("lil constants bundle") {
  const CliResult r = run_cli("lil constants --lambda 1");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.stdout_text);
  CHECK(j.at("h").get<double>() == doctest::Approx(2.1462).epsilon(1e-4));
  CHECK(j.at("b_lambda").get<double>() ==
        doctest::Approx(j.at("h").get<double>()).epsilon(1e-12));
  CHECK(j.contains("c_lambda_note"));  // interpretation flag travels with it
}

TEST_CASE("boundary csv has the four columns") {
  const CliResult r =
      run_cli("boundary --measure rs:delta=0.5 --c 10 --v-grid 1e3:1e5:log:3");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("v,beta_exact,beta_asymptotic,psi_residual\n") == 0);
}

TEST_CASE("simulate round-trips configs and honors the seed override") {
  const std::string dir = "/tmp/selfnorm_cli_test";
  std::system(("mkdir -p " + dir).c_str());
  const std::string config_path = dir + "/config.json";
  {
    std::ofstream out(config_path);
    out << R"({"generator":{"family":"rademacher","params":{},"horizon":100},
              "event":{"theorem":"2.1","x":0.3,"y":0.05,"n":100},
              "replications":2000,"master_seed":5})";
  }
  const CliResult dumped =
      run_cli("simulate --config " + config_path + " --dump-config");
  CHECK(dumped.exit_code == 0);
  const json config = json::parse(dumped.stdout_text);
  CHECK(config.at("master_seed").get<int>() == 5);

  const CliResult normal = run_cli("simulate --config " + config_path);
  CHECK(normal.exit_code == 0);
  const json report = json::parse(normal.stdout_text);
  CHECK(report.at("verdict").get<std::string>() == "PASS");
  CHECK(report.contains("config_hash"));

  // SELFNORM_SEED overrides the config seed
  const char* bin = std::getenv("SELFNORM_CLI");
  const std::string cmd = std::string("SELFNORM_SEED=99 ") + bin +
                          " simulate --config " + config_path +
                          " --dump-config 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string text;
  std::array<char, 4096> buf{};
  while (fgets(buf.data(), buf.size(), pipe) != nullptr) text += buf.data();
  pclose(pipe);
  CHECK(json::parse(text).at("master_seed").get<int>() == 99);
}

TEST_CASE("simulate writes jsonl results plus a manifest") {
  const std::string dir = "/tmp/selfnorm_cli_test";
  std::system(("mkdir -p " + dir + " && rm -f " + dir + "/out.jsonl*").c_str());
  const std::string config_path = dir + "/config2.json";
  {
    std::ofstream out(config_path);
    out << R"({"generator":{"family":"rademacher","params":{},"horizon":50},
              "event":{"theorem":"2.7","x":2.5,"n":50},
              "replications":3000,"master_seed":11})";
  }
  const CliResult r = run_cli("simulate --config " + config_path + " --out " +
                              dir + "/out.jsonl");
  CHECK(r.exit_code == 0);
  std::ifstream results(dir + "/out.jsonl");
  std::string line;
  REQUIRE(std::getline(results, line));
  const json report = json::parse(line);
  CHECK(report.at("theorem").get<std::string>() == "2.7");
  std::ifstream manifest(dir + "/out.jsonl.manifest.json");
  REQUIRE(manifest.good());
  json m;
  manifest >> m;
  CHECK(m.at("config_hash").get<std::uint64_t>() ==
        report.at("config_hash").get<std::uint64_t>());
  CHECK(m.contains("tool_version"));
}

TEST_CASE("verify exits by verdict") {
  const std::string dir = "/tmp/selfnorm_cli_test";
  std::system(("mkdir -p " + dir).c_str());
  const std::string spec_path = dir + "/gen.json";
  {
    std::ofstream out(spec_path);
    out << R"({"family":"rademacher","params":{},"horizon":200})";
  }
  const CliResult r = run_cli("verify --spec " + spec_path +
                              " --lambdas 0,0.05 --checkpoints 10,100 "
                              "--reps 3000 --seed 3");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.stdout_text);
  CHECK(j.at("all_pass").get<bool>());
}

TEST_SUITE_END();
