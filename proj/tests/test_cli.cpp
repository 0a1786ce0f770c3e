#include "nats/config.hpp"
#include "nats/runner.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using namespace nats;

namespace {

struct RunOutput {
  int code = -1;
  std::string stdout_text;
};

RunOutput run_cli(const std::string& args) {
  const std::string out = std::string(std::tmpnam(nullptr)) + ".out";
  const std::string cmd = std::string(NATS_CLI_PATH) + " " + args + " > " + out + " 2>&1";
  const int rc = std::system(cmd.c_str());
  RunOutput result;
  result.code = WEXITSTATUS(rc);
  std::ifstream in(out);
  std::ostringstream ss;
  ss << in.rdbuf();
  result.stdout_text = ss.str();
  std::remove(out.c_str());
  return result;
}

std::string write_config(const std::string& text) {
  static int counter = 0;
  const std::string path = "/tmp/nats_test_cfg_" + std::to_string(counter++) + ".json";
  std::ofstream os(path);
  os << text;
  return path;
}

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("valid config") {
    RunConfig cfg = RunConfig::from_json_text(
        R"({"schema_version":1,"model":"bosonic","parameters":{"beta":1.5,"r":0.4},"method":"ycov"})");
    CHECK(cfg.beta == 1.5);
    CHECK(cfg.resolved_mu() == doctest::Approx(std::tanh(0.8)));
    CHECK(cfg.method == "ycov");
  }
  SUBCASE("unknown top-level key is rejected") {
    CHECK_THROWS_AS(RunConfig::from_json_text(R"({"schema_version":1,"modle":"bosonic"})"),
                    ConfigError);
  }
  SUBCASE("unknown nested key is rejected") {
    CHECK_THROWS_AS(
        RunConfig::from_json_text(R"({"schema_version":1,"parameters":{"betta":1.0}})"),
        ConfigError);
  }
  SUBCASE("missing schema version is rejected") {
    CHECK_THROWS_AS(RunConfig::from_json_text(R"({"model":"bosonic"})"), ConfigError);
  }
  SUBCASE("wrong schema version is rejected") {
    CHECK_THROWS_AS(RunConfig::from_json_text(R"({"schema_version":2})"), ConfigError);
  }
  SUBCASE("r and mu are mutually exclusive") {
    CHECK_THROWS_AS(
        RunConfig::from_json_text(R"({"schema_version":1,"parameters":{"r":0.5,"mu":0.2}})"),
        ConfigError);
  }
  SUBCASE("invalid JSON is rejected") {
    CHECK_THROWS_AS(RunConfig::from_json_text("{"), ConfigError);
  }
}

TEST_CASE("sweep output is deterministic") {
  RunConfig cfg;
  cfg.sweep_beta = {0.5, 1.0, 2.0};
  cfg.sweep_r = {0.0, 0.5, 1.0};
  CommandResult a = cmd_sweep(cfg);
  CommandResult b = cmd_sweep(cfg);
  CHECK(a.code == ExitCode::ok);
  CHECK(a.csv == b.csv);
  CHECK(a.csv.find("beta,r,mu,alpha,L11") != std::string::npos);
}

TEST_CASE("onsager quality gate refuses unrepresentable points") {
  RunConfig cfg;
  cfg.beta = 0.5;
  cfg.r = 1.5;
  cfg.fock_dim = 60;
  CommandResult res = cmd_onsager(cfg);
  CHECK(res.code == ExitCode::quality_error);
  CHECK(res.console.find("leakage") != std::string::npos);
}

TEST_CASE("onsager on a clean point reports methods and closed form") {
  RunConfig cfg;
  cfg.beta = 2.0;
  cfg.r = 0.25;
  cfg.fock_dim = 28;
  cfg.method = "all";
  CommandResult res = cmd_onsager(cfg);
  CHECK(res.code == ExitCode::ok);
  CHECK(res.csv.find("ycov") != std::string::npos);
  CHECK(res.csv.find("sld") != std::string::npos);
  CHECK(res.csv.find("closed-form") != std::string::npos);
  CHECK(res.console.find("cross-method max discrepancy") != std::string::npos);
}

TEST_CASE("simulate zero gradient produces a zero trajectory") {
  RunConfig cfg;
  cfg.beta = 2.0;
  cfg.r = 0.1;
  cfg.fock_dim = 36;
  cfg.collisions = 4;
  cfg.dbeta = 0.0;
  cfg.dmu = 0.0;
  CommandResult res = cmd_simulate(cfg);
  CHECK(res.code == ExitCode::ok);
  // all current columns are exactly zero
  std::istringstream is(res.csv);
  std::string line;
  std::getline(is, line);  // unit comment
  std::getline(is, line);  // column names
  while (std::getline(is, line)) {
    const auto first_comma = line.find(',');
    CHECK(line.substr(first_comma + 1, 2) == "0,");
  }
}

TEST_CASE("verify battery") {
  SUBCASE("qubit demo passes") {
    RunConfig cfg;
    cfg.model = "qubit-demo";
    CommandResult res = cmd_verify(cfg);
    CHECK(res.code == ExitCode::ok);
    CHECK(res.console.find("FAIL") == std::string::npos);
    CHECK(res.console.find("onsager-symmetry") != std::string::npos);
  }
  SUBCASE("bosonic at a clean low-dimension point passes with gated checks") {
    RunConfig cfg;
    cfg.beta = 2.0;
    cfg.r = 0.25;
    cfg.fock_dim = 32;
    CommandResult res = cmd_verify(cfg);
    CHECK(res.code == ExitCode::ok);
    CHECK(res.console.find("bosonic-closed-form") != std::string::npos);
    CHECK(res.console.find("SKIPPED (fock_dim below 48)") != std::string::npos);
    CHECK(res.console.find("FAIL") == std::string::npos);
  }
  SUBCASE("bosonic transport identities pass at 48 levels") {
    RunConfig cfg;
    cfg.beta = 2.0;
    cfg.r = 0.2;
    cfg.fock_dim = 48;
    CommandResult res = cmd_verify(cfg);
    CHECK(res.code == ExitCode::ok);
    CHECK(res.console.find("current-conservation") != std::string::npos);
    CHECK(res.console.find("FAIL") == std::string::npos);
  }
  SUBCASE("non-charge-preserving unitary fails and exits nonzero") {
    RunConfig cfg = RunConfig::from_json_text(R"({
      "schema_version": 1,
      "model": "custom-matrices",
      "custom": {
        "d1": 2, "d2": 2,
        "unitary": {"re": [[0.5403023058681398,0,0,0],[0,0.5403023058681398,0,0],[0,0,0.5403023058681398,0],[0,0,0,0.5403023058681398]],
                     "im": [[0,0,0,-0.8414709848078965],[0,0,-0.8414709848078965,0],[0,-0.8414709848078965,0,0],[-0.8414709848078965,0,0,0]]},
        "charges": [{"label":"Sz","first":{"re":[[1,0],[0,-1]]},"second":{"re":[[1,0],[0,-1]]}}],
        "affinities": [1.0],
        "gradient": [0.05]
      }
    })");
    // exp(-i sigma_x (x) sigma_x) does not commute with total sigma_z
    CommandResult res = cmd_verify(cfg);
    CHECK(res.code == ExitCode::verification_failure);
    CHECK(res.console.find("charge-preservation") != std::string::npos);
    CHECK(res.console.find("FAIL") != std::string::npos);
    CHECK(res.console.find("SKIPPED") != std::string::npos);
  }
  SUBCASE("tightened tolerances report failures without crashing") {
    RunConfig cfg;
    cfg.model = "qubit-demo";
    cfg.verify_scale = 1e-9;
    CommandResult res = cmd_verify(cfg);
    CHECK(res.code == ExitCode::verification_failure);
    CHECK(res.console.find("FAIL") != std::string::npos);
  }
}

TEST_CASE("CLI binary end to end") {
  SUBCASE("exit code 2 on a malformed config") {
    const std::string path = write_config(R"({"schema_version":1,"bogus":true})");
    RunOutput out = run_cli("verify --config " + path);
    CHECK(out.code == 2);
    CHECK(out.stdout_text.find("unknown key") != std::string::npos);
  }
  SUBCASE("exit code 2 on a bad method flag") {
    RunOutput out = run_cli("onsager --method nonsense");
    CHECK(out.code == 2);
  }
  SUBCASE("byte-identical sweep reruns") {
    const std::string path = write_config(
        R"({"schema_version":1,"sweep":{"beta":[0.5,1.0,2.0],"r":[0.0,0.5,1.0,1.5]}})");
    RunOutput a = run_cli("sweep --config " + path);
    RunOutput b = run_cli("sweep --config " + path);
    CHECK(a.code == 0);
    CHECK(a.stdout_text == b.stdout_text);
  }
  SUBCASE("quality gate exit code") {
    const std::string path = write_config(
        R"({"schema_version":1,"parameters":{"beta":0.5,"r":1.5,"fock_dim":60}})");
    RunOutput out = run_cli("onsager --config " + path);
    CHECK(out.code == 3);
  }
  SUBCASE("verify passes on the qubit demo") {
    const std::string path = write_config(R"({"schema_version":1,"model":"qubit-demo"})");
    RunOutput out = run_cli("verify --config " + path);
    CHECK(out.code == 0);
  }
}
