// nats - non-Abelian transport suite command line
//
// Subcommands: onsager, sweep, coeffs, simulate, verify. Configuration comes
// from a JSON file (see docs/config-schema.json); a few common fields can be
// overridden with flags. CSV goes to --out / config "output", or stdout.

#include <CLI11.hpp>

#include "nats/config.hpp"
#include "nats/runner.hpp"

#include <fstream>
#include <iostream>

namespace {

int run(const std::string& command, const nats::RunConfig& cfg, const std::string& out_path) {
  nats::CommandResult result;
  if (command == "onsager") result = nats::cmd_onsager(cfg);
  else if (command == "sweep") result = nats::cmd_sweep(cfg);
  else if (command == "coeffs") result = nats::cmd_coeffs(cfg);
  else if (command == "simulate") result = nats::cmd_simulate(cfg);
  else result = nats::cmd_verify(cfg);

  std::cout << result.console;
  if (!result.csv.empty()) {
    const std::string& path = !out_path.empty() ? out_path : cfg.output;
    if (path.empty()) {
      std::cout << result.csv;
    } else {
      std::ofstream os(path, std::ios::binary);
      if (!os) {
        std::cerr << "cannot write " << path << "\n";
        return static_cast<int>(nats::ExitCode::config_error);
      }
      os << result.csv;
      std::cout << "wrote " << path << "\n";
    }
  }
  return static_cast<int>(result.code);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"non-Abelian transport between generalized-Gibbs reservoirs"};
  app.require_subcommand(1);

  std::string config_path, out_path, method;
  int fock_dim = -1;
  long long seed = -1;

  for (const char* name : {"onsager", "sweep", "coeffs", "simulate", "verify"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON configuration file");
    sub->add_option("--out", out_path, "CSV output path (overrides config)");
    sub->add_option("--method", method, "ycov|sld|fd|all (overrides config)");
    sub->add_option("--fock-dim", fock_dim, "Fock truncation dimension (overrides config)");
    sub->add_option("--seed", seed, "seed for randomized property checks");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(nats::ExitCode::config_error);
  }

  try {
    nats::RunConfig cfg =
        config_path.empty() ? nats::RunConfig{} : nats::RunConfig::from_file(config_path);
    if (!method.empty()) {
      if (method != "ycov" && method != "sld" && method != "fd" && method != "all")
        throw nats::ConfigError("--method: must be ycov, sld, fd or all");
      cfg.method = method;
    }
    if (fock_dim > 0) cfg.fock_dim = fock_dim;
    if (seed >= 0) cfg.seed = static_cast<unsigned>(seed);
    return run(app.get_subcommands().front()->get_name(), cfg, out_path);
  } catch (const nats::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return static_cast<int>(nats::ExitCode::config_error);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(nats::ExitCode::quality_error);
  }
}
