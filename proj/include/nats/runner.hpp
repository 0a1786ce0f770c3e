#pragma once

// Command implementations behind the CLI: each returns an exit code, CSV
// payload and console summary so they can be exercised directly in tests.

#include "nats/config.hpp"
#include "nats/transport.hpp"

#include <string>
#include <vector>

namespace nats {

struct CommandResult {
  ExitCode code = ExitCode::ok;
  std::string csv;
  std::string console;
};

// Collision setup for the configured model (bosonic, qubit-demo or
// custom-matrices).
CollisionSetup make_model_setup(const RunConfig& cfg);

// Base affinities of the configured model.
std::vector<double> model_affinities(const RunConfig& cfg);

// Affinity gradient used for finite-gradient diagnostics.
std::vector<double> model_gradient(const RunConfig& cfg);

CommandResult cmd_onsager(const RunConfig& cfg);
CommandResult cmd_sweep(const RunConfig& cfg);
CommandResult cmd_coeffs(const RunConfig& cfg);
CommandResult cmd_simulate(const RunConfig& cfg);
CommandResult cmd_verify(const RunConfig& cfg);

}  // namespace nats
