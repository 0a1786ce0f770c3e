#pragma once

// Run configuration: versioned JSON schema, strict validation (unknown keys
// rejected), CLI exit codes and deterministic float formatting.

#include "nats/transport.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nats {

enum class ExitCode : int {
  ok = 0,
  config_error = 2,
  quality_error = 3,
  verification_failure = 4,
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 17 significant digits, locale-independent; identical configs must produce
// byte-identical CSV output.
std::string format_double(double v);

struct CustomModel {
  int d1 = 0, d2 = 0;
  Mat unitary;
  std::vector<ChargePair> charges;
  std::vector<double> affinities;        // base affinities, one per charge
  std::vector<double> affinity_gradient; // dlambda, one per charge
};

struct RunConfig {
  int schema_version = 1;
  std::string model = "bosonic";  // bosonic | qubit-demo | custom-matrices

  // bosonic parameters
  double beta = 1.0;
  std::optional<double> r;    // squeezing parameter; mu = tanh(2r)
  std::optional<double> mu;   // direct squeezing potential (exclusive with r)
  double omega = 1.0;
  double gtau = 0.7853981633974483;  // pi/4
  int fock_dim = 60;
  bool include_q3 = false;
  double dbeta = 1e-3;
  double dmu = 5e-4;
  int collisions = 100;
  double fd_step = 1e-4;
  bool fd_central = false;

  // qubit-demo parameters (partial swap, charges sigma_z / sigma_x)
  double theta = 0.7;
  double lambda2 = 0.4;

  std::vector<double> sweep_beta;
  std::vector<double> sweep_r;

  std::string method = "all";  // ycov | sld | fd | all
  std::string output;

  double tol_leakage = 1e-10;
  double tol_preserve = 1e-8;
  double verify_scale = 1.0;
  unsigned seed = 12345;

  std::optional<CustomModel> custom;

  // Resolved squeezing potential: explicit mu, else tanh(2r), else 0.
  double resolved_mu() const;
  double resolved_r() const;

  static RunConfig from_json_text(const std::string& text);
  static RunConfig from_file(const std::string& path);
};

}  // namespace nats
