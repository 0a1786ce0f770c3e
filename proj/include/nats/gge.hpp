#pragma once

// Generalized Gibbs ensembles: rho = exp(-sum_k lambda_k Q_k)/Z with cached
// spectrum, affinities and log-partition.

#include "nats/linalg.hpp"

#include <string>
#include <vector>

namespace nats {

struct HermitianObservable {
  std::string label;
  int subsystem = 1;  // 1, 2, or 0 for joint
  Mat matrix;
};

struct GGEState {
  Mat density;
  EigenDecomposition eig;       // of the density; populations ascending
  std::vector<double> affinities;
  double log_partition = 0.0;   // ln Z

  Vec populations() const { return eig.eigenvalues; }
};

// Build exp(-sum lambda_k Q_k)/Z. Spectrally shifted before exponentiation so
// large affinities cannot overflow.
GGEState build_gge(const std::vector<Mat>& charges, const std::vector<double>& lambda);

// tr(rho O). Throws if the imaginary residue exceeds tolerance (non-Hermitian
// input).
double expectation(const Mat& rho, const Mat& obs, double imag_tol = 1e-9);
double expectation(const GGEState& state, const Mat& obs, double imag_tol = 1e-9);

// Von Neumann entropy from a density matrix (natural log, clamped spectrum).
double von_neumann_entropy(const Mat& rho);

// S(rho || sigma) = tr(rho ln rho) - tr(rho ln sigma), clamped spectrum.
double relative_entropy(const Mat& rho, const Mat& sigma);

// Squeezed-thermal parameter bundle for the bosonic example:
//   mu = tanh(2r), lambda = (beta, -beta mu),
//   alpha = beta omega sqrt(1 - mu^2), nbar = 1/(e^alpha - 1).
struct SqueezedThermalParams {
  double beta, r, omega;
  double mu, alpha, nbar;
  std::vector<double> affinities;  // (beta, -beta*mu)
};

SqueezedThermalParams squeezed_thermal_affinities(double beta, double r, double omega);

}  // namespace nats
