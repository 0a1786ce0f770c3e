#pragma once

// Collision map between two GGE reservoirs with charge-preserving unitaries:
// exact currents and entropy production, Onsager matrices by three methods
// (y-covariance, SLD, finite differences), the classical/quantum entropy
// split, current-basis transformations and Onsager-Casimir checks.

#include "nats/gge.hpp"
#include "nats/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nats {

// One transported charge: the operator on subsystem 1 and its partner on
// subsystem 2 (often the same matrix, but they may differ).
struct ChargePair {
  std::string label;
  Mat first;
  Mat second;
};

struct CollisionSetup {
  int d1 = 0, d2 = 0;
  std::vector<ChargePair> charges;
  BlockDiagonalUnitary unitary;
  // If non-empty, charge preservation is checked on this index subset (e.g.
  // the total-excitation sector of a truncated bosonic space where the
  // commutators are exact).
  std::vector<int> check_projection;
  double preserve_tol = 1e-8;

  int joint_dim() const { return d1 * d2; }
  Mat joint_charge(size_t k) const;      // Q_k^(1) (x) I
  Mat total_charge(size_t k) const;      // Q_k^(1) (x) I + I (x) Q_k^(2)
};

struct PreservationReport {
  std::vector<double> residuals;   // ||[U, Q_k^tot]||_max, projected if configured
  std::vector<double> scales;      // ||Q_k^tot||_max
  double worst_relative = 0.0;
  double unitarity = 0.0;          // ||U^dag U - I||_max
  bool valid = false;
};

PreservationReport check_charge_preservation(const CollisionSetup& setup);

// GGE of one side of the setup at the given affinities.
GGEState side_gge(const CollisionSetup& setup, int side, const std::vector<double>& lambda);

struct CollisionResult {
  Mat final_state;                // U (pi1 (x) pi2) U^dag
  std::vector<double> currents;   // J_k on subsystem 1
  double sigma = 0.0;             // sum_k dlambda_k J_k
};

// Full collision, including the final joint state.
CollisionResult collide(const CollisionSetup& setup, const std::vector<double>& lambda1,
                        const std::vector<double>& lambda2);

// Currents and sigma only (no joint final state is formed).
struct CurrentsResult {
  std::vector<double> currents;
  std::vector<double> currents_side2;  // computed independently on subsystem 2
  double sigma = 0.0;
};
CurrentsResult collide_currents(const CollisionSetup& setup, const std::vector<double>& lambda1,
                                const std::vector<double>& lambda2);

struct InformationalSigma {
  double sigma_info = 0.0;   // I(rho'_12) + S(rho'_1||pi_1) + S(rho'_2||pi_2)
  double sigma_exact = 0.0;  // fluxes-times-forces value
  double mutual_information = 0.0;
  double delta_s1 = 0.0, delta_s2 = 0.0;
  double rel_entropy_1 = 0.0, rel_entropy_2 = 0.0;
};
InformationalSigma entropy_informational(const CollisionSetup& setup,
                                         const std::vector<double>& lambda1,
                                         const std::vector<double>& lambda2);

// cov_y(A,B) = tr(A pi^y B pi^(1-y)) - tr(A pi) tr(B pi) at fixed y.
double y_covariance(const Mat& a, const Mat& b, const GGEState& pi, double y);

// int_0^1 cov_y(A,B) dy evaluated exactly with logarithmic means in the
// eigenbasis of pi.
double y_covariance_integral(const Mat& a, const Mat& b, const GGEState& pi);

struct EntropySplit {
  double sigma = 0.0;      // (1/2) int cov_y(D,D) dy
  double classical = 0.0;  // (1/2) var(D)
  double quantum = 0.0;    // (1/2) int I_y(pi,D) dy
  bool reduction_defined = false;
  double relative_reduction = 0.0;  // R = quantum / sigma
};

struct OnsagerReport {
  RMat L;        // reported matrix (symmetrized integrand for ycov)
  RMat L_raw;    // unsymmetrized response form, the actual linear-response slopes
  std::string method;
  double symmetry_residual = 0.0;  // max |L_raw - L_raw^T|
  double min_eigenvalue = 0.0;     // of (L + L^T)/2
  EntropySplit entropy;            // at the all-ones affinity gradient
};

// Theorem-I evaluation: L_kl = (1/2) int cov_y(Qt_k - Q_k, Qt_l - Q_l) dy at
// the common-affinity product GGE, via logarithmic means. L_raw carries the
// one-sided form int cov_y(Q_k - Qt_k, Q_l) dy whose symmetry is the actual
// reciprocity statement.
OnsagerReport onsager_ycov(const CollisionSetup& setup, const std::vector<double>& lambda);

// Response slopes from exact collisions at delta-lambda = step * e_l.
OnsagerReport onsager_finite_difference(const CollisionSetup& setup,
                                        const std::vector<double>& lambda, double step,
                                        bool central = false);

// Symmetric logarithmic derivative of the GGE along affinity `index`, from the
// exact eigenbasis solve of (1/2)(Lambda pi + pi Lambda) = d pi / d lambda_i.
Mat sld(const std::vector<Mat>& charges, const std::vector<double>& lambda, size_t index);

// Nested-commutator series form (Bernoulli coefficients); valid only while the
// spectral spread of sum_k lambda_k Q_k stays inside the series' convergence
// region. Throws otherwise.
Mat sld_series(const std::vector<Mat>& charges, const std::vector<double>& lambda, size_t index,
               int terms = 60);

// SLD route: L_ki = (1/2) < { xi(Q_k) - Q_k , Lambda_i } >_pi1 with
// xi(Q_k) = Tr_2[ Qt_k (I (x) pi2) ].
OnsagerReport onsager_sld(const CollisionSetup& setup, const std::vector<double>& lambda);

// Classical/quantum split of the entropy production for gradient dlambda.
EntropySplit entropy_split(const CollisionSetup& setup, const std::vector<double>& lambda,
                           const std::vector<double>& dlambda);

// L' = A L A^T for transformed currents J' = A J.
RMat transform_onsager(const RMat& L, const RMat& a);

struct TimeReversalSpec {
  Mat conjugation_basis;   // unitary B; the antiunitary acts as B conj(.) B^dag
  CollisionSetup starred;  // time-reversed setup (U_*, Q_k^*)
};

struct CasimirReport {
  RMat L;            // raw response matrix of the setup
  RMat L_starred;    // raw response matrix of the starred setup
  double residual = 0.0;           // max |L_lk - L*_kl|
  double symmetry_residual = 0.0;  // max |L_kl - L_lk| of the plain setup
};

CasimirReport onsager_casimir_check(const CollisionSetup& setup, const TimeReversalSpec& starred,
                                    const std::vector<double>& lambda);

// All three Onsager evaluations plus entropy splits for a list of gradients,
// sharing one set of conjugations and basis transforms (the dominant cost at
// large dimension).
struct OnsagerBatch {
  OnsagerReport ycov, sld, fd;
  std::vector<EntropySplit> splits;
  PreservationReport preservation;
};
OnsagerBatch onsager_batch(const CollisionSetup& setup, const std::vector<double>& lambda,
                           double fd_step = 1e-4, bool fd_central = false,
                           const std::vector<std::vector<double>>& gradients = {});

// Coefficients f_{2n} = 4 (4^{n+1} - 1) B_{2n+2} / (2n+2)! of the SLD series,
// computed through the zeta-function form of the Bernoulli numbers (stable for
// all n).
double sld_series_coefficient(int n);

// Partial sum sum_{n=1}^{terms} f_{2n} (2 alpha)^{2n}; converges to
// tanh(alpha)/alpha - 1 for |alpha| < pi/2.
double sld_series_tanh_sum(double alpha, int terms);

}  // namespace nats
