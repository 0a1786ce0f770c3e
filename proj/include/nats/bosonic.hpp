#pragma once

// Truncated-Fock bosonic reservoirs, beam-splitter collisions, closed-form
// transport coefficients in the energy/squeezing and heat/squeezing bases,
// thermosqueezing figures of merit, engine analysis and the symplectic
// characterization of charge-preserving Gaussian unitaries.

#include "nats/gge.hpp"
#include "nats/linalg.hpp"
#include "nats/transport.hpp"

#include <vector>

namespace nats {

struct FockSpace {
  int d = 0;
  double omega = 1.0;
  Mat a, adag, x, p;
  Mat H;   // omega (p^2 + x^2)/2, diagonal entries omega (n + 1/2)
  Mat A;   // omega (p^2 - x^2)/2 = -omega (a^2 + adag^2)/2
  Mat Q3;  // omega {x,p}/2 = -i omega (a^2 - adag^2)/2
};

FockSpace build_fock(int d, double omega);

// Index groups of constant total excitation n1 + n2 on the joint space.
std::vector<std::vector<int>> excitation_sectors(int d);

// Joint indices with n1 + n2 <= d - 1 (the sector on which the truncated
// beam splitter matches the untruncated one exactly).
std::vector<int> sector_projection(int d);

// U = exp(-g tau (a1^dag a2 - a2^dag a1)), assembled per excitation sector.
BlockDiagonalUnitary beam_splitter(double gtau, const FockSpace& fock);

// Collision setup with charges (H, H) and (A, A), plus (Q3, Q3) on request.
// Charge preservation is checked on the projected sector.
CollisionSetup bosonic_setup(const FockSpace& fock, double gtau, bool include_q3 = false,
                             std::vector<double> extra_affinity = {});

// GGE weight outside the exact sector n1 + n2 <= d - 1 for the product of two
// identical squeezed thermal states; the truncation-quality metric.
double sector_leakage(const FockSpace& fock, double beta, double mu);

// Closed-form 2x2 Onsager matrix for charges (H, A) at gtau, with
// alpha = beta omega sqrt(1 - mu^2), nbar = 1/(e^alpha - 1):
//   L11 = s/(1-mu^2) [ n1 + mu^2 c mA ],  L12 = s mu/(1-mu^2) [ n1 + c mA ],
//   L22 = s/(1-mu^2) [ mu^2 n1 + c mA ],
// where s = omega^2 sin^2(gtau), c = tanh(alpha)/alpha, n1 = nbar(nbar+1) and
// mA = nbar^2 + nbar + 1/2 = n1 cosh(alpha) is the thermal second moment of
// the squeezing asymmetry.
Eigen::Matrix2d closed_form_onsager(double beta, double mu, double omega, double gtau);

// Relative entropy reduction as a function of alpha alone (the value taken on
// equal affinity gradients d_lambda_1 = d_lambda_2):
//   R(alpha) = (alpha - tanh alpha) / (alpha sech alpha + tanh alpha).
double closed_form_R(double alpha);

// Heat/squeezing basis: L' = T L T^t with T = [[1, -mu], [0, 1]]:
//   L_QQ = s (1-mu^2) n1,  L_QA = s mu n1,
//   L_AA = s/(1-mu^2) [ mu^2 n1 + c mA ].
Eigen::Matrix2d heat_squeezing_onsager(double beta, double mu, double omega, double gtau);

// var(D) = 2 s [ n1 u^2 + mA v^2 ] with u = d1 ch + d2 sh, v = d1 sh + d2 ch,
// ch = cosh(2r), sh = sinh(2r).
double var_d_closed(double beta, double mu, double omega, double gtau, double dl1, double dl2);

struct ThermoCoefficients {
  double beta = 0.0, mu = 0.0, temperature = 0.0;
  double kappa = 0.0;     // L_QQ / T^2
  double conductance = 0.0;  // G = L_AA / T
  double seebeck = 0.0;   // S = L_AQ / (T L_AA)
  double peltier = 0.0;   // Pi = L_QA / L_AA
  double zt = 0.0;        // L_QA^2 / (L_QQ L_AA)
  // literal signed values as printed in the defining relations,
  // kappa = -L_QQ/T^2 and G = -L_AA/T; they cancel in ZT
  double kappa_signed = 0.0, conductance_signed = 0.0;
  // operating points per unit delta-beta
  double dmu_fr_per_dbeta = 0.0;    // kappa T / (G S); infinite at mu = 0
  double dmu_stop_per_dbeta = 0.0;  // Pi / beta
};

ThermoCoefficients thermo_coefficients(double beta, double mu, double omega, double gtau);

struct EngineReport {
  double dbeta = 0.0, dmu = 0.0;
  bool fridge_window_defined = false;
  double dmu_fr = 0.0;
  double dmu_stop = 0.0;
  double heat_current = 0.0;       // J_Q at (dbeta, dmu)
  double squeezing_current = 0.0;  // J_A at (dbeta, dmu)
  double work = 0.0;               // J_A dmu
  double work_at_stop = 0.0;       // J_A(dmu_stop) dmu_stop, vanishes exactly
  double sigma = 0.0;              // entropy production at (dbeta, dmu)
  double qdot = 0.0;               // T Sigma
  double kappa_open = 0.0;         // (L_QQ - L_QA^2/L_AA)/T^2, thermal conductance at J_A = 0
  double qdot_decomposition = 0.0; // kappa_open dT^2/T + J_A^2/G
  double qdot_residual = 0.0;      // |qdot - qdot_decomposition|
  // scan of W over [0, dmu_stop]: index of the extremal work sample
  int scan_points = 0;
  int scan_extremum_index = -1;
  double scan_predicted_index = 0.0;  // where dmu_stop/2 falls on the grid
};

EngineReport engine_analysis(double beta, double mu, double omega, double gtau, double dbeta,
                             double dmu, int scan_points = 101);

// --- Appendix-level symplectic characterization (x1..xN, p1..pN ordering) ---

RMat symplectic_form(int n_modes);

// Two-mode rotation block V = diag(X, X) with X = [[cos, -sin], [sin, cos]].
RMat rotation_block_symplectic(double phi);

bool is_symplectic(const RMat& v, double tol = 1e-10);

struct SymplecticChargeFlags {
  bool k1 = false;  // V^T V = I               (energy)
  bool k2 = false;  // V^T diag(I, -I) V = K2  (squeezing asymmetry)
  bool k3 = false;  // V^T antidiag(I, I) V = K3
};

// Which quadratic charges a symplectic matrix preserves. Throws if v is not
// symplectic within tolerance.
SymplecticChargeFlags symplectic_charge_check(const RMat& v, double tol = 1e-10);

}  // namespace nats
