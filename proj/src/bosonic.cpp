#include "nats/bosonic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nats {

FockSpace build_fock(int d, double omega) {
  if (d < 2) throw std::invalid_argument("build_fock: need at least two levels");
  if (omega <= 0.0) throw std::invalid_argument("build_fock: omega must be positive");
  FockSpace f;
  f.d = d;
  f.omega = omega;
  f.a = Mat::Zero(d, d);
  for (int n = 1; n < d; ++n) f.a(n - 1, n) = std::sqrt(double(n));
  f.adag = f.a.adjoint();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  f.x = inv_sqrt2 * (f.a + f.adag);
  f.p = cxd(0.0, -1.0) * inv_sqrt2 * (f.a - f.adag);
  Mat n_op = f.adag * f.a;
  f.H = omega * (n_op + 0.5 * Mat::Identity(d, d));
  f.A = -0.5 * omega * (f.a * f.a + f.adag * f.adag);
  f.Q3 = cxd(0.0, -0.5) * omega * (f.a * f.a - f.adag * f.adag);
  return f;
}

std::vector<std::vector<int>> excitation_sectors(int d) {
  std::vector<std::vector<int>> groups(2 * d - 1);
  for (int n1 = 0; n1 < d; ++n1)
    for (int n2 = 0; n2 < d; ++n2) groups[n1 + n2].push_back(n1 * d + n2);
  return groups;
}

std::vector<int> sector_projection(int d) {
  std::vector<int> keep;
  for (int n1 = 0; n1 < d; ++n1)
    for (int n2 = 0; n2 + n1 <= d - 1 && n2 < d; ++n2) keep.push_back(n1 * d + n2);
  return keep;
}

BlockDiagonalUnitary beam_splitter(double gtau, const FockSpace& fock) {
  const int d = fock.d;
  BlockDiagonalUnitary u;
  u.dim = d * d;
  u.groups = excitation_sectors(d);
  u.blocks.reserve(u.groups.size());
  for (const auto& group : u.groups) {
    const int m = static_cast<int>(group.size());
    // generator i K restricted to the sector, K = a1^dag a2 - a2^dag a1
    Mat herm = Mat::Zero(m, m);
    for (int col = 0; col < m; ++col) {
      const int n1 = group[col] / d, n2 = group[col] % d;
      if (n1 + 1 <= d - 1 && n2 >= 1) {
        // a1^dag a2 |n1,n2> = sqrt((n1+1) n2) |n1+1,n2-1>, one slot later in the group
        herm(col + 1, col) += cxd(0.0, 1.0) * std::sqrt(double(n1 + 1) * n2);
      }
      if (n2 + 1 <= d - 1 && n1 >= 1) {
        herm(col - 1, col) -= cxd(0.0, 1.0) * std::sqrt(double(n1) * (n2 + 1));
      }
    }
    // U_sector = exp(-gtau K) = exp(+i gtau (iK)) with iK Hermitian
    u.blocks.push_back(mat_func_complex(herm, [gtau](double w) {
      return std::exp(cxd(0.0, gtau * w));
    }));
  }
  u.validate();
  return u;
}

CollisionSetup bosonic_setup(const FockSpace& fock, double gtau, bool include_q3,
                             std::vector<double> /*extra_affinity*/) {
  CollisionSetup setup;
  setup.d1 = fock.d;
  setup.d2 = fock.d;
  setup.charges.push_back({"H", fock.H, fock.H});
  setup.charges.push_back({"A", fock.A, fock.A});
  if (include_q3) setup.charges.push_back({"Q3", fock.Q3, fock.Q3});
  setup.unitary = beam_splitter(gtau, fock);
  setup.check_projection = sector_projection(fock.d);
  return setup;
}

double sector_leakage(const FockSpace& fock, double beta, double mu) {
  GGEState g = build_gge({fock.H, fock.A}, {beta, -beta * mu});
  Vec pops = Vec::Zero(fock.d);  // Fock-basis occupation of one mode
  for (int n = 0; n < fock.d; ++n) pops(n) = g.density(n, n).real();
  double inside = 0.0;
  for (int n1 = 0; n1 < fock.d; ++n1)
    for (int n2 = 0; n1 + n2 <= fock.d - 1 && n2 < fock.d; ++n2) inside += pops(n1) * pops(n2);
  return 1.0 - inside;
}

namespace {

struct ClosedFormParts {
  double s;       // omega^2 sin^2(gtau)
  double alpha;   // beta omega sqrt(1 - mu^2)
  double nbar;
  double c;       // tanh(alpha)/alpha
  double n1;      // nbar (nbar + 1)
  double mA;      // nbar^2 + nbar + 1/2, thermal <A'^2>/omega^2
};

ClosedFormParts closed_form_parts(double beta, double mu, double omega, double gtau) {
  if (beta <= 0.0) throw std::domain_error("closed form: beta must be positive");
  if (std::abs(mu) >= 1.0) throw std::domain_error("closed form: |mu| must be below 1");
  ClosedFormParts p;
  p.s = omega * omega * std::sin(gtau) * std::sin(gtau);
  p.alpha = beta * omega * std::sqrt(1.0 - mu * mu);
  p.nbar = 1.0 / std::expm1(p.alpha);
  p.c = std::tanh(p.alpha) / p.alpha;
  p.n1 = p.nbar * (p.nbar + 1.0);
  p.mA = p.nbar * p.nbar + p.nbar + 0.5;
  return p;
}

}  // namespace

Eigen::Matrix2d closed_form_onsager(double beta, double mu, double omega, double gtau) {
  ClosedFormParts p = closed_form_parts(beta, mu, omega, gtau);
  const double g = 1.0 / (1.0 - mu * mu);
  Eigen::Matrix2d L;
  L(0, 0) = p.s * g * (p.n1 + mu * mu * p.c * p.mA);
  L(0, 1) = p.s * g * mu * (p.n1 + p.c * p.mA);
  L(1, 0) = L(0, 1);
  L(1, 1) = p.s * g * (mu * mu * p.n1 + p.c * p.mA);
  return L;
}

double closed_form_R(double alpha) {
  if (alpha <= 0.0) throw std::domain_error("closed_form_R: alpha must be positive");
  const double th = std::tanh(alpha);
  return (alpha - th) / (alpha / std::cosh(alpha) + th);
}

Eigen::Matrix2d heat_squeezing_onsager(double beta, double mu, double omega, double gtau) {
  ClosedFormParts p = closed_form_parts(beta, mu, omega, gtau);
  Eigen::Matrix2d L;
  L(0, 0) = p.s * (1.0 - mu * mu) * p.n1;
  L(0, 1) = p.s * mu * p.n1;
  L(1, 0) = L(0, 1);
  L(1, 1) = p.s / (1.0 - mu * mu) * (mu * mu * p.n1 + p.c * p.mA);
  return L;
}

double var_d_closed(double beta, double mu, double omega, double gtau, double dl1, double dl2) {
  ClosedFormParts p = closed_form_parts(beta, mu, omega, gtau);
  const double ch = 1.0 / std::sqrt(1.0 - mu * mu);  // cosh(2r)
  const double sh = mu * ch;                         // sinh(2r)
  const double u = dl1 * ch + dl2 * sh;
  const double v = dl1 * sh + dl2 * ch;
  return 2.0 * p.s * (p.n1 * u * u + p.mA * v * v);
}

ThermoCoefficients thermo_coefficients(double beta, double mu, double omega, double gtau) {
  Eigen::Matrix2d L = heat_squeezing_onsager(beta, mu, omega, gtau);
  ThermoCoefficients out;
  out.beta = beta;
  out.mu = mu;
  out.temperature = 1.0 / beta;
  const double T = out.temperature;
  out.kappa = L(0, 0) / (T * T);
  out.conductance = L(1, 1) / T;
  out.seebeck = L(1, 0) / (T * L(1, 1));
  out.peltier = L(0, 1) / L(1, 1);
  out.zt = L(0, 1) * L(0, 1) / (L(0, 0) * L(1, 1));
  out.kappa_signed = -out.kappa;
  out.conductance_signed = -out.conductance;
  out.dmu_stop_per_dbeta = out.peltier / beta;
  const double gs = out.conductance * out.seebeck;
  out.dmu_fr_per_dbeta = gs != 0.0 ? out.kappa * T / gs
                                   : std::numeric_limits<double>::infinity();
  return out;
}

EngineReport engine_analysis(double beta, double mu, double omega, double gtau, double dbeta,
                             double dmu, int scan_points) {
  if (dbeta <= 0.0) throw std::domain_error("engine_analysis: dbeta must be positive");
  Eigen::Matrix2d L = heat_squeezing_onsager(beta, mu, omega, gtau);
  const double T = 1.0 / beta;
  EngineReport rep;
  rep.dbeta = dbeta;
  rep.dmu = dmu;
  rep.dmu_stop = (L(0, 1) / L(1, 1)) * dbeta / beta;
  if (L(0, 1) != 0.0) {
    rep.fridge_window_defined = true;
    rep.dmu_fr = T * L(0, 0) * dbeta / L(0, 1);
  }

  auto j_heat = [&](double m) { return L(0, 0) * dbeta - L(0, 1) * beta * m; };
  auto j_sq = [&](double m) { return L(1, 0) * dbeta - L(1, 1) * beta * m; };

  rep.heat_current = j_heat(dmu);
  rep.squeezing_current = j_sq(dmu);
  rep.work = rep.squeezing_current * dmu;
  rep.work_at_stop = j_sq(rep.dmu_stop) * rep.dmu_stop;

  // entropy production at gradients (dbeta, -beta dmu)
  rep.sigma = L(0, 0) * dbeta * dbeta - 2.0 * L(0, 1) * beta * dmu * dbeta +
              L(1, 1) * beta * beta * dmu * dmu;
  rep.qdot = T * rep.sigma;
  rep.kappa_open = (L(0, 0) - L(0, 1) * L(0, 1) / L(1, 1)) / (T * T);
  const double dT = -T * T * dbeta;
  rep.qdot_decomposition =
      rep.kappa_open * dT * dT / T + rep.squeezing_current * rep.squeezing_current / (L(1, 1) / T);
  rep.qdot_residual = std::abs(rep.qdot - rep.qdot_decomposition);

  // scan W(dmu) over [0, dmu_stop]
  rep.scan_points = scan_points;
  if (scan_points >= 3 && rep.dmu_stop != 0.0) {
    double best = 0.0;
    for (int i = 0; i < scan_points; ++i) {
      const double m = rep.dmu_stop * double(i) / (scan_points - 1);
      const double w = j_sq(m) * m;
      if (std::abs(w) > std::abs(best)) {
        best = w;
        rep.scan_extremum_index = i;
      }
    }
    rep.scan_predicted_index = 0.5 * (scan_points - 1);
  }
  return rep;
}

RMat symplectic_form(int n_modes) {
  RMat omega = RMat::Zero(2 * n_modes, 2 * n_modes);
  omega.topRightCorner(n_modes, n_modes) = RMat::Identity(n_modes, n_modes);
  omega.bottomLeftCorner(n_modes, n_modes) = -RMat::Identity(n_modes, n_modes);
  return omega;
}

RMat rotation_block_symplectic(double phi) {
  RMat x(2, 2);
  x << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  RMat v = RMat::Zero(4, 4);
  v.topLeftCorner(2, 2) = x;
  v.bottomRightCorner(2, 2) = x;
  return v;
}

bool is_symplectic(const RMat& v, double tol) {
  if (v.rows() != v.cols() || v.rows() % 2 != 0) return false;
  const int n = static_cast<int>(v.rows()) / 2;
  RMat omega = symplectic_form(n);
  return (v.transpose() * omega * v - omega).cwiseAbs().maxCoeff() <= tol;
}

SymplecticChargeFlags symplectic_charge_check(const RMat& v, double tol) {
  if (!is_symplectic(v, tol))
    throw std::domain_error("symplectic_charge_check: matrix is not symplectic");
  const int n = static_cast<int>(v.rows()) / 2;
  RMat k1 = RMat::Identity(2 * n, 2 * n);
  RMat k2 = RMat::Zero(2 * n, 2 * n);
  k2.topLeftCorner(n, n) = RMat::Identity(n, n);
  k2.bottomRightCorner(n, n) = -RMat::Identity(n, n);
  RMat k3 = RMat::Zero(2 * n, 2 * n);
  k3.topRightCorner(n, n) = RMat::Identity(n, n);
  k3.bottomLeftCorner(n, n) = RMat::Identity(n, n);
  SymplecticChargeFlags flags;
  flags.k1 = (v.transpose() * k1 * v - k1).cwiseAbs().maxCoeff() <= tol;
  flags.k2 = (v.transpose() * k2 * v - k2).cwiseAbs().maxCoeff() <= tol;
  flags.k3 = (v.transpose() * k3 * v - k3).cwiseAbs().maxCoeff() <= tol;
  return flags;
}

}  // namespace nats
