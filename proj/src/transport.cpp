#include "nats/transport.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nats {

namespace {

// log-mean with precomputed logs; exact value of int_0^1 p^y q^(1-y) dy
inline double lm_fast(double p, double q, double lp, double lq) {
  if (p <= 0.0 || q <= 0.0) return 0.0;
  const double dl = lp - lq;
  if (std::abs(dl) < 1e-12) return 0.5 * (p + q);
  return (p - q) / dl;
}

void require_lambda_size(const CollisionSetup& setup, const std::vector<double>& lambda) {
  if (lambda.size() != setup.charges.size())
    throw std::invalid_argument("affinity vector length does not match charge count");
}

void require_valid(const CollisionSetup& setup) {
  PreservationReport rep = check_charge_preservation(setup);
  if (!rep.valid)
    throw std::domain_error("collision setup fails charge preservation (worst relative residual " +
                            std::to_string(rep.worst_relative) + ")");
}

// tr(M . (rho1 (x) rho2)) without forming the Kronecker product.
cxd trace_against_product(const Mat& m, const Mat& rho1, const Mat& rho2) {
  const int d1 = static_cast<int>(rho1.rows());
  const int d2 = static_cast<int>(rho2.rows());
  cxd total(0.0, 0.0);
  for (int a = 0; a < d1; ++a)
    for (int c = 0; c < d1; ++c) {
      const cxd w1 = rho1(c, a);
      if (w1 == cxd(0.0, 0.0)) continue;
      // tr over subsystem 2 of the (a,c) block against rho2
      total += w1 * m.block(Eigen::Index(a) * d2, Eigen::Index(c) * d2, d2, d2)
                        .cwiseProduct(rho2.transpose())
                        .sum();
    }
  return total;
}

// Shared heavy state for the Onsager evaluations at a common base affinity.
struct Workspace {
  const CollisionSetup* setup = nullptr;
  std::vector<double> lambda;
  GGEState g1, g2;
  Vec pops, lpops;          // joint populations (kron order) and their logs
  std::vector<Mat> dq;      // Qt_k - Q_k in the original basis
  std::vector<Mat> dqe;     // same, in the product eigenbasis
  std::vector<Mat> qe1;     // subsystem-1 charges in the g1 eigenbasis
  std::vector<double> mean_dq;  // <Qt_k - Q_k>_pi  (vanishes at the fixed point)
  std::vector<double> mean_q1;  // <Q_k^(1)>_pi1
};

Workspace make_workspace(const CollisionSetup& setup, const std::vector<double>& lambda) {
  require_lambda_size(setup, lambda);
  require_valid(setup);
  Workspace ws;
  ws.setup = &setup;
  ws.lambda = lambda;
  ws.g1 = side_gge(setup, 1, lambda);
  ws.g2 = side_gge(setup, 2, lambda);
  const int d1 = setup.d1, d2 = setup.d2, n = setup.joint_dim();
  ws.pops.resize(n);
  ws.lpops.resize(n);
  for (int a = 0; a < d1; ++a)
    for (int b = 0; b < d2; ++b) {
      const double p = ws.g1.populations()(a) * ws.g2.populations()(b);
      ws.pops(Eigen::Index(a) * d2 + b) = p;
      ws.lpops(Eigen::Index(a) * d2 + b) = p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity();
    }
  const size_t nk = setup.charges.size();
  ws.dq.reserve(nk);
  ws.dqe.reserve(nk);
  ws.qe1.reserve(nk);
  for (size_t k = 0; k < nk; ++k) {
    Mat qj = setup.joint_charge(k);
    Mat qt = setup.unitary.conjugate(qj);
    ws.dq.push_back(qt - qj);
    ws.dqe.push_back(product_basis_transform(ws.dq.back(), ws.g1.eig.eigenvectors,
                                             ws.g2.eig.eigenvectors));
    ws.qe1.push_back(ws.g1.eig.eigenvectors.adjoint() * setup.charges[k].first *
                     ws.g1.eig.eigenvectors);
    double mdq = 0.0, mq = 0.0;
    for (int i = 0; i < n; ++i) mdq += ws.dqe.back()(i, i).real() * ws.pops(i);
    for (int a = 0; a < d1; ++a) mq += ws.qe1.back()(a, a).real() * ws.g1.populations()(a);
    ws.mean_dq.push_back(mdq);
    ws.mean_q1.push_back(mq);
  }
  return ws;
}

// int_0^1 cov_y(X, Y) dy from eigenbasis representations and populations.
double covy_integral_dense(const Mat& xe, const Mat& ye, const Vec& p, const Vec& lp,
                           double mean_x, double mean_y) {
  const Eigen::Index n = p.size();
  double acc = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double pj = p(j), lpj = lp(j);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double w = lm_fast(p(i), pj, lp(i), lpj);
      if (w != 0.0) acc += (xe(i, j) * ye(j, i)).real() * w;
    }
  }
  return acc - mean_x * mean_y;
}

// Same, with Y = Q^(1) (x) I so only entries with equal subsystem-2 index
// contribute; O(d1^2 d2) instead of O(d^4).
double covy_integral_charge1(const Mat& xe, const Mat& qe1, int d1, int d2, const Vec& p,
                             const Vec& lp, double mean_x, double mean_y) {
  double acc = 0.0;
  for (int a = 0; a < d1; ++a)
    for (int c = 0; c < d1; ++c) {
      const cxd q = qe1(c, a);
      if (q == cxd(0.0, 0.0)) continue;
      for (int b = 0; b < d2; ++b) {
        const Eigen::Index i = Eigen::Index(a) * d2 + b, j = Eigen::Index(c) * d2 + b;
        const double w = lm_fast(p(i), p(j), lp(i), lp(j));
        if (w != 0.0) acc += (xe(i, j) * q).real() * w;
      }
    }
  return acc - mean_x * mean_y;
}

EntropySplit entropy_split_from(const std::vector<Mat>& dqe, const Vec& p, const Vec& lp,
                                const std::vector<double>& mean_dq,
                                const std::vector<double>& dlambda) {
  const Eigen::Index n = p.size();
  Mat de = Mat::Zero(n, n);
  double mean_d = 0.0;
  for (size_t k = 0; k < dqe.size(); ++k) {
    de += dlambda[k] * dqe[k];
    mean_d += dlambda[k] * mean_dq[k];
  }
  double sum_lm = 0.0, sum_arith = 0.0;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      const double a2 = std::norm(de(i, j));
      if (a2 == 0.0) continue;
      sum_lm += a2 * lm_fast(p(i), p(j), lp(i), lp(j));
      sum_arith += a2 * 0.5 * (p(i) + p(j));
    }
  EntropySplit out;
  out.sigma = 0.5 * (sum_lm - mean_d * mean_d);
  out.classical = 0.5 * (sum_arith - mean_d * mean_d);
  out.quantum = out.classical - out.sigma;  // closes Eq. classical - quantum = sigma exactly
  bool zero_gradient = true;
  for (double d : dlambda) zero_gradient = zero_gradient && d == 0.0;
  if (!zero_gradient && out.sigma != 0.0) {
    out.reduction_defined = true;
    out.relative_reduction = out.quantum / out.sigma;
  }
  return out;
}

OnsagerReport finish_report(RMat L, RMat L_raw, std::string method, EntropySplit entropy) {
  OnsagerReport rep;
  rep.L = std::move(L);
  rep.L_raw = std::move(L_raw);
  rep.method = std::move(method);
  rep.symmetry_residual = (rep.L_raw - rep.L_raw.transpose()).cwiseAbs().maxCoeff();
  RMat sym = 0.5 * (rep.L + rep.L.transpose());
  Eigen::SelfAdjointEigenSolver<RMat> es(sym);
  rep.min_eigenvalue = es.eigenvalues().minCoeff();
  rep.entropy = entropy;
  return rep;
}

OnsagerReport onsager_ycov_ws(const Workspace& ws) {
  const size_t nk = ws.setup->charges.size();
  RMat L(nk, nk), Lraw(nk, nk);
  for (size_t k = 0; k < nk; ++k) {
    for (size_t l = k; l < nk; ++l) {
      const double v = 0.5 * covy_integral_dense(ws.dqe[k], ws.dqe[l], ws.pops, ws.lpops,
                                                 ws.mean_dq[k], ws.mean_dq[l]);
      L(k, l) = v;
      L(l, k) = v;
    }
    for (size_t l = 0; l < nk; ++l)
      Lraw(k, l) = -covy_integral_charge1(ws.dqe[k], ws.qe1[l], ws.setup->d1, ws.setup->d2,
                                          ws.pops, ws.lpops, ws.mean_dq[k], ws.mean_q1[l]);
  }
  std::vector<double> ones(nk, 1.0);
  return finish_report(std::move(L), std::move(Lraw), "ycov",
                       entropy_split_from(ws.dqe, ws.pops, ws.lpops, ws.mean_dq, ones));
}

OnsagerReport onsager_sld_ws(const Workspace& ws) {
  const CollisionSetup& setup = *ws.setup;
  const size_t nk = setup.charges.size();
  const int d1 = setup.d1, d2 = setup.d2;
  std::vector<Mat> charges1;
  for (const auto& c : setup.charges) charges1.push_back(c.first);
  const Mat rho2t = ws.g2.density.transpose();

  RMat L(nk, nk);
  std::vector<Mat> shifted;  // xi(Q_k) - Q_k on subsystem 1
  shifted.reserve(nk);
  for (size_t k = 0; k < nk; ++k) {
    Mat s(d1, d1);
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d1; ++j)
        s(i, j) = ws.dq[k].block(Eigen::Index(i) * d2, Eigen::Index(j) * d2, d2, d2)
                      .cwiseProduct(rho2t)
                      .sum();
    shifted.push_back(hermitize(s));
  }
  for (size_t i = 0; i < nk; ++i) {
    Mat lam = sld(charges1, ws.lambda, i);
    for (size_t k = 0; k < nk; ++k) {
      // (1/2) < { xi(Q_k) - Q_k, Lambda_i } > = Re tr(rho1 (xi(Q_k)-Q_k) Lambda_i)
      Mat prod = shifted[k] * lam;
      L(k, i) = ws.g1.density.cwiseProduct(prod.transpose()).sum().real();
    }
  }
  RMat Lraw = L;
  std::vector<double> ones(nk, 1.0);
  return finish_report(std::move(L), std::move(Lraw), "sld",
                       entropy_split_from(ws.dqe, ws.pops, ws.lpops, ws.mean_dq, ones));
}

OnsagerReport onsager_fd_ws(const Workspace& ws, double step, bool central) {
  if (step <= 0.0) throw std::domain_error("onsager_finite_difference: step must be positive");
  const CollisionSetup& setup = *ws.setup;
  const size_t nk = setup.charges.size();
  std::vector<Mat> charges1;
  for (const auto& c : setup.charges) charges1.push_back(c.first);

  RMat L(nk, nk);
  for (size_t l = 0; l < nk; ++l) {
    std::vector<double> lp = ws.lambda;
    lp[l] += step;
    GGEState g1p = build_gge(charges1, lp);
    for (size_t k = 0; k < nk; ++k) {
      const double jp = trace_against_product(ws.dq[k], g1p.density, ws.g2.density).real();
      if (central) {
        std::vector<double> lmv = ws.lambda;
        lmv[l] -= step;
        GGEState g1m = build_gge(charges1, lmv);
        const double jm = trace_against_product(ws.dq[k], g1m.density, ws.g2.density).real();
        L(k, l) = (jp - jm) / (2.0 * step);
      } else {
        L(k, l) = jp / step;
      }
    }
  }
  RMat Lraw = L;
  std::vector<double> ones(nk, 1.0);
  return finish_report(std::move(L), std::move(Lraw), central ? "fd-central" : "fd",
                       entropy_split_from(ws.dqe, ws.pops, ws.lpops, ws.mean_dq, ones));
}

}  // namespace

Mat CollisionSetup::joint_charge(size_t k) const {
  return kron(charges.at(k).first, Mat::Identity(d2, d2));
}

Mat CollisionSetup::total_charge(size_t k) const {
  return kron(charges.at(k).first, Mat::Identity(d2, d2)) +
         kron(Mat::Identity(d1, d1), charges.at(k).second);
}

PreservationReport check_charge_preservation(const CollisionSetup& setup) {
  PreservationReport rep;
  const Mat u = setup.unitary.dense();
  for (size_t k = 0; k < setup.charges.size(); ++k) {
    Mat qtot = setup.total_charge(k);
    Mat comm = u * qtot - qtot * u;
    double resid;
    if (!setup.check_projection.empty()) {
      resid = 0.0;
      for (int i : setup.check_projection)
        for (int j : setup.check_projection) resid = std::max(resid, std::abs(comm(i, j)));
    } else {
      resid = max_abs(comm);
    }
    rep.residuals.push_back(resid);
    rep.scales.push_back(std::max(max_abs(qtot), 1e-30));
  }
  rep.worst_relative = 0.0;
  for (size_t k = 0; k < rep.residuals.size(); ++k)
    rep.worst_relative = std::max(rep.worst_relative, rep.residuals[k] / rep.scales[k]);
  rep.unitarity = setup.unitary.unitarity_residual();
  rep.valid = rep.worst_relative <= setup.preserve_tol && rep.unitarity <= 1e-10;
  return rep;
}

GGEState side_gge(const CollisionSetup& setup, int side, const std::vector<double>& lambda) {
  require_lambda_size(setup, lambda);
  std::vector<Mat> charges;
  for (const auto& c : setup.charges) charges.push_back(side == 1 ? c.first : c.second);
  return build_gge(charges, lambda);
}

CollisionResult collide(const CollisionSetup& setup, const std::vector<double>& lambda1,
                        const std::vector<double>& lambda2) {
  require_valid(setup);
  CurrentsResult cur = collide_currents(setup, lambda1, lambda2);
  GGEState g1 = side_gge(setup, 1, lambda1);
  GGEState g2 = side_gge(setup, 2, lambda2);
  CollisionResult out;
  out.final_state = setup.unitary.sandwich(kron(g1.density, g2.density));
  out.currents = cur.currents;
  out.sigma = cur.sigma;
  return out;
}

CurrentsResult collide_currents(const CollisionSetup& setup, const std::vector<double>& lambda1,
                                const std::vector<double>& lambda2) {
  require_lambda_size(setup, lambda1);
  require_lambda_size(setup, lambda2);
  require_valid(setup);
  GGEState g1 = side_gge(setup, 1, lambda1);
  GGEState g2 = side_gge(setup, 2, lambda2);
  CurrentsResult out;
  out.sigma = 0.0;
  for (size_t k = 0; k < setup.charges.size(); ++k) {
    Mat qj = setup.joint_charge(k);
    Mat dq = setup.unitary.conjugate(qj) - qj;
    const double jk = trace_against_product(dq, g1.density, g2.density).real();
    out.currents.push_back(jk);
    Mat q2 = kron(Mat::Identity(setup.d1, setup.d1), setup.charges[k].second);
    Mat dq2 = setup.unitary.conjugate(q2) - q2;
    out.currents_side2.push_back(trace_against_product(dq2, g1.density, g2.density).real());
    out.sigma += (lambda1[k] - lambda2[k]) * jk;
  }
  return out;
}

InformationalSigma entropy_informational(const CollisionSetup& setup,
                                         const std::vector<double>& lambda1,
                                         const std::vector<double>& lambda2) {
  require_valid(setup);
  GGEState g1 = side_gge(setup, 1, lambda1);
  GGEState g2 = side_gge(setup, 2, lambda2);
  Mat rho_f = setup.unitary.sandwich(kron(g1.density, g2.density));
  Mat r1 = partial_trace(rho_f, setup.d1, setup.d2, 1);
  Mat r2 = partial_trace(rho_f, setup.d1, setup.d2, 2);

  auto spectrum_entropy = [](const GGEState& g) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < g.populations().size(); ++i) {
      const double p = std::max(g.populations()(i), kEigenvalueFloor);
      s -= p * std::log(p);
    }
    return s;
  };
  // the joint state is a unitary image of pi1 (x) pi2, so its entropy is the
  // sum of the marginals' initial entropies
  const double s_joint = spectrum_entropy(g1) + spectrum_entropy(g2);
  const double s1 = von_neumann_entropy(r1);
  const double s2 = von_neumann_entropy(r2);

  InformationalSigma out;
  out.mutual_information = s1 + s2 - s_joint;
  out.delta_s1 = s1 - spectrum_entropy(g1);
  out.delta_s2 = s2 - spectrum_entropy(g2);
  out.rel_entropy_1 = relative_entropy(r1, g1.density);
  out.rel_entropy_2 = relative_entropy(r2, g2.density);
  out.sigma_info = out.mutual_information + out.rel_entropy_1 + out.rel_entropy_2;
  out.sigma_exact = collide_currents(setup, lambda1, lambda2).sigma;
  return out;
}

double y_covariance(const Mat& a, const Mat& b, const GGEState& pi, double y) {
  const Eigen::Index n = pi.density.rows();
  if (a.rows() != n || b.rows() != n) throw std::invalid_argument("y_covariance: dimension mismatch");
  Mat ae = pi.eig.eigenvectors.adjoint() * a * pi.eig.eigenvectors;
  Mat be = pi.eig.eigenvectors.adjoint() * b * pi.eig.eigenvectors;
  double tr = 0.0, ma = 0.0, mb = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double pi_i = std::max(pi.populations()(i), kEigenvalueFloor);
    ma += ae(i, i).real() * pi.populations()(i);
    mb += be(i, i).real() * pi.populations()(i);
    for (Eigen::Index j = 0; j < n; ++j) {
      const double pj = std::max(pi.populations()(j), kEigenvalueFloor);
      tr += (ae(i, j) * be(j, i)).real() * std::pow(pj, y) * std::pow(pi_i, 1.0 - y);
    }
  }
  return tr - ma * mb;
}

double y_covariance_integral(const Mat& a, const Mat& b, const GGEState& pi) {
  const Eigen::Index n = pi.density.rows();
  if (a.rows() != n || b.rows() != n)
    throw std::invalid_argument("y_covariance_integral: dimension mismatch");
  Mat ae = pi.eig.eigenvectors.adjoint() * a * pi.eig.eigenvectors;
  Mat be = pi.eig.eigenvectors.adjoint() * b * pi.eig.eigenvectors;
  Vec p = pi.populations();
  Vec lp(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i)
    lp(i) = p(i) > 0.0 ? std::log(p(i)) : -std::numeric_limits<double>::infinity();
  double ma = 0.0, mb = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    ma += ae(i, i).real() * p(i);
    mb += be(i, i).real() * p(i);
  }
  return covy_integral_dense(ae, be, p, lp, ma, mb);
}

OnsagerReport onsager_ycov(const CollisionSetup& setup, const std::vector<double>& lambda) {
  return onsager_ycov_ws(make_workspace(setup, lambda));
}

OnsagerReport onsager_finite_difference(const CollisionSetup& setup,
                                        const std::vector<double>& lambda, double step,
                                        bool central) {
  return onsager_fd_ws(make_workspace(setup, lambda), step, central);
}

Mat sld(const std::vector<Mat>& charges, const std::vector<double>& lambda, size_t index) {
  if (index >= charges.size()) throw std::invalid_argument("sld: charge index out of range");
  GGEState g = build_gge(charges, lambda);
  const Eigen::Index n = g.density.rows();
  Mat qe = g.eig.eigenvectors.adjoint() * charges[index] * g.eig.eigenvectors;
  Vec p = g.populations();
  Vec lp(n);
  for (Eigen::Index i = 0; i < n; ++i)
    lp(i) = std::log(std::max(p(i), kEigenvalueFloor));
  double mean_q = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) mean_q += qe(i, i).real() * p(i);
  // d pi / d lambda = <Q> pi - int pi^y Q pi^(1-y) dy, then solve the
  // anticommutator equation entrywise: Lambda_ij = 2 (d pi)_ij / (p_i + p_j)
  Mat lam(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double pi_c = std::max(p(i), kEigenvalueFloor);
      const double pj_c = std::max(p(j), kEigenvalueFloor);
      cxd dpi = -qe(i, j) * lm_fast(pi_c, pj_c, lp(i), lp(j));
      if (i == j) dpi += mean_q * pi_c;
      lam(i, j) = 2.0 * dpi / (pi_c + pj_c);
    }
  return g.eig.eigenvectors * lam * g.eig.eigenvectors.adjoint();
}

Mat sld_series(const std::vector<Mat>& charges, const std::vector<double>& lambda, size_t index,
               int terms) {
  if (index >= charges.size()) throw std::invalid_argument("sld_series: charge index out of range");
  const Eigen::Index n = charges[0].rows();
  Mat g = Mat::Zero(n, n);
  for (size_t k = 0; k < charges.size(); ++k) g += lambda[k] * charges[k];
  EigenDecomposition gd = eig_hermitian(g);
  const double spread = gd.eigenvalues.maxCoeff() - gd.eigenvalues.minCoeff();
  if (spread >= 0.95 * std::numbers::pi)
    throw std::domain_error("sld_series: spectral spread outside the series convergence region");
  GGEState st = build_gge(charges, lambda);
  const double mean_q = expectation(st, charges[index]);
  Mat acc = charges[index];         // f_0 C^0(Q) with f_0 = 1
  Mat nested = charges[index];
  for (int m = 1; m <= terms; ++m) {
    nested = g * nested - nested * g;
    nested = g * nested - nested * g;  // C^(2m)
    acc += sld_series_coefficient(m) * nested;
  }
  return mean_q * Mat::Identity(n, n) - acc;
}

OnsagerReport onsager_sld(const CollisionSetup& setup, const std::vector<double>& lambda) {
  return onsager_sld_ws(make_workspace(setup, lambda));
}

OnsagerBatch onsager_batch(const CollisionSetup& setup, const std::vector<double>& lambda,
                           double fd_step, bool fd_central,
                           const std::vector<std::vector<double>>& gradients) {
  Workspace ws = make_workspace(setup, lambda);
  OnsagerBatch out;
  out.preservation = check_charge_preservation(setup);
  out.ycov = onsager_ycov_ws(ws);
  out.sld = onsager_sld_ws(ws);
  out.fd = onsager_fd_ws(ws, fd_step, fd_central);
  for (const auto& g : gradients)
    out.splits.push_back(entropy_split_from(ws.dqe, ws.pops, ws.lpops, ws.mean_dq, g));
  return out;
}

EntropySplit entropy_split(const CollisionSetup& setup, const std::vector<double>& lambda,
                           const std::vector<double>& dlambda) {
  if (dlambda.size() != setup.charges.size())
    throw std::invalid_argument("entropy_split: gradient length mismatch");
  Workspace ws = make_workspace(setup, lambda);
  return entropy_split_from(ws.dqe, ws.pops, ws.lpops, ws.mean_dq, dlambda);
}

RMat transform_onsager(const RMat& L, const RMat& a) {
  if (a.cols() != L.rows()) throw std::invalid_argument("transform_onsager: shape mismatch");
  return a * L * a.transpose();
}

CasimirReport onsager_casimir_check(const CollisionSetup& setup, const TimeReversalSpec& starred,
                                    const std::vector<double>& lambda) {
  const Mat& b = starred.conjugation_basis;
  if (max_abs(Mat(b.adjoint() * b - Mat::Identity(b.rows(), b.cols()))) > 1e-12)
    throw std::invalid_argument("onsager_casimir_check: conjugation basis is not unitary");
  PreservationReport starred_rep = check_charge_preservation(starred.starred);
  if (!starred_rep.valid)
    throw std::domain_error("onsager_casimir_check: starred setup fails charge preservation");
  OnsagerReport plain = onsager_ycov(setup, lambda);
  OnsagerReport star = onsager_ycov(starred.starred, lambda);
  CasimirReport out;
  out.L = plain.L_raw;
  out.L_starred = star.L_raw;
  out.residual = (out.L.transpose() - out.L_starred).cwiseAbs().maxCoeff();
  out.symmetry_residual = plain.symmetry_residual;
  return out;
}

namespace {

// zeta(s) by direct sum with Euler-Maclaurin tail corrections
double riemann_zeta(int s) {
  constexpr int kCut = 200;
  double sum = 0.0;
  for (int k = 1; k <= kCut; ++k) sum += std::pow(double(k), -s);
  const double K = kCut;
  sum += std::pow(K, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(K, -s) +
         s * std::pow(K, -s - 1.0) / 12.0 -
         s * (s + 1) * (s + 2) * std::pow(K, -s - 3.0) / 720.0;
  return sum;
}

}  // namespace

double sld_series_coefficient(int n) {
  // f_{2n} = 4 (4^{n+1} - 1) B_{2n+2} / (2n+2)!  with
  // B_{2m}/(2m)! = (-1)^{m+1} 2 zeta(2m) / (2 pi)^{2m}
  const int m = n + 1;
  const double zeta = riemann_zeta(2 * m);
  const double b_over_fact = (m % 2 == 0 ? -2.0 : 2.0) * zeta /
                             std::pow(2.0 * std::numbers::pi, 2.0 * m);
  return 4.0 * (std::pow(4.0, m) - 1.0) * b_over_fact;
}

double sld_series_tanh_sum(double alpha, int terms) {
  const double x2 = 4.0 * alpha * alpha;  // (2 alpha)^2
  double sum = 0.0, xp = 1.0;
  for (int k = 1; k <= terms; ++k) {
    xp *= x2;
    sum += sld_series_coefficient(k) * xp;
  }
  return sum;
}

}  // namespace nats
