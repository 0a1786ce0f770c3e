#include "nats/gge.hpp"

#include <cmath>
#include <stdexcept>

namespace nats {

GGEState build_gge(const std::vector<Mat>& charges, const std::vector<double>& lambda) {
  if (charges.empty()) throw std::invalid_argument("build_gge: no charges");
  if (charges.size() != lambda.size())
    throw std::invalid_argument("build_gge: affinity count does not match charge count");
  const Eigen::Index d = charges[0].rows();
  Mat g = Mat::Zero(d, d);
  for (size_t k = 0; k < charges.size(); ++k) {
    if (!std::isfinite(lambda[k])) throw std::invalid_argument("build_gge: non-finite affinity");
    if (charges[k].rows() != d || charges[k].cols() != d)
      throw std::invalid_argument("build_gge: charge dimension mismatch");
    g += lambda[k] * charges[k];
  }
  EigenDecomposition gd = eig_hermitian(g);
  const double gmin = gd.eigenvalues.minCoeff();
  Vec w(d);
  double z = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    w(i) = std::exp(-(gd.eigenvalues(i) - gmin));
    z += w(i);
  }
  w /= z;

  GGEState out;
  out.affinities = lambda;
  out.log_partition = std::log(z) - gmin;
  // populations ascending: G ascending means weights descending, so reverse
  out.eig.eigenvalues = w.reverse();
  out.eig.eigenvectors = gd.eigenvectors.rowwise().reverse();
  out.density = out.eig.eigenvectors * out.eig.eigenvalues.asDiagonal() *
                out.eig.eigenvectors.adjoint();
  return out;
}

double expectation(const Mat& rho, const Mat& obs, double imag_tol) {
  if (rho.rows() != obs.rows() || rho.cols() != obs.cols())
    throw std::invalid_argument("expectation: dimension mismatch");
  // tr(rho O) = sum_ij rho(i,j) O(j,i), avoiding the full product
  const cxd tr = rho.cwiseProduct(obs.transpose()).sum();
  const double scale = std::max(1.0, std::abs(tr));
  if (std::abs(tr.imag()) > imag_tol * scale)
    throw std::domain_error("expectation: imaginary residue above threshold (non-Hermitian input?)");
  return tr.real();
}

double expectation(const GGEState& state, const Mat& obs, double imag_tol) {
  return expectation(state.density, obs, imag_tol);
}

double von_neumann_entropy(const Mat& rho) {
  EigenDecomposition ed = eig_hermitian(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < ed.eigenvalues.size(); ++i) {
    const double p = std::max(ed.eigenvalues(i), kEigenvalueFloor);
    s -= p * std::log(p);
  }
  return s;
}

double relative_entropy(const Mat& rho, const Mat& sigma) {
  EigenDecomposition es = eig_hermitian(sigma);
  Mat log_sigma = es.eigenvectors *
                  es.eigenvalues.unaryExpr([](double p) {
                    return std::log(std::max(p, kEigenvalueFloor));
                  }).asDiagonal() *
                  es.eigenvectors.adjoint();
  return -von_neumann_entropy(rho) - expectation(rho, log_sigma);
}

SqueezedThermalParams squeezed_thermal_affinities(double beta, double r, double omega) {
  if (beta <= 0.0) throw std::domain_error("squeezed_thermal_affinities: beta must be positive");
  if (omega <= 0.0) throw std::domain_error("squeezed_thermal_affinities: omega must be positive");
  if (!std::isfinite(r)) throw std::domain_error("squeezed_thermal_affinities: r must be finite");
  SqueezedThermalParams out;
  out.beta = beta;
  out.r = r;
  out.omega = omega;
  out.mu = std::tanh(2.0 * r);
  out.alpha = beta * omega * std::sqrt(1.0 - out.mu * out.mu);
  out.nbar = 1.0 / std::expm1(out.alpha);
  out.affinities = {beta, -beta * out.mu};
  return out;
}

}  // namespace nats
