#include "nats/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace nats {

Mat hermitize(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermitize: matrix not square");
  return 0.5 * (m + m.adjoint());
}

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

EigenDecomposition eig_hermitian(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eig_hermitian: matrix not square");
  Eigen::SelfAdjointEigenSolver<Mat> solver(hermitize(m));
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Mat mat_func_hermitian(const Mat& m, const std::function<double(double)>& f) {
  EigenDecomposition ed = eig_hermitian(m);
  Vec fp(ed.eigenvalues.size());
  for (Eigen::Index i = 0; i < fp.size(); ++i) {
    fp(i) = f(ed.eigenvalues(i));
    if (!std::isfinite(fp(i)))
      throw std::domain_error("mat_func_hermitian: f undefined at an eigenvalue");
  }
  return ed.eigenvectors * fp.asDiagonal() * ed.eigenvectors.adjoint();
}

Mat mat_func_complex(const Mat& m, const std::function<cxd(double)>& f) {
  EigenDecomposition ed = eig_hermitian(m);
  Eigen::VectorXcd fp(ed.eigenvalues.size());
  for (Eigen::Index i = 0; i < fp.size(); ++i) {
    fp(i) = f(ed.eigenvalues(i));
    if (!std::isfinite(fp(i).real()) || !std::isfinite(fp(i).imag()))
      throw std::domain_error("mat_func_complex: f undefined at an eigenvalue");
  }
  return ed.eigenvectors * fp.asDiagonal() * ed.eigenvectors.adjoint();
}

Mat frac_power(const Mat& m, double y) {
  return mat_func_hermitian(m, [y](double p) {
    return std::pow(std::max(p, kEigenvalueFloor), y);
  });
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat partial_trace(const Mat& m, int d1, int d2, int keep) {
  if (m.rows() != Eigen::Index(d1) * d2 || m.cols() != m.rows())
    throw std::invalid_argument("partial_trace: dimension mismatch");
  if (keep == 1) {
    Mat out = Mat::Zero(d1, d1);
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d1; ++j)
        for (int k = 0; k < d2; ++k) out(i, j) += m(i * d2 + k, j * d2 + k);
    return out;
  }
  if (keep == 2) {
    Mat out = Mat::Zero(d2, d2);
    for (int k = 0; k < d2; ++k)
      for (int l = 0; l < d2; ++l)
        for (int i = 0; i < d1; ++i) out(k, l) += m(i * d2 + k, i * d2 + l);
    return out;
  }
  throw std::invalid_argument("partial_trace: keep must be 1 or 2");
}

double log_mean(double p, double q) {
  if (p <= 0.0 || q <= 0.0) return 0.0;
  const double lp = std::log(p), lq = std::log(q);
  if (std::abs(lp - lq) < 1e-12) return 0.5 * (p + q);
  return (p - q) / (lp - lq);
}

BlockDiagonalUnitary BlockDiagonalUnitary::from_dense(Mat u) {
  BlockDiagonalUnitary out;
  out.dim = static_cast<int>(u.rows());
  std::vector<int> all(out.dim);
  for (int i = 0; i < out.dim; ++i) all[i] = i;
  out.groups.push_back(std::move(all));
  out.blocks.push_back(std::move(u));
  return out;
}

void BlockDiagonalUnitary::validate() const {
  std::vector<char> seen(dim, 0);
  if (groups.size() != blocks.size())
    throw std::invalid_argument("BlockDiagonalUnitary: group/block count mismatch");
  for (size_t g = 0; g < groups.size(); ++g) {
    if (blocks[g].rows() != Eigen::Index(groups[g].size()) || blocks[g].rows() != blocks[g].cols())
      throw std::invalid_argument("BlockDiagonalUnitary: block size mismatch");
    for (int idx : groups[g]) {
      if (idx < 0 || idx >= dim || seen[idx])
        throw std::invalid_argument("BlockDiagonalUnitary: partition is not disjoint over 0..dim-1");
      seen[idx] = 1;
    }
  }
  for (int i = 0; i < dim; ++i)
    if (!seen[i]) throw std::invalid_argument("BlockDiagonalUnitary: partition does not cover index set");
}

Mat BlockDiagonalUnitary::dense() const {
  Mat u = Mat::Zero(dim, dim);
  for (size_t g = 0; g < groups.size(); ++g) {
    const auto& idx = groups[g];
    for (size_t a = 0; a < idx.size(); ++a)
      for (size_t b = 0; b < idx.size(); ++b) u(idx[a], idx[b]) = blocks[g](a, b);
  }
  return u;
}

BlockDiagonalUnitary BlockDiagonalUnitary::adjoint() const {
  BlockDiagonalUnitary out;
  out.dim = dim;
  out.groups = groups;
  out.blocks.reserve(blocks.size());
  for (const auto& b : blocks) out.blocks.push_back(b.adjoint());
  return out;
}

double BlockDiagonalUnitary::unitarity_residual() const {
  double worst = 0.0;
  for (const auto& b : blocks) {
    Mat r = b.adjoint() * b - Mat::Identity(b.rows(), b.cols());
    worst = std::max(worst, max_abs(r));
  }
  return worst;
}

namespace {

// result[ga, gb] = L[ga] * M[ga, gb] * R[gb] over all group pairs, where L/R
// pick the per-group block (or its adjoint).
Mat block_sandwich(const BlockDiagonalUnitary& u, const Mat& m, bool left_adjoint) {
  Mat out = Mat::Zero(u.dim, u.dim);
  const size_t ng = u.groups.size();
  for (size_t ga = 0; ga < ng; ++ga) {
    const auto& ia = u.groups[ga];
    for (size_t gb = 0; gb < ng; ++gb) {
      const auto& ib = u.groups[gb];
      Mat sub(ia.size(), ib.size());
      bool nonzero = false;
      for (size_t a = 0; a < ia.size(); ++a)
        for (size_t b = 0; b < ib.size(); ++b) {
          sub(a, b) = m(ia[a], ib[b]);
          nonzero = nonzero || sub(a, b) != cxd(0.0, 0.0);
        }
      if (!nonzero) continue;
      Mat res = left_adjoint ? Mat(u.blocks[ga].adjoint() * sub * u.blocks[gb])
                             : Mat(u.blocks[ga] * sub * u.blocks[gb].adjoint());
      for (size_t a = 0; a < ia.size(); ++a)
        for (size_t b = 0; b < ib.size(); ++b) out(ia[a], ib[b]) = res(a, b);
    }
  }
  return out;
}

}  // namespace

Mat BlockDiagonalUnitary::conjugate(const Mat& m) const {
  if (m.rows() != dim || m.cols() != dim)
    throw std::invalid_argument("BlockDiagonalUnitary::conjugate: dimension mismatch");
  return block_sandwich(*this, m, /*left_adjoint=*/true);
}

Mat BlockDiagonalUnitary::sandwich(const Mat& m) const {
  if (m.rows() != dim || m.cols() != dim)
    throw std::invalid_argument("BlockDiagonalUnitary::sandwich: dimension mismatch");
  return block_sandwich(*this, m, /*left_adjoint=*/false);
}

Mat product_basis_transform(const Mat& m, const Mat& v1, const Mat& v2) {
  const Eigen::Index d1 = v1.rows(), d2 = v2.rows();
  if (m.rows() != d1 * d2 || m.cols() != d1 * d2)
    throw std::invalid_argument("product_basis_transform: dimension mismatch");
  // Stage 1: conjugate every d2 x d2 block with v2.
  Mat stage1(d1 * d2, d1 * d2);
  for (Eigen::Index i = 0; i < d1; ++i)
    for (Eigen::Index j = 0; j < d1; ++j)
      stage1.block(i * d2, j * d2, d2, d2) =
          v2.adjoint() * m.block(i * d2, j * d2, d2, d2) * v2;
  // Stage 2: for each inner entry (r,s), conjugate the d1 x d1 slice with v1.
  Mat out(d1 * d2, d1 * d2);
  Mat slice(d1, d1);
  for (Eigen::Index r = 0; r < d2; ++r)
    for (Eigen::Index s = 0; s < d2; ++s) {
      for (Eigen::Index i = 0; i < d1; ++i)
        for (Eigen::Index j = 0; j < d1; ++j) slice(i, j) = stage1(i * d2 + r, j * d2 + s);
      Mat tr = v1.adjoint() * slice * v1;
      for (Eigen::Index i = 0; i < d1; ++i)
        for (Eigen::Index j = 0; j < d1; ++j) out(i * d2 + r, j * d2 + s) = tr(i, j);
    }
  return out;
}

}  // namespace nats
