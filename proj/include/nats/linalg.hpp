#pragma once

// Dense complex-matrix primitives shared by every module: Hermitian
// eigendecomposition, matrix functions, fractional powers, tensor products,
// partial traces and the logarithmic mean.

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace nats {

using cxd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Populations below this are clamped before fractional powers / logs; GGE
// spectra decay exponentially and would otherwise underflow to exact zero.
inline constexpr double kEigenvalueFloor = 1e-300;

struct EigenDecomposition {
  Vec eigenvalues;   // ascending
  Mat eigenvectors;  // unitary, columns
};

// (M + M^dag)/2. All Hermitian inputs pass through this at module boundaries
// to absorb round-off drift.
Mat hermitize(const Mat& m);

// max |entry|
double max_abs(const Mat& m);

// Eigendecomposition of a Hermitian matrix. Symmetrizes first; throws on
// non-square input or solver failure.
EigenDecomposition eig_hermitian(const Mat& m);

// V f(p) V^dag for a real scalar function on the spectrum.
Mat mat_func_hermitian(const Mat& m, const std::function<double(double)>& f);

// Same with a complex-valued function (e.g. exp(-i t p) for unitaries).
Mat mat_func_complex(const Mat& m, const std::function<cxd(double)>& f);

// Fractional power of a PSD matrix; eigenvalues clamped at kEigenvalueFloor.
Mat frac_power(const Mat& m, double y);

// Tensor product, subsystem 1 as the slow (row-major) index:
// (A (x) B)[(i,k),(j,l)] = A[i,j] B[k,l].
Mat kron(const Mat& a, const Mat& b);

// Trace out the complement of `keep` (1 or 2) from a (d1*d2)-dim operator
// using the kron index convention above.
Mat partial_trace(const Mat& m, int d1, int d2, int keep);

// (p - q)/(ln p - ln q) with the continuous limits log_mean(p,p) = p and
// log_mean(p,0) = 0. Equals the exact value of the integral
// int_0^1 p^y q^(1-y) dy.
double log_mean(double p, double q);

// Unitary that is block diagonal with respect to a partition of the index
// set. Collision unitaries with conserved sector structure (for instance a
// beam splitter over total-excitation sectors) are stored this way so that
// conjugations cost O(sum of block work) instead of a dense d^3 product.
// A fully dense unitary is the trivial single-group partition.
struct BlockDiagonalUnitary {
  int dim = 0;
  std::vector<std::vector<int>> groups;  // disjoint index lists covering 0..dim-1
  std::vector<Mat> blocks;               // unitary block per group

  static BlockDiagonalUnitary from_dense(Mat u);

  Mat dense() const;
  BlockDiagonalUnitary adjoint() const;

  // U^dag M U
  Mat conjugate(const Mat& m) const;
  // U M U^dag
  Mat sandwich(const Mat& m) const;

  // max |(U^dag U - I)| over blocks
  double unitarity_residual() const;

  void validate() const;  // throws if the partition does not cover 0..dim-1
};

// (V1 (x) V2)^dag M (V1 (x) V2) without forming the Kronecker factor.
Mat product_basis_transform(const Mat& m, const Mat& v1, const Mat& v2);

}  // namespace nats
