#include "nats/linalg.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace nats;

TEST_CASE("eig_hermitian on textbook inputs") {
  SUBCASE("identity") {
    EigenDecomposition ed = eig_hermitian(Mat::Identity(2, 2));
    CHECK(ed.eigenvalues(0) == doctest::Approx(1.0));
    CHECK(ed.eigenvalues(1) == doctest::Approx(1.0));
  }
  SUBCASE("already diagonal") {
    Mat m(2, 2);
    m << 3.0, 0.0, 0.0, 1.0;
    EigenDecomposition ed = eig_hermitian(m);
    CHECK(ed.eigenvalues(0) == doctest::Approx(1.0));
    CHECK(ed.eigenvalues(1) == doctest::Approx(3.0));
    // permutation eigenvectors
    CHECK(std::abs(ed.eigenvectors(1, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(ed.eigenvectors(0, 1)) == doctest::Approx(1.0));
  }
  SUBCASE("pauli-x") {
    Mat m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    EigenDecomposition ed = eig_hermitian(m);
    CHECK(ed.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(ed.eigenvalues(1) == doctest::Approx(1.0));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(ed.eigenvectors(0, 0)) == doctest::Approx(inv_sqrt2));
    CHECK(std::abs(ed.eigenvectors(1, 1)) == doctest::Approx(inv_sqrt2));
  }
  SUBCASE("non-square input throws") {
    CHECK_THROWS_AS(eig_hermitian(Mat::Zero(2, 3)), std::invalid_argument);
  }
}

TEST_CASE("eigendecomposition invariants on random Hermitian input") {
  std::mt19937 rng(7);
  Mat m = oracles::random_hermitian(8, rng);
  EigenDecomposition ed = eig_hermitian(m);
  Mat rebuilt = ed.eigenvectors * ed.eigenvalues.asDiagonal() * ed.eigenvectors.adjoint();
  CHECK(max_abs(Mat(rebuilt - m)) <= 1e-10 * max_abs(m));
  Mat gram = ed.eigenvectors.adjoint() * ed.eigenvectors;
  CHECK(max_abs(Mat(gram - Mat::Identity(8, 8))) <= 1e-12);
  for (int i = 1; i < 8; ++i) CHECK(ed.eigenvalues(i) >= ed.eigenvalues(i - 1));
}

TEST_CASE("mat_func_hermitian") {
  SUBCASE("exp acts on the diagonal") {
    Mat m(2, 2);
    m << 0.0, 0.0, 0.0, std::log(2.0);
    Mat e = mat_func_hermitian(m, [](double x) { return std::exp(x); });
    CHECK(e(0, 0).real() == doctest::Approx(1.0));
    CHECK(e(1, 1).real() == doctest::Approx(2.0));
    CHECK(std::abs(e(0, 1)) <= 1e-14);
  }
  SUBCASE("zeroth power is the identity") {
    std::mt19937 rng(3);
    Mat rho = oracles::random_psd_unit_trace(4, rng);
    CHECK(max_abs(Mat(frac_power(rho, 0.0) - Mat::Identity(4, 4))) <= 1e-12);
  }
  SUBCASE("square root composes back to the input") {
    std::mt19937 rng(4);
    Mat rho = oracles::random_psd_unit_trace(4, rng);
    Mat root = frac_power(rho, 0.5);
    CHECK(max_abs(Mat(root * root - rho)) <= 1e-10);
  }
  SUBCASE("hermitian output for real f") {
    std::mt19937 rng(5);
    Mat m = oracles::random_hermitian(6, rng);
    Mat f = mat_func_hermitian(m, [](double x) { return std::tanh(x); });
    CHECK(max_abs(Mat(f - f.adjoint())) <= 1e-12 * std::max(1.0, max_abs(f)));
  }
}

TEST_CASE("fractional power pairing property") {
  std::mt19937 rng(11);
  Mat rho = oracles::random_psd_unit_trace(5, rng);
  for (double y : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
    CHECK(max_abs(Mat(frac_power(rho, y) * frac_power(rho, 1.0 - y) - rho)) <= 1e-10);
  }
}

TEST_CASE("kron") {
  CHECK(max_abs(Mat(kron(Mat::Identity(2, 2), Mat::Identity(2, 2)) - Mat::Identity(4, 4))) == 0.0);
  SUBCASE("diagonal inputs") {
    Mat a(2, 2), b(2, 2);
    a << 1, 0, 0, 2;
    b << 3, 0, 0, 4;
    Mat k = kron(a, b);
    CHECK(k(0, 0).real() == doctest::Approx(3.0));
    CHECK(k(1, 1).real() == doctest::Approx(4.0));
    CHECK(k(2, 2).real() == doctest::Approx(6.0));
    CHECK(k(3, 3).real() == doctest::Approx(8.0));
  }
  SUBCASE("trace is multiplicative") {
    std::mt19937 rng(13);
    Mat a = oracles::random_hermitian(3, rng);
    Mat b = oracles::random_hermitian(3, rng);
    CHECK(kron(a, b).trace().real() ==
          doctest::Approx(a.trace().real() * b.trace().real()).epsilon(1e-12));
  }
}

TEST_CASE("partial_trace") {
  std::mt19937 rng(17);
  Mat rho = oracles::random_psd_unit_trace(3, rng);
  Mat sigma = oracles::random_hermitian(4, rng);

  SUBCASE("factorizes product operators; fixes the index convention") {
    Mat joint = kron(rho, sigma);
    CHECK(max_abs(Mat(partial_trace(joint, 3, 4, 1) - rho * sigma.trace())) <= 1e-12);
    CHECK(max_abs(Mat(partial_trace(joint, 3, 4, 2) - sigma * rho.trace())) <= 1e-12);
  }
  SUBCASE("identity") {
    CHECK(max_abs(Mat(partial_trace(Mat::Identity(4, 4), 2, 2, 1) - 2.0 * Mat::Identity(2, 2))) ==
          0.0);
  }
  SUBCASE("trace preserved under a unitary collision") {
    Mat rho2 = oracles::random_psd_unit_trace(2, rng);
    Mat sig2 = oracles::random_psd_unit_trace(2, rng);
    Mat u = oracles::random_unitary(4, rng);
    Mat evolved = u * kron(rho2, sig2) * u.adjoint();
    Mat reduced = partial_trace(evolved, 2, 2, 1);
    CHECK(reduced.trace().real() == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("dimension mismatch throws") {
    CHECK_THROWS_AS(partial_trace(Mat::Identity(6, 6), 2, 2, 1), std::invalid_argument);
  }
}

TEST_CASE("log_mean") {
  CHECK(log_mean(0.7, 0.7) == doctest::Approx(0.7));
  CHECK(log_mean(1.0, std::exp(1.0)) == doctest::Approx(std::exp(1.0) - 1.0));
  CHECK(log_mean(0.3, 0.0) == 0.0);
  SUBCASE("agrees with quadrature of the y-integral and is symmetric") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> dist(1e-4, 5.0);
    for (int trial = 0; trial < 50; ++trial) {
      const double p = dist(rng), q = dist(rng);
      // composite Simpson over 1000 intervals
      const int n = 1000;
      auto f = [&](double y) { return std::pow(p, y) * std::pow(q, 1.0 - y); };
      double quad = f(0.0) + f(1.0);
      for (int i = 1; i < n; ++i) quad += (i % 2 ? 4.0 : 2.0) * f(double(i) / n);
      quad /= 3.0 * n;
      CHECK(std::abs(log_mean(p, q) - quad) / quad <= 1e-8);
      CHECK(log_mean(p, q) == doctest::Approx(log_mean(q, p)).epsilon(1e-14));
    }
  }
}

TEST_CASE("block diagonal unitary matches dense operations") {
  std::mt19937 rng(29);
  BlockDiagonalUnitary u;
  u.dim = 7;
  u.groups = {{0, 2, 4}, {1, 3}, {5, 6}};
  for (const auto& g : u.groups)
    u.blocks.push_back(oracles::random_unitary(static_cast<int>(g.size()), rng));
  u.validate();
  CHECK(u.unitarity_residual() <= 1e-12);

  Mat dense = u.dense();
  Mat m = oracles::random_hermitian(7, rng);
  CHECK(max_abs(Mat(u.conjugate(m) - dense.adjoint() * m * dense)) <= 1e-12);
  CHECK(max_abs(Mat(u.sandwich(m) - dense * m * dense.adjoint())) <= 1e-12);

  BlockDiagonalUnitary trivial = BlockDiagonalUnitary::from_dense(oracles::random_unitary(5, rng));
  Mat m5 = oracles::random_hermitian(5, rng);
  Mat d5 = trivial.dense();
  CHECK(max_abs(Mat(trivial.conjugate(m5) - d5.adjoint() * m5 * d5)) <= 1e-12);
}

TEST_CASE("product basis transform equals the explicit Kronecker conjugation") {
  std::mt19937 rng(31);
  Mat v1 = oracles::random_unitary(3, rng);
  Mat v2 = oracles::random_unitary(4, rng);
  Mat m = oracles::random_hermitian(12, rng);
  Mat w = kron(v1, v2);
  CHECK(max_abs(Mat(product_basis_transform(m, v1, v2) - w.adjoint() * m * w)) <= 1e-12);
}
