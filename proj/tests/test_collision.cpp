#include "nats/collision.hpp"

#include "nats/bosonic.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace nats;

namespace {

CollisionSetup small_bosonic(int d, double gt) {
  return bosonic_setup(build_fock(d, 1.0), gt);
}

}  // namespace

TEST_CASE("run_collisions") {
  CollisionSetup setup = small_bosonic(20, 0.6);
  SqueezedThermalParams p = squeezed_thermal_affinities(1.5, 0.2, 1.0);

  SUBCASE("equal affinities give an all-zero trajectory") {
    // deep truncation margin so the fixed point holds to rounding
    CollisionSetup clean = small_bosonic(36, 0.6);
    SqueezedThermalParams pc = squeezed_thermal_affinities(2.0, 0.1, 1.0);
    Trajectory traj = run_collisions(clean, pc.affinities, pc.affinities, 5);
    for (const auto& rec : traj.records) {
      for (double j : rec.currents) CHECK(std::abs(j) <= 1e-12);
      CHECK(std::abs(rec.sigma) <= 1e-12);
      CHECK(std::abs(rec.cumulative_sigma) <= 1e-11);
    }
  }
  SUBCASE("a single collision reproduces collide") {
    SqueezedThermalParams hot = squeezed_thermal_affinities(1.45, 0.22, 1.0);
    Trajectory traj = run_collisions(setup, hot.affinities, p.affinities, 1);
    CurrentsResult direct = collide_currents(setup, hot.affinities, p.affinities);
    REQUIRE(traj.records.size() == 1);
    for (size_t k = 0; k < direct.currents.size(); ++k)
      CHECK(traj.records[0].currents[k] == doctest::Approx(direct.currents[k]).epsilon(1e-14));
    CHECK(traj.records[0].sigma == doctest::Approx(direct.sigma).epsilon(1e-14));
  }
  SUBCASE("fresh units accumulate linearly") {
    std::vector<double> lam1 = {1.01, -1.01 * std::tanh(0.4)};
    std::vector<double> lam2 = {1.00, -1.00 * std::tanh(0.4)};
    Trajectory traj = run_collisions(setup, lam1, lam2, 100);
    const auto& last = traj.records.back();
    for (size_t k = 0; k < last.currents.size(); ++k) {
      CHECK(last.cumulative_charge[k] ==
            doctest::Approx(100.0 * traj.records[0].currents[k]).epsilon(1e-10));
    }
    CHECK(last.cumulative_sigma ==
          doctest::Approx(100.0 * traj.records[0].sigma).epsilon(1e-10));
    // entropy accumulation is non-decreasing
    double prev = 0.0;
    for (const auto& rec : traj.records) {
      CHECK(rec.cumulative_sigma >= prev - 1e-12);
      prev = rec.cumulative_sigma;
    }
  }
  SUBCASE("rejects a nonpositive collision count") {
    CHECK_THROWS_AS(run_collisions(setup, p.affinities, p.affinities, 0), std::invalid_argument);
  }
}

TEST_CASE("trajectory CSV serialization") {
  CollisionSetup setup = small_bosonic(12, 0.5);
  SqueezedThermalParams cold = squeezed_thermal_affinities(1.5, 0.1, 1.0);
  SqueezedThermalParams hot = squeezed_thermal_affinities(1.45, 0.12, 1.0);
  Trajectory traj = run_collisions(setup, hot.affinities, cold.affinities, 3);
  std::ostringstream os;
  traj.write_csv(os);
  const std::string text = os.str();
  CHECK(text.rfind("# step", 0) == 0);
  CHECK(text.find("step,J_H,J_A,sigma,cum_H,cum_A,cum_sigma") != std::string::npos);
  // header + column row + 3 data rows
  int lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  CHECK(lines == 5);
}

TEST_CASE("fixed point check") {
  SUBCASE("full swap on identical GGEs") {
    Mat sz(2, 2), sx(2, 2);
    sz << 1, 0, 0, -1;
    sx << 0, 1, 1, 0;
    CollisionSetup setup;
    setup.d1 = setup.d2 = 2;
    setup.charges.push_back({"Sz", sz, sz});
    setup.charges.push_back({"Sx", sx, sx});
    Mat swap = Mat::Zero(4, 4);
    swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1.0;
    setup.unitary = BlockDiagonalUnitary::from_dense(swap);
    CHECK(fixed_point_check(setup, {0.9, 0.4}) <= 1e-14);
  }
  SUBCASE("beam splitter holds the common squeezed thermal state fixed") {
    // residual measured on the projected sector, where the truncated beam
    // splitter is exact
    CollisionSetup setup = small_bosonic(30, 0.7);
    SqueezedThermalParams p = squeezed_thermal_affinities(1.8, 0.2, 1.0);
    CHECK(fixed_point_check(setup, p.affinities) <= 1e-10);
  }
  SUBCASE("states with mismatched squeezing are not fixed") {
    CollisionSetup setup = small_bosonic(24, 0.7);
    SqueezedThermalParams p1 = squeezed_thermal_affinities(1.5, 0.35, 1.0);
    SqueezedThermalParams p2 = squeezed_thermal_affinities(1.5, 0.1, 1.0);
    GGEState g1 = side_gge(setup, 1, p1.affinities);
    GGEState g2 = side_gge(setup, 2, p2.affinities);
    Mat rho = kron(g1.density, g2.density);
    CHECK(max_abs(Mat(setup.unitary.sandwich(rho) - rho)) > 1e-3);
  }
}
