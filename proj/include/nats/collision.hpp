#pragma once

// Sequential collisional simulation: streams of fresh GGE units, cumulative
// transported charges and entropy accumulation.

#include "nats/transport.hpp"

#include <iosfwd>
#include <vector>

namespace nats {

struct CollisionRecord {
  int step = 0;
  std::vector<double> currents;
  double sigma = 0.0;
  std::vector<double> cumulative_charge;
  double cumulative_sigma = 0.0;
};

struct Trajectory {
  std::vector<std::string> charge_labels;
  std::vector<CollisionRecord> records;

  // CSV columns: step, J_<label>..., sigma, cum_<label>..., cum_sigma
  void write_csv(std::ostream& os) const;
};

// n independent collisions against fresh identical units. Each collision is
// evaluated literally; with fresh units the per-collision currents are
// constant, so cumulative charge grows linearly.
Trajectory run_collisions(const CollisionSetup& setup, const std::vector<double>& lambda1,
                          const std::vector<double>& lambda2, int n);

// || U (pi (x) pi) U^dag - pi (x) pi ||_max at common affinities.
double fixed_point_check(const CollisionSetup& setup, const std::vector<double>& lambda);

}  // namespace nats
