#include "nats/collision.hpp"

#include "nats/config.hpp"

#include <ostream>
#include <stdexcept>

namespace nats {

void Trajectory::write_csv(std::ostream& os) const {
  os << "# step";
  for (const auto& l : charge_labels) os << ", J_" << l;
  os << ", sigma";
  for (const auto& l : charge_labels) os << ", cum_" << l;
  os << ", cum_sigma (charges per collision; sigma in k_B per collision)\n";
  os << "step";
  for (const auto& l : charge_labels) os << ",J_" << l;
  os << ",sigma";
  for (const auto& l : charge_labels) os << ",cum_" << l;
  os << ",cum_sigma\n";
  for (const auto& r : records) {
    os << r.step;
    for (double j : r.currents) os << ',' << format_double(j);
    os << ',' << format_double(r.sigma);
    for (double c : r.cumulative_charge) os << ',' << format_double(c);
    os << ',' << format_double(r.cumulative_sigma) << '\n';
  }
}

Trajectory run_collisions(const CollisionSetup& setup, const std::vector<double>& lambda1,
                          const std::vector<double>& lambda2, int n) {
  if (n < 1) throw std::invalid_argument("run_collisions: need at least one collision");
  Trajectory traj;
  for (const auto& c : setup.charges) traj.charge_labels.push_back(c.label);
  std::vector<double> cum(setup.charges.size(), 0.0);
  double cum_sigma = 0.0;
  for (int step = 1; step <= n; ++step) {
    // fresh units every collision; evaluated literally each time
    CurrentsResult res = collide_currents(setup, lambda1, lambda2);
    if (res.sigma < -1e-12)
      throw std::runtime_error("run_collisions: negative entropy production per collision");
    CollisionRecord rec;
    rec.step = step;
    rec.currents = res.currents;
    rec.sigma = res.sigma;
    for (size_t k = 0; k < cum.size(); ++k) cum[k] += res.currents[k];
    cum_sigma += res.sigma;
    rec.cumulative_charge = cum;
    rec.cumulative_sigma = cum_sigma;
    traj.records.push_back(std::move(rec));
  }
  return traj;
}

double fixed_point_check(const CollisionSetup& setup, const std::vector<double>& lambda) {
  GGEState g1 = side_gge(setup, 1, lambda);
  GGEState g2 = side_gge(setup, 2, lambda);
  Mat rho = kron(g1.density, g2.density);
  Mat diff = setup.unitary.sandwich(rho) - rho;
  if (setup.check_projection.empty()) return max_abs(diff);
  // truncated setups are sector-exact only; measure on the projected block
  double worst = 0.0;
  for (int i : setup.check_projection)
    for (int j : setup.check_projection) worst = std::max(worst, std::abs(diff(i, j)));
  return worst;
}

}  // namespace nats
