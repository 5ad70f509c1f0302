#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "corridor/scenario.hpp"

namespace fixtures {

// A reduced hexagonal scenario: one corridor along the west edge and a
// coarse grid, cheap enough for unit tests.
inline corridor::Scenario small_scenario(int rings, double mixing_ratio,
                                         double ground_step = 100.0,
                                         double corridor_step = 40.0) {
  corridor::Scenario s = corridor::default_scenario();
  s.rings = rings;
  s.deployment = corridor::build_hex_deployment(rings, s.isd, s.bs_height,
                                                corridor::AntennaPattern{}, 43.0);
  const double half = 250.0 + 500.0 * rings;
  s.regions.ground = {-half, half, -half, half};
  s.regions.corridors = {{"west", {-half - 40.0, -half, -half - 200.0, half + 200.0}, 150.0},
                         {"north", {-half, half, half, half + 40.0}, 120.0}};
  s.regions.mixing_ratio = mixing_ratio;
  s.ground_step = ground_step;
  s.corridor_step = corridor_step;
  return s;
}

inline std::vector<double> uniform(std::size_t n, double lo, double hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

}  // namespace fixtures
