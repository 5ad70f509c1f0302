#pragma once

// Central finite-difference check of every analytic gradient, partition
// frozen at the best-RSS cells of each random state. The reference is the
// Richardson combination of central differences at steps h and h/2.

#include <cstdint>
#include <string>

#include "corridor/scenario.hpp"

namespace corridor {

struct GradCheckOptions {
  int trials = 100;
  double rel_tol = 1e-5;
  double abs_floor = 1e-9;
  double theta_step = 1e-2;  // degrees
  double rho_step = 1e-2;    // dB
  std::uint64_t seed = 1;
};

struct GradCheckResult {
  int trials = 0;
  long components = 0;
  long failures = 0;
  double worst_excess = 0.0;  // max |a - f| / (rel_tol |f| + abs_floor)
  std::string worst;          // description of the worst component

  bool passed() const { return failures == 0; }
};

// A random small scenario: 3 to 9 stations, 30 to 100 points mixing ground
// and aerial samples, random LoS labels. Tilts and powers are drawn by the
// checker, not here.
struct RandomCase {
  SampleSet samples;
  Deployment deployment;
};
RandomCase random_case(std::uint64_t seed);

// Trials on freshly drawn random cases; each trial checks all seven
// gradients (RSS tilt, and tilt and power for SINR, MP and SM).
GradCheckResult grad_check_random(const GradCheckOptions& options);

// Trials at random states of a given scenario.
GradCheckResult grad_check_scenario(const Scenario& scenario,
                                    const GradCheckOptions& options);

}  // namespace corridor
