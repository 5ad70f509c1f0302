#pragma once

// Alternating optimization: re-partition by best RSS, then gradient ascent
// on the tilts and (for the SINR-family objectives) projected ascent on the
// powers, until the outer relative improvement falls below threshold.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "corridor/config.hpp"
#include "corridor/objectives.hpp"
#include "corridor/partition.hpp"
#include "corridor/scenario.hpp"

namespace corridor {

// Value and gradient of a block objective at x.
using BlockFunction = std::function<std::pair<double, std::vector<double>>(
    std::span<const double> x)>;
// In-place projection onto the feasible set of a block.
using Projector = std::function<void(std::span<double> x)>;

struct AscentResult {
  double start_value = 0.0;
  double value = 0.0;
  int iterations = 0;
  int rejected_steps = 0;
  bool truncated = false;         // hit max_inner
  std::vector<double> deltas;     // accepted improvement per iteration
};

// Gradient ascent with per-step decay eta <- kappa * eta (applied before the
// step), optional projection, and a backtracking guard: a step that lowers
// the objective is discarded and eta halved. Stops once the relative
// improvement of an iteration is below eps.
AscentResult ascend(const BlockFunction& f, std::vector<double>& x, double eta0,
                    double kappa, double eps, int max_inner,
                    const Projector& project = {});

enum class Termination { kConverged, kMaxOuter };
std::string_view to_string(Termination t);

struct StepRecord {
  int outer = 0;
  char block = 't';  // 't' tilts, 'p' powers
  int iteration = 0;
  double delta = 0.0;
};

struct OptimizerRun {
  Algorithm algorithm = Algorithm::kMaxRssVat;
  std::vector<double> tilts;
  std::vector<double> powers;
  std::vector<bool> active;
  Partition partition;      // best-RSS cells of the final state
  double final_objective = 0.0;  // objective with that partition
  std::vector<double> trace;     // trace[0] is the initial random partition
  std::vector<StepRecord> steps;
  Termination termination = Termination::kMaxOuter;
  int outer_iterations = 0;
  int inner_iterations = 0;
  int truncated_inner_loops = 0;
  int restart_index = 0;
};

struct ProgressEvent {
  int restart = 0;
  int outer = 0;
  double objective = 0.0;
  int tilt_iterations = 0;
  int power_iterations = 0;
};

struct RunOptions {
  EvalMode mode = EvalMode::kParallel;
  std::function<void(const ProgressEvent&)> progress;
  // Overrides the configured initial tilts (one per station).
  std::vector<double> initial_tilts;
  int restart_index = 0;
};

OptimizerRun run_max_rss_vat(const Scenario& scenario, const OptimizerConfig& config,
                             const RunOptions& options = {});
// kind must be SINR, MP or SM; hyperparameters come from scenario.objective.
OptimizerRun run_pa_vat(ObjectiveKind kind, const Scenario& scenario,
                        const OptimizerConfig& config, const RunOptions& options = {});

// Dispatches on scenario.optimizer.algorithm.
OptimizerRun run_algorithm(const Scenario& scenario, const RunOptions& options = {});

// Best of k runs by final objective. Run 0 uses the configured initial
// tilts; run j > 0 draws them uniformly in [-15, 15] degrees from the seed.
OptimizerRun run_with_restarts(const Scenario& scenario, int restarts,
                               const RunOptions& options = {});

}  // namespace corridor
