#pragma once

// The four performance functions and their gradients with respect to tilts
// and powers, evaluated with the partition held fixed.

#include <memory>
#include <span>
#include <vector>

#include "corridor/config.hpp"
#include "corridor/kernels.hpp"
#include "corridor/link_table.hpp"
#include "corridor/partition.hpp"
#include "corridor/types.hpp"

namespace corridor {

// Per-station partial derivatives: objective units per degree for tilts,
// per dB for powers.
using GradientVector = std::vector<double>;

enum class EvalMode { kSerial, kParallel };

// Caches the geometry of one (samples, deployment) pair and evaluates any
// objective at arbitrary tilts and powers. Not safe for concurrent calls on
// one instance (it owns scratch space); create one per thread instead.
class Evaluator {
 public:
  Evaluator(const SampleSet& samples, const Deployment& dep,
            EvalMode mode = EvalMode::kParallel);

  kernels::Evaluation evaluate(const ObjectiveSpec& spec, const Partition& partition,
                               std::span<const double> tilts,
                               std::span<const double> powers, unsigned need) const;

  Partition assign(std::span<const double> tilts, std::span<const double> powers) const;

  const LinkTable& table() const { return *table_; }
  EvalMode mode() const { return mode_; }
  void set_mode(EvalMode mode) { mode_ = mode; }

 private:
  std::shared_ptr<const LinkTable> table_;
  EvalMode mode_;
  mutable kernels::Workspace workspace_;
};

// Convenience forms reading tilts and powers from the deployment.
double eval_objective(const ObjectiveSpec& spec, const Partition& partition,
                      const SampleSet& samples, const Deployment& dep);
GradientVector grad_theta(const ObjectiveSpec& spec, const Partition& partition,
                          const SampleSet& samples, const Deployment& dep);
// Throws UnsupportedOperation for the RSS objective, whose optimal powers
// are simply rho_max.
GradientVector grad_rho(const ObjectiveSpec& spec, const Partition& partition,
                        const SampleSet& samples, const Deployment& dep);

std::vector<double> tilts_of(const Deployment& dep);
std::vector<double> powers_of(const Deployment& dep);

}  // namespace corridor
