#include "corridor/objectives.hpp"

#include <cmath>
#include <string>

#include "corridor/errors.hpp"
#include "corridor/parallel.hpp"

namespace corridor {

void ObjectiveSpec::validate() const {
  if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) {
    throw ValidationError("objective.sigma2 must be finite and >= 0");
  }
  if (!(mu >= 0.0)) throw ValidationError("objective.mu must be >= 0");
  if (!(nu >= 0.0)) throw ValidationError("objective.nu must be >= 0");
  if (!(alpha > 0.0)) throw ValidationError("objective.alpha must be > 0");
  if (!(xi > 0.0 && xi <= 1.0)) throw ValidationError("objective.xi must be in (0, 1]");
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kMaxRssVat:
      return "max-rss-vat";
    case Algorithm::kMaxSinrPaVat:
      return "max-sinr-pa-vat";
    case Algorithm::kMpPaVat:
      return "mp-pa-vat";
    case Algorithm::kSmmPaVat:
      return "smm-pa-vat";
  }
  return "?";
}

std::string_view to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kRss:
      return "rss";
    case ObjectiveKind::kSinr:
      return "sinr";
    case ObjectiveKind::kMaxProduct:
      return "mp";
    case ObjectiveKind::kSoftMaxMin:
      return "sm";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::kMaxRssVat, Algorithm::kMaxSinrPaVat,
                      Algorithm::kMpPaVat, Algorithm::kSmmPaVat}) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

ObjectiveKind objective_kind(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kMaxRssVat:
      return ObjectiveKind::kRss;
    case Algorithm::kMaxSinrPaVat:
      return ObjectiveKind::kSinr;
    case Algorithm::kMpPaVat:
      return ObjectiveKind::kMaxProduct;
    case Algorithm::kSmmPaVat:
      return ObjectiveKind::kSoftMaxMin;
  }
  return ObjectiveKind::kRss;
}

double OptimizerConfig::initial_power() const {
  if (init_power) return *init_power;
  return algorithm == Algorithm::kMaxRssVat ? rho_max : 0.0;
}

void OptimizerConfig::validate() const {
  auto rate = [](double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ValidationError(std::string("optimizer.") + field + " must be > 0");
    }
  };
  rate(eta0_theta, "eta0_theta");
  rate(eta0_rho, "eta0_rho");
  rate(eps1, "eps1");
  rate(eps2, "eps2");
  rate(eps3, "eps3");
  if (!(kappa > 0.0 && kappa < 1.0)) {
    throw ValidationError("optimizer.kappa must be in (0, 1)");
  }
  if (max_outer < 1) throw ValidationError("optimizer.max_outer must be >= 1");
  if (max_inner < 1) throw ValidationError("optimizer.max_inner must be >= 1");
  if (!std::isfinite(rho_max)) throw ValidationError("optimizer.rho_max must be finite");
  if (!(init_tilt >= -90.0 && init_tilt <= 90.0)) {
    throw ValidationError("optimizer.init_tilt must be in [-90, 90]");
  }
  if (!(initial_power() <= rho_max)) {
    throw ValidationError("optimizer.init_power must be <= rho_max");
  }
}

Evaluator::Evaluator(const SampleSet& samples, const Deployment& dep, EvalMode mode)
    : table_(std::make_shared<const LinkTable>(samples, dep)), mode_(mode) {}

kernels::Evaluation Evaluator::evaluate(const ObjectiveSpec& spec,
                                        const Partition& partition,
                                        std::span<const double> tilts,
                                        std::span<const double> powers,
                                        unsigned need) const {
  if (spec.kind == ObjectiveKind::kRss && (need & kernels::kGradRho) != 0) {
    throw UnsupportedOperation(
        "power gradient of the RSS objective is not defined: optimal powers are rho_max");
  }
  const kernels::State state{tilts, powers};
  // One worker: the serial kernel gives the same bits without row buffers.
  if (mode_ == EvalMode::kSerial || max_threads() == 1) {
    return kernels::evaluate_serial(*table_, spec, partition.assignment, state, need);
  }
  return kernels::evaluate_parallel(*table_, spec, partition.assignment, state, need,
                                    workspace_);
}

Partition Evaluator::assign(std::span<const double> tilts,
                            std::span<const double> powers) const {
  if (mode_ == EvalMode::kSerial) {
    Partition p;
    p.assignment.resize(table_->num_points());
    kernels::assign_serial(*table_, {tilts, powers}, p.assignment);
    p.generation = next_partition_generation();
    return p;
  }
  return assign_best_rss(*table_, {tilts, powers});
}

std::vector<double> tilts_of(const Deployment& dep) {
  std::vector<double> out;
  for (const BaseStation& bs : dep.base_stations) out.push_back(bs.tilt_deg);
  return out;
}

std::vector<double> powers_of(const Deployment& dep) {
  std::vector<double> out;
  for (const BaseStation& bs : dep.base_stations) out.push_back(bs.power_dbm);
  return out;
}

namespace {

kernels::Evaluation evaluate_once(const ObjectiveSpec& spec, const Partition& partition,
                                  const SampleSet& samples, const Deployment& dep,
                                  unsigned need) {
  const Evaluator ev(samples, dep);
  const auto tilts = tilts_of(dep);
  const auto powers = powers_of(dep);
  return ev.evaluate(spec, partition, tilts, powers, need);
}

}  // namespace

double eval_objective(const ObjectiveSpec& spec, const Partition& partition,
                      const SampleSet& samples, const Deployment& dep) {
  return evaluate_once(spec, partition, samples, dep, kernels::kValue).value;
}

GradientVector grad_theta(const ObjectiveSpec& spec, const Partition& partition,
                          const SampleSet& samples, const Deployment& dep) {
  return evaluate_once(spec, partition, samples, dep, kernels::kGradTheta).grad_theta;
}

GradientVector grad_rho(const ObjectiveSpec& spec, const Partition& partition,
                        const SampleSet& samples, const Deployment& dep) {
  return evaluate_once(spec, partition, samples, dep, kernels::kGradRho).grad_rho;
}

}  // namespace corridor
