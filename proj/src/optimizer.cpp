#include "corridor/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "corridor/errors.hpp"

namespace corridor {
namespace {

constexpr int kMaxHalvings = 60;

double relative_gain(double before, double after) {
  return (after - before) / std::max(std::abs(before), 1e-12);
}

void require_finite(double v, const std::string& where) {
  if (!std::isfinite(v)) throw NumericalError("non-finite objective " + where);
}

}  // namespace

AscentResult ascend(const BlockFunction& f, std::vector<double>& x, double eta0,
                    double kappa, double eps, int max_inner,
                    const Projector& project) {
  AscentResult res;
  auto [value, grad] = f(x);
  require_finite(value, "at ascent start");
  res.start_value = value;
  double eta = eta0;
  std::vector<double> trial(x.size());

  while (true) {
    if (res.iterations >= max_inner) {
      res.truncated = true;
      break;
    }
    ++res.iterations;
    eta *= kappa;

    double gain = 0.0;
    for (int attempt = 0; attempt <= kMaxHalvings; ++attempt) {
      for (std::size_t k = 0; k < x.size(); ++k) trial[k] = x[k] + eta * grad[k];
      if (project) project(trial);
      if (trial == x) break;
      auto [v, g] = f(trial);
      if (!std::isfinite(v)) {
        // Treat overflow like a rejected step.
        ++res.rejected_steps;
        eta *= 0.5;
        continue;
      }
      if (v < value) {
        ++res.rejected_steps;
        eta *= 0.5;
        continue;
      }
      gain = relative_gain(value, v);
      res.deltas.push_back(v - value);
      x = trial;
      value = v;
      grad = std::move(g);
      break;
    }
    if (!(gain >= eps)) break;
  }
  res.value = value;
  return res;
}

std::string_view to_string(Termination t) {
  return t == Termination::kConverged ? "converged" : "max_outer";
}

namespace {

std::string describe(int outer, std::span<const double> tilts,
                     std::span<const double> powers) {
  std::ostringstream os;
  os << "(outer iteration " << outer << ", tilts [";
  for (std::size_t n = 0; n < tilts.size(); ++n) os << (n ? " " : "") << tilts[n];
  os << "], powers [";
  for (std::size_t n = 0; n < powers.size(); ++n) os << (n ? " " : "") << powers[n];
  os << "])";
  return os.str();
}

OptimizerRun run_alternating(const ObjectiveSpec& spec, bool optimize_power,
                             const Scenario& scenario, const OptimizerConfig& config,
                             const RunOptions& options) {
  config.validate();
  spec.validate();
  const SampleSet samples = scenario.build_samples();
  const Deployment& dep = scenario.deployment;
  const std::size_t n_bs = dep.size();
  if (n_bs == 0) throw ValidationError("deployment has no base stations");
  const Evaluator ev(samples, dep, options.mode);

  std::vector<double> tilts(n_bs, config.init_tilt);
  if (!options.initial_tilts.empty()) {
    if (options.initial_tilts.size() != n_bs) {
      throw ValidationError("initial tilts: expected one value per station");
    }
    tilts = options.initial_tilts;
  }
  std::vector<double> powers(n_bs, optimize_power ? config.initial_power() : config.rho_max);

  OptimizerRun run;
  run.algorithm = config.algorithm;
  run.restart_index = options.restart_index;

  Partition partition = random_partition(samples.size(), n_bs, config.seed);
  double current = ev.evaluate(spec, partition, tilts, powers, kernels::kValue).value;
  require_finite(current, describe(0, tilts, powers));
  run.trace.push_back(current);

  const double outer_eps = optimize_power ? config.eps3 : config.eps2;
  const Projector clamp_power = [&](std::span<double> x) {
    for (double& v : x) v = std::min(v, config.rho_max);
  };

  for (int outer = 1; outer <= config.max_outer; ++outer) {
    partition = ev.assign(tilts, powers);

    const BlockFunction tilt_fn = [&](std::span<const double> t) {
      auto e = ev.evaluate(spec, partition, t, powers,
                           kernels::kValue | kernels::kGradTheta);
      return std::make_pair(e.value, std::move(e.grad_theta));
    };
    const AscentResult ta = ascend(tilt_fn, tilts, config.eta0_theta, config.kappa,
                                   config.eps1, config.max_inner);
    for (std::size_t k = 0; k < ta.deltas.size(); ++k) {
      run.steps.push_back({outer, 't', static_cast<int>(k) + 1, ta.deltas[k]});
    }
    run.inner_iterations += ta.iterations;
    run.truncated_inner_loops += ta.truncated ? 1 : 0;
    double value = ta.value;

    int power_iterations = 0;
    if (optimize_power) {
      const BlockFunction power_fn = [&](std::span<const double> p) {
        auto e = ev.evaluate(spec, partition, tilts, p,
                             kernels::kValue | kernels::kGradRho);
        return std::make_pair(e.value, std::move(e.grad_rho));
      };
      const AscentResult pa = ascend(power_fn, powers, config.eta0_rho, config.kappa,
                                     config.eps2, config.max_inner, clamp_power);
      for (std::size_t k = 0; k < pa.deltas.size(); ++k) {
        run.steps.push_back({outer, 'p', static_cast<int>(k) + 1, pa.deltas[k]});
      }
      run.inner_iterations += pa.iterations;
      run.truncated_inner_loops += pa.truncated ? 1 : 0;
      power_iterations = pa.iterations;
      value = pa.value;
    }
    require_finite(value, describe(outer, tilts, powers));

    run.trace.push_back(value);
    run.outer_iterations = outer;
    if (options.progress) {
      options.progress({options.restart_index, outer, value, ta.iterations,
                        power_iterations});
    }
    const double gain = relative_gain(current, value);
    current = value;
    if (gain < outer_eps) {
      run.termination = Termination::kConverged;
      break;
    }
  }

  run.partition = ev.assign(tilts, powers);
  run.final_objective =
      ev.evaluate(spec, run.partition, tilts, powers, kernels::kValue).value;
  require_finite(run.final_objective, describe(run.outer_iterations, tilts, powers));
  for (double p : powers) run.active.push_back(p >= config.inactive_threshold_dbm);
  run.tilts = std::move(tilts);
  run.powers = std::move(powers);
  return run;
}

}  // namespace

OptimizerRun run_max_rss_vat(const Scenario& scenario, const OptimizerConfig& config,
                             const RunOptions& options) {
  ObjectiveSpec spec = scenario.objective;
  spec.kind = ObjectiveKind::kRss;
  OptimizerConfig c = config;
  c.algorithm = Algorithm::kMaxRssVat;
  return run_alternating(spec, false, scenario, c, options);
}

OptimizerRun run_pa_vat(ObjectiveKind kind, const Scenario& scenario,
                        const OptimizerConfig& config, const RunOptions& options) {
  if (kind == ObjectiveKind::kRss) {
    throw UnsupportedOperation("power allocation needs an SINR-family objective");
  }
  ObjectiveSpec spec = scenario.objective;
  spec.kind = kind;
  OptimizerConfig c = config;
  c.algorithm = kind == ObjectiveKind::kSinr         ? Algorithm::kMaxSinrPaVat
                : kind == ObjectiveKind::kMaxProduct ? Algorithm::kMpPaVat
                                                     : Algorithm::kSmmPaVat;
  return run_alternating(spec, true, scenario, c, options);
}

OptimizerRun run_algorithm(const Scenario& scenario, const RunOptions& options) {
  const OptimizerConfig& c = scenario.optimizer;
  if (c.algorithm == Algorithm::kMaxRssVat) return run_max_rss_vat(scenario, c, options);
  return run_pa_vat(objective_kind(c.algorithm), scenario, c, options);
}

OptimizerRun run_with_restarts(const Scenario& scenario, int restarts,
                               const RunOptions& options) {
  if (restarts < 1) throw ValidationError("restarts must be >= 1");
  OptimizerRun best;
  bool have = false;
  for (int k = 0; k < restarts; ++k) {
    RunOptions opt = options;
    opt.restart_index = k;
    if (k > 0) {
      std::mt19937_64 rng(scenario.optimizer.seed + static_cast<std::uint64_t>(k));
      std::uniform_real_distribution<double> tilt(-15.0, 15.0);
      opt.initial_tilts.resize(scenario.deployment.size());
      for (double& t : opt.initial_tilts) t = tilt(rng);
    }
    OptimizerRun run = run_algorithm(scenario, opt);
    if (!have || run.final_objective > best.final_objective) {
      best = std::move(run);
      have = true;
    }
  }
  return best;
}

}  // namespace corridor
