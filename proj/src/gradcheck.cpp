#include "corridor/gradcheck.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "corridor/objectives.hpp"

namespace corridor {

RandomCase random_case(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uni = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  RandomCase c;
  const int n_bs = pick(3, 9);
  for (int n = 0; n < n_bs; ++n) {
    BaseStation bs;
    bs.id = n + 1;
    bs.x = uni(-300.0, 300.0);
    bs.y = uni(-300.0, 300.0);
    bs.height = 25.0;
    bs.azimuth_deg = uni(-180.0, 180.0);
    c.deployment.base_stations.push_back(bs);
  }
  const int n_pts = pick(30, 100);
  c.samples.corridor_names = {"air"};
  double total = 0.0;
  for (int q = 0; q < n_pts; ++q) {
    SamplePoint sp;
    const bool aerial = uni(0.0, 1.0) < 0.4;
    sp.position = {uni(-500.0, 500.0), uni(-500.0, 500.0), aerial ? uni(80.0, 160.0) : 1.5};
    sp.region = aerial ? 0 : kGround;
    sp.ground_index = aerial ? -1 : q;
    sp.weight = uni(0.1, 1.0);
    total += sp.weight;
    c.samples.points.push_back(sp);
  }
  for (SamplePoint& sp : c.samples.points) sp.weight /= total;
  c.samples.los_columns = static_cast<std::size_t>(n_bs);
  for (int k = 0; k < n_pts * n_bs; ++k) {
    c.samples.los_labels.push_back(uni(0.0, 1.0) < 0.5 ? 1 : 0);
  }
  return c;
}

namespace {

// Central differences at h and h/2 combined to cancel the h^2 term. The
// larger step this allows keeps cancellation error small when |f| is large
// next to the derivative.
template <typename F>
double richardson(const F& f, double x, double h) {
  auto central = [&](double step) { return (f(x + step) - f(x - step)) / (2.0 * step); };
  return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

struct Checker {
  const GradCheckOptions& opt;
  GradCheckResult& res;

  void compare(double analytic, double fd, const std::string& what) {
    ++res.components;
    const double excess = std::abs(analytic - fd) / (opt.rel_tol * std::abs(fd) + opt.abs_floor);
    if (excess > 1.0) ++res.failures;
    if (excess > res.worst_excess) {
      res.worst_excess = excess;
      std::ostringstream os;
      os.precision(12);
      os << what << ": analytic " << analytic << ", finite difference " << fd;
      res.worst = os.str();
    }
  }

  void check_state(const Evaluator& ev, const ObjectiveSpec& base, std::vector<double> tilts,
                   std::vector<double> powers, int trial) {
    const Partition cells = ev.assign(tilts, powers);
    const ObjectiveKind kinds[] = {ObjectiveKind::kRss, ObjectiveKind::kSinr,
                                   ObjectiveKind::kMaxProduct, ObjectiveKind::kSoftMaxMin};
    for (ObjectiveKind kind : kinds) {
      ObjectiveSpec spec = base;
      spec.kind = kind;
      const bool has_rho = kind != ObjectiveKind::kRss;
      const auto e = ev.evaluate(spec, cells, tilts, powers,
                                 kernels::kGradTheta | (has_rho ? kernels::kGradRho : 0u));
      auto value = [&](const std::vector<double>& t, const std::vector<double>& p) {
        return ev.evaluate(spec, cells, t, p, kernels::kValue).value;
      };
      for (std::size_t n = 0; n < tilts.size(); ++n) {
        const std::string tag = "trial " + std::to_string(trial) + " " +
                                std::string(to_string(kind)) + " station " +
                                std::to_string(n + 1);
        const double dt = richardson(
            [&](double x) {
              auto t = tilts;
              t[n] = x;
              return value(t, powers);
            },
            tilts[n], opt.theta_step);
        compare(e.grad_theta[n], dt, tag + " tilt");
        if (!has_rho) continue;
        const double dp = richardson(
            [&](double x) {
              auto p = powers;
              p[n] = x;
              return value(tilts, p);
            },
            powers[n], opt.rho_step);
        compare(e.grad_rho[n], dp, tag + " power");
      }
    }
  }
};

ObjectiveSpec random_spec(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ObjectiveSpec spec;
  spec.sigma2 = u(rng) < 0.5 ? 0.0 : std::pow(10.0, -10.4);
  // Kept near the defaults: with small nu the soft max-min exponent makes
  // |f| so large that no double-precision difference can resolve f'.
  spec.mu = 0.5 * u(rng);
  spec.nu = 0.1 + 0.9 * u(rng);
  spec.alpha = 0.5 + u(rng);
  spec.xi = 0.3 + 0.7 * u(rng);
  return spec;
}

}  // namespace

GradCheckResult grad_check_random(const GradCheckOptions& options) {
  GradCheckResult res;
  Checker checker{options, res};
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> tilt(-30.0, 30.0), power(0.0, 43.0);
  for (int trial = 0; trial < options.trials; ++trial) {
    const RandomCase c = random_case(rng());
    const Evaluator ev(c.samples, c.deployment, EvalMode::kSerial);
    const ObjectiveSpec spec = random_spec(rng);
    std::vector<double> tilts(c.deployment.size()), powers(c.deployment.size());
    for (double& t : tilts) t = tilt(rng);
    for (double& p : powers) p = power(rng);
    checker.check_state(ev, spec, tilts, powers, trial);
    ++res.trials;
  }
  return res;
}

GradCheckResult grad_check_scenario(const Scenario& scenario,
                                    const GradCheckOptions& options) {
  GradCheckResult res;
  Checker checker{options, res};
  const SampleSet samples = scenario.build_samples();
  const Evaluator ev(samples, scenario.deployment);
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> tilt(-30.0, 30.0), power(0.0, 43.0);
  for (int trial = 0; trial < options.trials; ++trial) {
    std::vector<double> tilts(scenario.deployment.size()), powers(tilts.size());
    for (double& t : tilts) t = tilt(rng);
    for (double& p : powers) p = power(rng);
    checker.check_state(ev, scenario.objective, tilts, powers, trial);
    ++res.trials;
  }
  return res;
}

}  // namespace corridor
