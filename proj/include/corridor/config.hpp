#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace corridor {

enum class ObjectiveKind { kRss, kSinr, kMaxProduct, kSoftMaxMin };

// Performance function and its hyperparameters. sigma2 is linear noise power
// in the same convention as 10^(RSS_dBm / 10), i.e. milliwatts.
struct ObjectiveSpec {
  ObjectiveKind kind = ObjectiveKind::kRss;
  double sigma2 = 3.981071705534973e-11;  // -104 dBm
  double mu = 0.1;
  double nu = 0.1;
  double alpha = 1.0;
  double xi = 0.5;

  void validate() const;
};

double dbm_to_mw(double dbm);

enum class Algorithm { kMaxRssVat, kMaxSinrPaVat, kMpPaVat, kSmmPaVat };

std::string_view to_string(Algorithm algorithm);
std::string_view to_string(ObjectiveKind kind);
std::optional<Algorithm> parse_algorithm(std::string_view name);
ObjectiveKind objective_kind(Algorithm algorithm);

struct OptimizerConfig {
  Algorithm algorithm = Algorithm::kMaxRssVat;
  double eta0_theta = 0.01;
  double eta0_rho = 0.01;
  double kappa = 0.999;
  double eps1 = 1e-8;
  double eps2 = 1e-8;
  double eps3 = 1e-8;
  double rho_max = 43.0;
  int max_outer = 500;
  int max_inner = 5000;
  std::uint64_t seed = 0;
  double init_tilt = 0.0;
  // Unset: rho_max for Max-RSS-VAT, 0 dBm otherwise.
  std::optional<double> init_power;
  double inactive_threshold_dbm = -20.0;

  double initial_power() const;
  void validate() const;
};

}  // namespace corridor
