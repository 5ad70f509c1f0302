#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "corridor/types.hpp"

namespace corridor {

// Per (point, station) quantities that do not depend on tilts or powers:
// the elevation angle and the static part of the RSS,
//   static = A_max + A_H - L,
// so that RSS = power + static - c * (elevation - tilt)^2 with
// c = 12 / theta_3dB^2. Row-major, points x stations.
class LinkTable {
 public:
  // Throws DomainError if a sample coincides with an antenna.
  LinkTable(const SampleSet& samples, const Deployment& dep);

  std::size_t num_points() const { return num_points_; }
  std::size_t num_stations() const { return num_stations_; }

  double elevation(std::size_t q, std::size_t n) const {
    return elevation_[q * num_stations_ + n];
  }
  double static_gain(std::size_t q, std::size_t n) const {
    return static_gain_[q * num_stations_ + n];
  }
  std::span<const double> elevation_row(std::size_t q) const {
    return {elevation_.data() + q * num_stations_, num_stations_};
  }
  std::span<const double> static_row(std::size_t q) const {
    return {static_gain_.data() + q * num_stations_, num_stations_};
  }
  std::span<const double> weights() const { return weights_; }

  double vertical_coeff() const { return vertical_coeff_; }

 private:
  std::size_t num_points_ = 0;
  std::size_t num_stations_ = 0;
  double vertical_coeff_ = 0.0;
  std::vector<double> elevation_;
  std::vector<double> static_gain_;
  std::vector<double> weights_;
};

}  // namespace corridor
