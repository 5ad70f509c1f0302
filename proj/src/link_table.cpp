#include "corridor/link_table.hpp"

#include "corridor/channel.hpp"

namespace corridor {

LinkTable::LinkTable(const SampleSet& samples, const Deployment& dep)
    : num_points_(samples.size()),
      num_stations_(dep.size()),
      vertical_coeff_(12.0 / (dep.pattern.theta_3db * dep.pattern.theta_3db)),
      elevation_(num_points_ * num_stations_),
      static_gain_(num_points_ * num_stations_),
      weights_(num_points_) {
  for (std::size_t q = 0; q < num_points_; ++q) {
    const SamplePoint& sp = samples.points[q];
    weights_[q] = sp.weight;
    for (std::size_t n = 0; n < num_stations_; ++n) {
      const BaseStation& bs = dep.base_stations[n];
      const Angles a = elevation_azimuth(bs, sp.position);
      const LinkClass link = link_class_for(samples, q, n, dep.pathloss);
      elevation_[q * num_stations_ + n] = a.elevation_deg;
      static_gain_[q * num_stations_ + n] =
          dep.pattern.a_max +
          horizontal_gain_db(dep.pattern, a.azimuth_deg, bs.azimuth_deg) -
          pathloss_db(bs, sp.position, link);
    }
  }
}

}  // namespace corridor
