#include "corridor/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "corridor/errors.hpp"

namespace corridor {
namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

double wrap_degrees(double deg) {
  return deg - 360.0 * std::ceil((deg - 180.0) / 360.0);
}

Angles elevation_azimuth(const BaseStation& bs, const Point3D& pt) {
  const double dx = pt.x - bs.x;
  const double dy = pt.y - bs.y;
  const double dh = pt.height - bs.height;
  const double d2 = std::hypot(dx, dy);
  if (d2 == 0.0) {
    const double sign = dh > 0.0 ? 1.0 : (dh < 0.0 ? -1.0 : 0.0);
    return {sign * 90.0, bs.azimuth_deg};
  }
  const double elevation = std::atan(dh / d2) * kRadToDeg;
  const double bearing = std::atan2(dy, dx) * kRadToDeg;
  return {elevation, bs.azimuth_deg + wrap_degrees(bearing - bs.azimuth_deg)};
}

double vertical_gain_db(const AntennaPattern& pattern, double elevation_deg,
                        double tilt_deg) {
  const double off = elevation_deg - tilt_deg;
  return -12.0 / (pattern.theta_3db * pattern.theta_3db) * off * off;
}

double horizontal_gain_db(const AntennaPattern& pattern, double azimuth_deg,
                          double boresight_deg) {
  const double off = azimuth_deg - boresight_deg;
  return -12.0 / (pattern.phi_3db * pattern.phi_3db) * off * off;
}

double antenna_gain_db(const BaseStation& bs, const AntennaPattern& pattern,
                       const Point3D& pt) {
  const Angles a = elevation_azimuth(bs, pt);
  return pattern.a_max + vertical_gain_db(pattern, a.elevation_deg, bs.tilt_deg) +
         horizontal_gain_db(pattern, a.azimuth_deg, bs.azimuth_deg);
}

double pathloss_db(const BaseStation& bs, const Point3D& pt,
                   const LinkClass& link) {
  const double dx = pt.x - bs.x;
  const double dy = pt.y - bs.y;
  const double dh = pt.height - bs.height;
  const double d3 = std::sqrt(dx * dx + dy * dy + dh * dh);
  if (d3 == 0.0) {
    throw DomainError("pathloss: point coincides with base station " +
                      std::to_string(bs.id));
  }
  return link.a + link.b * std::log10(d3);
}

double rss_dbm(const BaseStation& bs, const AntennaPattern& pattern,
               const Point3D& pt, const LinkClass& link) {
  return bs.power_dbm + antenna_gain_db(bs, pattern, pt) -
         pathloss_db(bs, pt, link);
}

double sinr_db(std::size_t n, const Point3D& pt,
               std::span<const BaseStation> all_bs,
               const AntennaPattern& pattern, std::span<const LinkClass> links,
               double sigma2) {
  if (all_bs.empty() || n >= all_bs.size() || links.size() != all_bs.size()) {
    throw ValidationError("sinr_db: station index or link table mismatch");
  }
  if (sigma2 < 0.0) throw ValidationError("sinr_db: sigma2 must be >= 0");
  double interference = sigma2;
  for (std::size_t j = 0; j < all_bs.size(); ++j) {
    if (j == n) continue;
    interference += db_to_linear(rss_dbm(all_bs[j], pattern, pt, links[j]));
  }
  const double signal = rss_dbm(all_bs[n], pattern, pt, links[n]);
  if (interference == 0.0) {
    throw DomainError("sinr_db: zero interference and zero noise");
  }
  return signal - 10.0 * std::log10(interference);
}

double los_probability(const Point3D& pt, const BaseStation& bs) {
  const double d = std::hypot(pt.x - bs.x, pt.y - bs.y);
  if (d <= 18.0) return 1.0;
  return 18.0 / d + (1.0 - 18.0 / d) * std::exp(-d / 63.0);
}

double los_uniform(std::uint64_t seed, std::uint64_t ground_index,
                   std::uint64_t station) {
  const std::uint64_t key =
      splitmix64(seed ^ splitmix64(ground_index ^ splitmix64(station + 1)));
  return static_cast<double>(key >> 11) * 0x1.0p-53;
}

std::vector<std::uint8_t> sample_los_labels(const SampleSet& grid,
                                            std::span<const BaseStation> bss,
                                            std::uint64_t seed) {
  const std::size_t n_bs = bss.size();
  std::vector<std::uint8_t> labels(grid.size() * n_bs, 1);
  for (std::size_t q = 0; q < grid.size(); ++q) {
    const SamplePoint& sp = grid.points[q];
    if (sp.region != kGround) continue;
    const auto g = static_cast<std::uint64_t>(
        sp.ground_index >= 0 ? sp.ground_index : static_cast<int>(q));
    for (std::size_t n = 0; n < n_bs; ++n) {
      const double u = los_uniform(seed, g, n);
      labels[q * n_bs + n] = u <= los_probability(sp.position, bss[n]) ? 1 : 0;
    }
  }
  return labels;
}

LinkClass link_class_for(const SampleSet& samples, std::size_t q, std::size_t n,
                         const LinkConstants& constants) {
  if (samples.points[q].region != kGround) return constants.uav_los;
  if (samples.has_los_labels() && samples.los(q, n)) return constants.gue_los;
  return constants.gue_nlos;
}

}  // namespace corridor
