#pragma once

// Geometry, antenna gain, pathloss and link-quality functions between one
// base station and one point. All angles are in degrees.

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "corridor/types.hpp"

namespace corridor {

struct Angles {
  double elevation_deg = 0.0;
  double azimuth_deg = 0.0;  // azimuth_deg - bs.azimuth_deg in (-180, 180]
};

// Wraps an angle difference into (-180, 180]; exactly -180 maps to +180.
double wrap_degrees(double deg);

Angles elevation_azimuth(const BaseStation& bs, const Point3D& pt);

double vertical_gain_db(const AntennaPattern& pattern, double elevation_deg,
                        double tilt_deg);
double horizontal_gain_db(const AntennaPattern& pattern, double azimuth_deg,
                          double boresight_deg);
double antenna_gain_db(const BaseStation& bs, const AntennaPattern& pattern,
                       const Point3D& pt);

// Throws DomainError when the point coincides with the antenna.
double pathloss_db(const BaseStation& bs, const Point3D& pt,
                   const LinkClass& link);

double rss_dbm(const BaseStation& bs, const AntennaPattern& pattern,
               const Point3D& pt, const LinkClass& link);

// SINR of base station n at pt against every other station in all_bs.
// links[j] is the link class between pt and all_bs[j].
double sinr_db(std::size_t n, const Point3D& pt,
               std::span<const BaseStation> all_bs,
               const AntennaPattern& pattern, std::span<const LinkClass> links,
               double sigma2);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// 3GPP UMa ground LoS probability from the 2D distance.
double los_probability(const Point3D& pt, const BaseStation& bs);

// LoS labels for every (point, station) pair, row-major. Ground links draw
// one uniform per pair, keyed by (seed, ground index, station) so the label
// of a ground location does not depend on which other points are present.
// Corridor links are always LoS.
std::vector<std::uint8_t> sample_los_labels(const SampleSet& grid,
                                            std::span<const BaseStation> bss,
                                            std::uint64_t seed);

// The uniform in [0, 1) used for the (ground_index, station) label draw.
double los_uniform(std::uint64_t seed, std::uint64_t ground_index,
                   std::uint64_t station);

// Link class of sample q toward station n, from the region tag and labels.
LinkClass link_class_for(const SampleSet& samples, std::size_t q, std::size_t n,
                         const LinkConstants& constants);

}  // namespace corridor

