#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace corridor {

struct Point3D {
  double x = 0.0;
  double y = 0.0;
  double height = 0.0;
};

// One sector antenna. Angles in degrees, power in dBm.
struct BaseStation {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double height = 0.0;
  double azimuth_deg = 0.0;  // [-180, 180]
  double tilt_deg = 0.0;     // [-90, 90], positive = uptilt
  double power_dbm = 0.0;
  bool active = true;  // reporting only
};

struct AntennaPattern {
  double theta_3db = 10.0;  // vertical half-power beamwidth, degrees
  double phi_3db = 65.0;    // horizontal half-power beamwidth, degrees
  double a_max = 14.0;      // boresight gain, dBi
};

enum class LinkKind { kUavLos, kGueLos, kGueNlos };

// Pathloss L = a + b * log10(d3d).
struct LinkClass {
  LinkKind kind = LinkKind::kGueNlos;
  double a = 38.42;
  double b = 30.0;
};

struct LinkConstants {
  LinkClass uav_los{LinkKind::kUavLos, 34.02, 22.0};
  LinkClass gue_los{LinkKind::kGueLos, 34.02, 22.0};
  LinkClass gue_nlos{LinkKind::kGueNlos, 38.42, 30.0};

  const LinkClass& get(LinkKind kind) const {
    switch (kind) {
      case LinkKind::kUavLos:
        return uav_los;
      case LinkKind::kGueLos:
        return gue_los;
      case LinkKind::kGueNlos:
        break;
    }
    return gue_nlos;
  }
};

// Region tag of a sample point: kGround or the index of a corridor.
inline constexpr int kGround = -1;

struct SamplePoint {
  Point3D position;
  double weight = 0.0;
  int region = kGround;
  // Index among ground points (row-major within the ground grid), or -1.
  int ground_index = -1;
};

// Weighted discretization of the user density. Weights sum to one.
struct SampleSet {
  std::vector<SamplePoint> points;
  std::vector<std::string> corridor_names;
  // Optional LoS labels, row-major points x base stations. Empty means no
  // labels: ground links are NLoS, corridor links LoS.
  std::vector<std::uint8_t> los_labels;
  std::size_t los_columns = 0;

  std::size_t size() const { return points.size(); }
  bool has_los_labels() const { return !los_labels.empty(); }
  bool los(std::size_t q, std::size_t n) const {
    return los_labels[q * los_columns + n] != 0;
  }
};

struct Deployment {
  std::vector<BaseStation> base_stations;
  AntennaPattern pattern;
  double rho_max = 43.0;
  LinkConstants pathloss;

  std::size_t size() const { return base_stations.size(); }
};

}  // namespace corridor
