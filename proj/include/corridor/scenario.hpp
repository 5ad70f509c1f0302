#pragma once

// Hexagonal deployments, user regions, the weighted sample grid, and the
// JSON scenario file.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "corridor/config.hpp"
#include "corridor/types.hpp"

namespace corridor {

struct Rect {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;

  double width() const { return x_max - x_min; }
  double depth() const { return y_max - y_min; }
  double area() const { return width() * depth(); }
  bool contains(double x, double y) const {
    return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
  }
};

struct Corridor {
  std::string name;
  Rect area;
  double height = 0.0;
};

enum class LosModel { kNlosGround, kProbabilistic };

struct RegionSpec {
  Rect ground{-750.0, 750.0, -750.0, 750.0};
  double ground_height = 1.5;
  std::vector<Corridor> corridors;
  double mixing_ratio = 0.5;  // weight of the ground population

  void validate() const;
};

// The four corridors of the reference case study.
std::vector<Corridor> case_study_corridors();

Deployment build_hex_deployment(int rings, double isd, double height,
                                const AntennaPattern& pattern, double rho_max);

// Midpoint grid per region. Throws ValidationError on bad steps or when the
// grid ends up empty.
SampleSet build_sample_grid(const RegionSpec& regions, double ground_step,
                            double corridor_step);

struct Scenario {
  Deployment deployment;
  RegionSpec regions;
  ObjectiveSpec objective;
  OptimizerConfig optimizer;
  int rings = 2;
  double isd = 500.0;
  double bs_height = 25.0;
  double ground_step = 25.0;
  double corridor_step = 10.0;
  LosModel los_model = LosModel::kNlosGround;
  std::uint64_t seed = 0;

  // Sample grid with LoS labels attached when the model asks for them.
  SampleSet build_samples() const;
  // Same grid at mixing ratio 1/2: both populations present, used for
  // per-population reporting regardless of the optimization mixture.
  SampleSet build_report_samples() const;
};

// Case-study defaults: 19 sites, ISD 500 m, 25 m masts, 10/65 deg beams,
// 14 dBi, 43 dBm, four corridors, r = 0.5.
Scenario default_scenario();

Scenario scenario_from_json(const nlohmann::json& doc);
nlohmann::json scenario_to_json(const Scenario& scenario);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace corridor
