#pragma once

// Result export: per-point metrics, population CDFs, configuration and
// trace CSVs, and the JSON run summary.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "corridor/kernels.hpp"
#include "corridor/optimizer.hpp"
#include "corridor/partition.hpp"
#include "corridor/scenario.hpp"

namespace corridor {

// Nine significant digits, the round-trip precision of every export.
std::string format_g9(double v);

// "ground" or the corridor name of sample q.
std::string region_tag(const SampleSet& samples, std::size_t q);

enum class Population { kGround, kUav };
std::string_view to_string(Population p);

struct CdfSeries {
  std::vector<double> values;      // ascending, distinct
  std::vector<double> cum_weight;  // ends at 1
};

// Weighted empirical CDF over the points accepted by the filter (all points
// when the filter is empty). Throws ValidationError if the selected weight
// is zero.
CdfSeries compute_cdf(std::span<const double> values, std::span<const double> weights,
                      std::span<const bool> filter = {});

struct PopulationStats {
  double mean_rss_dbm = 0.0;
  double mean_sinr_db = 0.0;
  double weight = 0.0;  // share of the report grid
};

struct RunReport {
  std::string scenario_digest;
  std::string algorithm;
  std::vector<BaseStation> stations;  // with final tilts, powers, flags
  std::vector<double> trace;
  double final_objective = 0.0;
  std::string termination;
  int outer_iterations = 0;
  int inner_iterations = 0;
  int truncated_inner_loops = 0;
  double wall_seconds = 0.0;

  SampleSet samples;  // report grid
  std::vector<int> serving;
  std::vector<kernels::PointReport> points;
  std::map<Population, PopulationStats> populations;
  std::map<std::string, CdfSeries> cdfs;  // key "<metric>_<population>"
};

std::string scenario_digest(const Scenario& scenario);

// Metrics of a fixed configuration on the scenario's report grid (mixing
// ratio 1/2, so both populations are present whenever corridors exist).
RunReport build_report(const Scenario& scenario, std::span<const double> tilts,
                       std::span<const double> powers,
                       const OptimizerRun* run = nullptr);

void write_config_csv(const std::filesystem::path& path, const RunReport& report);
void write_metrics_csv(const std::filesystem::path& path, const RunReport& report);
void write_trace_csv(const std::filesystem::path& path, const RunReport& report);
void write_cdf_csv(const std::filesystem::path& path, const CdfSeries& cdf);
nlohmann::json report_json(const RunReport& report);

enum class Emit { kCsv, kJson };

// Writes config.csv, metrics.csv, trace.csv, partition.csv and the CDF files
// into dir; report.json as well when emit is kJson.
void write_outputs(const std::filesystem::path& dir, const RunReport& report,
                   const Partition& partition, const SampleSet& samples, Emit emit);

}  // namespace corridor
