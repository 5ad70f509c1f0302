#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "../support/fixtures.hpp"
#include "corridor/errors.hpp"
#include "corridor/report.hpp"

using namespace corridor;
namespace fs = std::filesystem;

namespace {

std::vector<std::vector<std::string>> read_csv(const fs::path& p, std::string* header) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);
  *header = line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("corridor_report_" + name);
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST_CASE("CDF of a constant is a unit step") {
  const std::vector<double> v(5, -70.0), w(5, 0.2);
  const CdfSeries c = compute_cdf(v, w);
  REQUIRE(c.values.size() == 1);
  CHECK(c.values[0] == -70.0);
  CHECK(c.cum_weight[0] == 1.0);
}

TEST_CASE("CDF of two half-weight atoms") {
  const std::vector<double> v{3.0, 1.0}, w{0.5, 0.5};
  const CdfSeries c = compute_cdf(v, w);
  CHECK(c.values == std::vector<double>{1.0, 3.0});
  CHECK(c.cum_weight == std::vector<double>{0.5, 1.0});
}

TEST_CASE("CDF matches a sort-and-scan oracle and respects the filter") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> level(0, 40);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 20 + trial * 7;
    std::vector<double> v(n), w(n);
    std::unique_ptr<bool[]> keep(new bool[n]);
    for (std::size_t k = 0; k < n; ++k) {
      v[k] = level(rng) * 0.5;  // plenty of ties
      w[k] = u(rng);
      keep[k] = k % 3 != 0;
    }
    const CdfSeries c = compute_cdf(v, w, std::span<const bool>(keep.get(), n));
    // Oracle: for each distinct kept value x, share of kept weight with value <= x.
    long double total = 0;
    for (std::size_t k = 0; k < n; ++k) total += keep[k] ? w[k] : 0;
    std::vector<double> distinct;
    for (std::size_t k = 0; k < n; ++k) if (keep[k]) distinct.push_back(v[k]);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    REQUIRE(c.values == distinct);
    for (std::size_t j = 0; j < distinct.size(); ++j) {
      long double below = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (keep[k] && v[k] <= distinct[j]) below += w[k];
      }
      CHECK(c.cum_weight[j] == doctest::Approx(static_cast<double>(below / total)).epsilon(1e-12));
      if (j > 0) CHECK(c.cum_weight[j] >= c.cum_weight[j - 1]);
    }
    CHECK(c.cum_weight.front() > 0.0);
    CHECK(std::abs(c.cum_weight.back() - 1.0) <= 1e-9);
  }
}

TEST_CASE("CDF of an empty population is rejected") {
  const std::vector<double> v{1.0, 2.0}, w{0.5, 0.5};
  const bool none[] = {false, false};
  CHECK_THROWS_AS(compute_cdf(v, w, none), ValidationError);
  const std::vector<double> zero{0.0, 0.0};
  CHECK_THROWS_AS(compute_cdf(v, zero), ValidationError);
}

TEST_CASE("nine significant digits") {
  CHECK(format_g9(-53.4741234567) == "-53.4741235");
  CHECK(format_g9(43.0) == "43");
  CHECK(format_g9(1e-12) == "1e-12");
}

TEST_CASE("exports: headers, population means and CDF files") {
  const Scenario s = fixtures::small_scenario(1, 0.5);
  const auto tilts = fixtures::uniform(s.deployment.size(), -15, 15, 3);
  const auto powers = fixtures::uniform(s.deployment.size(), -30, 43, 4);
  const RunReport rep = build_report(s, tilts, powers);
  const Partition cells{rep.serving, 0};
  const fs::path dir = scratch("exports");
  write_outputs(dir, rep, cells, rep.samples, Emit::kJson);

  std::string header;
  const auto config = read_csv(dir / "config.csv", &header);
  CHECK(header == "bs_id,x,y,height,azimuth,tilt_deg,power_dbm,active");
  REQUIRE(config.size() == s.deployment.size());
  for (std::size_t n = 0; n < config.size(); ++n) {
    CHECK(std::stod(config[n][5]) == doctest::Approx(tilts[n]).epsilon(1e-8));
    CHECK(config[n][7] == (powers[n] >= -20.0 ? "1" : "0"));
  }

  const auto metrics = read_csv(dir / "metrics.csv", &header);
  CHECK(header == "x,y,z,region,weight,serving_bs,rss_dbm,sinr_db");
  REQUIRE(metrics.size() == rep.samples.size());
  // Means recomputed from the exported per-point values.
  long double gw = 0, grss = 0, gsinr = 0, uw = 0, urss = 0, usinr = 0;
  for (const auto& row : metrics) {
    const long double w = std::stold(row[4]);
    const bool ground = row[3] == "ground";
    (ground ? gw : uw) += w;
    (ground ? grss : urss) += w * std::stold(row[6]);
    (ground ? gsinr : usinr) += w * std::stold(row[7]);
  }
  const auto& g = rep.populations.at(Population::kGround);
  const auto& u = rep.populations.at(Population::kUav);
  CHECK(g.mean_rss_dbm == doctest::Approx(static_cast<double>(grss / gw)).epsilon(1e-9));
  CHECK(g.mean_sinr_db == doctest::Approx(static_cast<double>(gsinr / gw)).epsilon(1e-9));
  CHECK(u.mean_rss_dbm == doctest::Approx(static_cast<double>(urss / uw)).epsilon(1e-9));
  CHECK(u.mean_sinr_db == doctest::Approx(static_cast<double>(usinr / uw)).epsilon(1e-9));

  for (const char* key : {"rss_ground", "rss_uav", "sinr_ground", "sinr_uav"}) {
    const auto rows = read_csv(dir / (std::string("cdf_") + key + ".csv"), &header);
    CHECK(header == "value,cum_weight");
    REQUIRE(!rows.empty());
    CHECK(std::stod(rows.front()[1]) > 0.0);
    CHECK(std::abs(std::stod(rows.back()[1]) - 1.0) <= 1e-9);
  }
  read_csv(dir / "trace.csv", &header);
  CHECK(header == "outer_iter,objective");
  read_csv(dir / "partition.csv", &header);
  CHECK(header == "x,y,z,region_tag,weight,bs_index");
  CHECK(fs::exists(dir / "report.json"));
  fs::remove_all(dir);
}

TEST_CASE("report rejects a configuration of the wrong size") {
  const Scenario s = fixtures::small_scenario(1, 0.5);
  const std::vector<double> tilts(3, 0.0), powers(3, 43.0);
  CHECK_THROWS_AS(build_report(s, tilts, powers), ValidationError);
}

TEST_CASE("scenario digest tracks content") {
  Scenario a = fixtures::small_scenario(1, 0.5);
  Scenario b = a;
  CHECK(scenario_digest(a) == scenario_digest(b));
  b.regions.mixing_ratio = 0.4;
  CHECK(scenario_digest(a) != scenario_digest(b));
  CHECK(scenario_digest(a).size() == 16);
}
