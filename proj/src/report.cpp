#include "corridor/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <memory>
#include <numeric>

#include "corridor/errors.hpp"
#include "corridor/parallel.hpp"

namespace corridor {

std::string format_g9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string region_tag(const SampleSet& samples, std::size_t q) {
  const int r = samples.points[q].region;
  if (r == kGround) return "ground";
  return samples.corridor_names.at(static_cast<std::size_t>(r));
}

std::string_view to_string(Population p) {
  return p == Population::kGround ? "ground" : "uav";
}

CdfSeries compute_cdf(std::span<const double> values, std::span<const double> weights,
                      std::span<const bool> filter) {
  if (values.size() != weights.size() || (!filter.empty() && filter.size() != values.size())) {
    throw ValidationError("compute_cdf: input lengths differ");
  }
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (filter.empty() || filter[k]) idx.push_back(k);
  }
  CompensatedSum total;
  for (std::size_t k : idx) total.add(weights[k]);
  if (idx.empty() || !(total.value() > 0.0)) {
    throw ValidationError("compute_cdf: empty population");
  }
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  CdfSeries cdf;
  CompensatedSum running;
  for (std::size_t j = 0; j < idx.size(); ++j) {
    running.add(weights[idx[j]]);
    const double v = values[idx[j]];
    if (j + 1 < idx.size() && values[idx[j + 1]] == v) continue;
    cdf.values.push_back(v);
    cdf.cum_weight.push_back(running.value() / total.value());
  }
  cdf.cum_weight.back() = 1.0;
  return cdf;
}

std::string scenario_digest(const Scenario& scenario) {
  const std::string text = scenario_to_json(scenario).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunReport build_report(const Scenario& scenario, std::span<const double> tilts,
                       std::span<const double> powers, const OptimizerRun* run) {
  const Deployment& dep = scenario.deployment;
  if (tilts.size() != dep.size() || powers.size() != dep.size()) {
    throw ValidationError("configuration has " + std::to_string(tilts.size()) +
                          " tilts and " + std::to_string(powers.size()) +
                          " powers; deployment has " + std::to_string(dep.size()) +
                          " stations");
  }
  RunReport rep;
  rep.scenario_digest = scenario_digest(scenario);
  rep.algorithm = std::string(to_string(scenario.optimizer.algorithm));
  rep.stations = dep.base_stations;
  for (std::size_t n = 0; n < dep.size(); ++n) {
    rep.stations[n].tilt_deg = tilts[n];
    rep.stations[n].power_dbm = powers[n];
    rep.stations[n].active = powers[n] >= scenario.optimizer.inactive_threshold_dbm;
  }
  if (run != nullptr) {
    rep.algorithm = std::string(to_string(run->algorithm));
    rep.trace = run->trace;
    rep.final_objective = run->final_objective;
    rep.termination = std::string(to_string(run->termination));
    rep.outer_iterations = run->outer_iterations;
    rep.inner_iterations = run->inner_iterations;
    rep.truncated_inner_loops = run->truncated_inner_loops;
  }

  rep.samples = scenario.build_report_samples();
  const LinkTable table(rep.samples, dep);
  const kernels::State state{tilts, powers};
  const Partition cells = assign_best_rss(table, state);
  rep.serving = cells.assignment;
  rep.points.resize(rep.samples.size());
  kernels::point_reports(table, scenario.objective.sigma2, rep.serving, state, rep.points);

  const std::size_t n_pts = rep.samples.size();
  std::vector<double> rss(n_pts), sinr(n_pts), w(n_pts);
  std::vector<char> ground(n_pts);
  for (std::size_t q = 0; q < n_pts; ++q) {
    rss[q] = rep.points[q].rss_dbm;
    sinr[q] = rep.points[q].sinr_db;
    w[q] = rep.samples.points[q].weight;
    ground[q] = rep.samples.points[q].region == kGround;
  }
  for (Population pop : {Population::kGround, Population::kUav}) {
    const bool want_ground = pop == Population::kGround;
    std::unique_ptr<bool[]> mask(new bool[n_pts]);
    CompensatedSum mass, rss_sum, sinr_sum;
    for (std::size_t q = 0; q < n_pts; ++q) {
      mask[q] = (ground[q] != 0) == want_ground;
      if (!mask[q]) continue;
      mass.add(w[q]);
      rss_sum.add(w[q] * rss[q]);
      sinr_sum.add(w[q] * sinr[q]);
    }
    if (!(mass.value() > 0.0)) continue;
    PopulationStats st;
    st.weight = mass.value();
    st.mean_rss_dbm = rss_sum.value() / mass.value();
    st.mean_sinr_db = sinr_sum.value() / mass.value();
    rep.populations[pop] = st;
    const std::span<const bool> filter(mask.get(), n_pts);
    const std::string suffix = "_" + std::string(to_string(pop));
    rep.cdfs["rss" + suffix] = compute_cdf(rss, w, filter);
    rep.cdfs["sinr" + suffix] = compute_cdf(sinr, w, filter);
  }
  return rep;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  return out;
}

}  // namespace

void write_config_csv(const std::filesystem::path& path, const RunReport& report) {
  auto out = open_out(path);
  out << "bs_id,x,y,height,azimuth,tilt_deg,power_dbm,active\n";
  for (const BaseStation& bs : report.stations) {
    out << bs.id << ',' << format_g9(bs.x) << ',' << format_g9(bs.y) << ','
        << format_g9(bs.height) << ',' << format_g9(bs.azimuth_deg) << ','
        << format_g9(bs.tilt_deg) << ',' << format_g9(bs.power_dbm) << ','
        << (bs.active ? 1 : 0) << '\n';
  }
}

void write_metrics_csv(const std::filesystem::path& path, const RunReport& report) {
  auto out = open_out(path);
  out << "x,y,z,region,weight,serving_bs,rss_dbm,sinr_db\n";
  for (std::size_t q = 0; q < report.samples.size(); ++q) {
    const SamplePoint& sp = report.samples.points[q];
    out << format_g9(sp.position.x) << ',' << format_g9(sp.position.y) << ','
        << format_g9(sp.position.height) << ',' << region_tag(report.samples, q) << ','
        << format_g9(sp.weight) << ',' << report.serving[q] + 1 << ','
        << format_g9(report.points[q].rss_dbm) << ','
        << format_g9(report.points[q].sinr_db) << '\n';
  }
}

void write_trace_csv(const std::filesystem::path& path, const RunReport& report) {
  auto out = open_out(path);
  out << "outer_iter,objective\n";
  for (std::size_t k = 0; k < report.trace.size(); ++k) {
    out << k << ',' << format_g9(report.trace[k]) << '\n';
  }
}

void write_cdf_csv(const std::filesystem::path& path, const CdfSeries& cdf) {
  auto out = open_out(path);
  out << "value,cum_weight\n";
  for (std::size_t k = 0; k < cdf.values.size(); ++k) {
    out << format_g9(cdf.values[k]) << ',' << format_g9(cdf.cum_weight[k]) << '\n';
  }
}

nlohmann::json report_json(const RunReport& report) {
  using nlohmann::json;
  json stations = json::array();
  for (const BaseStation& bs : report.stations) {
    stations.push_back({{"bs_id", bs.id},
                        {"tilt_deg", bs.tilt_deg},
                        {"power_dbm", bs.power_dbm},
                        {"active", bs.active}});
  }
  json pops = json::object();
  for (const auto& [pop, st] : report.populations) {
    pops[std::string(to_string(pop))] = {{"mean_rss_dbm", st.mean_rss_dbm},
                                         {"mean_sinr_db", st.mean_sinr_db},
                                         {"weight", st.weight}};
  }
  return {{"scenario_digest", report.scenario_digest},
          {"algorithm", report.algorithm},
          {"final_objective", report.final_objective},
          {"trace", report.trace},
          {"termination", report.termination},
          {"outer_iterations", report.outer_iterations},
          {"inner_iterations", report.inner_iterations},
          {"truncated_inner_loops", report.truncated_inner_loops},
          {"wall_seconds", report.wall_seconds},
          {"stations", stations},
          {"populations", pops}};
}

void write_outputs(const std::filesystem::path& dir, const RunReport& report,
                   const Partition& partition, const SampleSet& samples, Emit emit) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ValidationError("cannot create " + dir.string() + ": " + ec.message());
  write_config_csv(dir / "config.csv", report);
  write_metrics_csv(dir / "metrics.csv", report);
  write_trace_csv(dir / "trace.csv", report);
  for (const auto& [key, cdf] : report.cdfs) {
    write_cdf_csv(dir / ("cdf_" + key + ".csv"), cdf);
  }
  {
    auto out = open_out(dir / "partition.csv");
    write_partition_csv(out, partition, samples);
  }
  if (emit == Emit::kJson) {
    auto out = open_out(dir / "report.json");
    out << report_json(report).dump(2) << '\n';
  }
}

}  // namespace corridor
