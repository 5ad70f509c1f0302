#include "corridor/partition.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <random>

#include "corridor/errors.hpp"
#include "corridor/report.hpp"

namespace corridor {

std::uint64_t next_partition_generation() {
  static std::atomic<std::uint64_t> counter{0};
  return ++counter;
}

namespace {

struct StateBuffers {
  std::vector<double> tilts;
  std::vector<double> powers;

  explicit StateBuffers(const Deployment& dep) {
    for (const BaseStation& bs : dep.base_stations) {
      tilts.push_back(bs.tilt_deg);
      powers.push_back(bs.power_dbm);
    }
  }
  kernels::State state() const { return {tilts, powers}; }
};

}  // namespace

Partition assign_best_rss(const LinkTable& table, kernels::State state) {
  if (table.num_stations() == 0) {
    throw ValidationError("assign_best_rss: no base stations");
  }
  Partition p;
  p.assignment.resize(table.num_points());
  kernels::assign_parallel(table, state, p.assignment);
  p.generation = next_partition_generation();
  return p;
}

Partition assign_best_rss(const SampleSet& samples, const Deployment& dep) {
  const LinkTable table(samples, dep);
  const StateBuffers buf(dep);
  return assign_best_rss(table, buf.state());
}

Partition random_partition(std::size_t num_points, std::size_t num_stations,
                           std::uint64_t seed) {
  if (num_stations == 0) throw ValidationError("random_partition: no stations");
  std::mt19937_64 rng(seed);
  Partition p;
  p.assignment.resize(num_points);
  for (int& a : p.assignment) {
    a = static_cast<int>(rng() % num_stations);
  }
  p.generation = next_partition_generation();
  return p;
}

bool verify_partition_optimality(const Partition& partition,
                                 const LinkTable& table, kernels::State state,
                                 const ObjectiveSpec& objective) {
  if (partition.size() != table.num_points()) return false;
  const std::size_t n_bs = table.num_stations();
  std::vector<double> metrics(n_bs);
  for (std::size_t q = 0; q < table.num_points(); ++q) {
    if (!(table.weights()[q] > 0.0)) continue;
    const auto assigned = static_cast<std::size_t>(partition.assignment[q]);
    if (assigned >= n_bs) return false;
    kernels::point_metrics_all(table, objective, q, state, metrics);
    const double own = metrics[assigned];
    const double slack = 1e-12 * std::max(1.0, std::abs(own));
    for (std::size_t m = 0; m < n_bs; ++m) {
      if (metrics[m] > own + slack) return false;
    }
  }
  return true;
}

bool verify_partition_optimality(const Partition& partition,
                                 const SampleSet& samples, const Deployment& dep,
                                 const ObjectiveSpec& objective) {
  const LinkTable table(samples, dep);
  const StateBuffers buf(dep);
  return verify_partition_optimality(partition, table, buf.state(), objective);
}

std::vector<double> cell_weights(const Partition& partition,
                                 const SampleSet& samples,
                                 std::size_t num_stations) {
  std::vector<double> w(num_stations, 0.0);
  for (std::size_t q = 0; q < partition.size(); ++q) {
    w[static_cast<std::size_t>(partition.assignment[q])] += samples.points[q].weight;
  }
  return w;
}

void write_partition_csv(std::ostream& out, const Partition& partition,
                         const SampleSet& samples) {
  out << "x,y,z,region_tag,weight,bs_index\n";
  for (std::size_t q = 0; q < partition.size(); ++q) {
    const SamplePoint& sp = samples.points[q];
    out << format_g9(sp.position.x) << ',' << format_g9(sp.position.y) << ','
        << format_g9(sp.position.height) << ',' << region_tag(samples, q) << ','
        << format_g9(sp.weight) << ',' << partition.assignment[q] + 1 << '\n';
  }
}

}  // namespace corridor
