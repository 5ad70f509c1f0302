#include <random>
#include <sstream>

#include "doctest.h"

#include "../support/fixtures.hpp"
#include "../support/oracle.hpp"
#include "corridor/gradcheck.hpp"
#include "corridor/kernels.hpp"
#include "corridor/objectives.hpp"
#include "corridor/partition.hpp"

using namespace corridor;

namespace {

struct RandomState {
  RandomCase c;
  std::vector<double> tilts;
  std::vector<double> powers;
};

RandomState random_state(std::uint64_t seed) {
  RandomState s{random_case(seed), {}, {}};
  for (auto& bs : s.c.deployment.base_stations) {
    s.tilts.push_back(0.0);
    s.powers.push_back(0.0);
  }
  s.tilts = fixtures::uniform(s.tilts.size(), -30, 30, seed + 1);
  s.powers = fixtures::uniform(s.powers.size(), 0, 43, seed + 2);
  for (std::size_t n = 0; n < s.tilts.size(); ++n) {
    s.c.deployment.base_stations[n].tilt_deg = s.tilts[n];
    s.c.deployment.base_stations[n].power_dbm = s.powers[n];
  }
  return s;
}

ObjectiveSpec spec_of(ObjectiveKind kind, double sigma2 = 3.981071705534973e-11) {
  ObjectiveSpec s;
  s.kind = kind;
  s.sigma2 = sigma2;
  return s;
}

constexpr ObjectiveKind kKinds[] = {ObjectiveKind::kRss, ObjectiveKind::kSinr,
                                    ObjectiveKind::kMaxProduct, ObjectiveKind::kSoftMaxMin};

}  // namespace

TEST_CASE("best-RSS assignment equals a brute-force argmax") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const RandomState s = random_state(seed);
    const Partition p = assign_best_rss(s.c.samples, s.c.deployment);
    const auto table = oracle::table(s.c.samples, s.c.deployment, s.tilts, s.powers);
    CHECK(p.assignment == oracle::argmax_rss(table));
  }
}

TEST_CASE("a +100 dB station captures every point") {
  // Co-directed stations in front of a ground patch, so that gains differ
  // by far less than 100 dB.
  Deployment dep;
  for (int n = 0; n < 3; ++n) {
    BaseStation bs;
    bs.id = n + 1;
    bs.x = 10.0 * n;
    bs.y = -5.0 * n;
    bs.height = 25;
    bs.tilt_deg = -3.0 * n;
    bs.power_dbm = 30.0 + n;
    dep.base_stations.push_back(bs);
  }
  SampleSet s;
  for (double x = 200; x <= 500; x += 50) {
    for (double y = -100; y <= 100; y += 50) s.points.push_back({{x, y, 1.5}, 1.0, kGround, 0});
  }
  for (std::size_t m = 0; m < 3; ++m) {
    Deployment boosted = dep;
    boosted.base_stations[m].power_dbm += 100.0;
    for (int a : assign_best_rss(s, boosted).assignment) CHECK(a == static_cast<int>(m));
  }
}

TEST_CASE("mirror-symmetric stations split by side, ties to the lower index") {
  Deployment dep;
  BaseStation a;
  a.id = 1;
  a.x = -300;
  a.height = 25;
  a.azimuth_deg = 0;
  a.power_dbm = 40;
  BaseStation b = a;
  b.id = 2;
  b.x = 300;
  b.azimuth_deg = 180;
  dep.base_stations = {a, b};
  SampleSet s;
  for (double x : {-30.0, 0.0, 30.0}) s.points.push_back({{x, 0.0, 1.5}, 1.0 / 3, kGround, 0});
  const Partition p = assign_best_rss(s, dep);
  CHECK(p.assignment == std::vector<int>{0, 0, 1});
}

TEST_CASE("assignment is idempotent and invariant to a common power shift") {
  RandomState s = random_state(21);
  const Partition p1 = assign_best_rss(s.c.samples, s.c.deployment);
  const Partition p2 = assign_best_rss(s.c.samples, s.c.deployment);
  CHECK(p1.assignment == p2.assignment);
  CHECK(p2.generation > p1.generation);
  for (auto& bs : s.c.deployment.base_stations) bs.power_dbm -= 17.25;
  CHECK(assign_best_rss(s.c.samples, s.c.deployment).assignment == p1.assignment);
}

TEST_CASE("best-RSS cells pass the exchange test for all four objectives") {
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const RandomState s = random_state(seed);
    const Partition p = assign_best_rss(s.c.samples, s.c.deployment);
    for (ObjectiveKind kind : kKinds) {
      for (double sigma2 : {0.0, 3.981071705534973e-11}) {
        CHECK(verify_partition_optimality(p, s.c.samples, s.c.deployment, spec_of(kind, sigma2)));
      }
    }
  }
}

TEST_CASE("a point moved to a strictly weaker station fails the exchange test") {
  const RandomState s = random_state(8);
  Partition p = assign_best_rss(s.c.samples, s.c.deployment);
  const auto table = oracle::table(s.c.samples, s.c.deployment, s.tilts, s.powers);
  // Choose the point and the weakest station for it.
  const std::size_t q = 3;
  std::size_t worst = 0;
  for (std::size_t n = 1; n < table.stations; ++n) {
    if (table.rss_at(q, n) < table.rss_at(q, worst)) worst = n;
  }
  p.assignment[q] = static_cast<int>(worst);
  for (ObjectiveKind kind : kKinds) {
    CHECK_FALSE(verify_partition_optimality(p, s.c.samples, s.c.deployment, spec_of(kind)));
  }
}

TEST_CASE("single station: the only partition is optimal") {
  RandomState s = random_state(9);
  s.c.deployment.base_stations.resize(1);
  s.c.samples.los_columns = 0;
  s.c.samples.los_labels.clear();
  Partition p;
  p.assignment.assign(s.c.samples.size(), 0);
  CHECK(verify_partition_optimality(p, s.c.samples, s.c.deployment, spec_of(ObjectiveKind::kRss)));
  CHECK(verify_partition_optimality(p, s.c.samples, s.c.deployment, spec_of(ObjectiveKind::kSinr)));
}

TEST_CASE("pointwise argmax of SINR equals argmax of RSS") {
  for (std::uint64_t seed = 200; seed < 230; ++seed) {
    const RandomState s = random_state(seed);
    const auto table = oracle::table(s.c.samples, s.c.deployment, s.tilts, s.powers);
    const auto by_rss = oracle::argmax_rss(table);
    for (std::size_t q = 0; q < table.points; ++q) {
      std::size_t best = 0;
      for (std::size_t n = 1; n < table.stations; ++n) {
        if (oracle::sinr_lin(table, q, n, 1e-10) > oracle::sinr_lin(table, q, best, 1e-10)) best = n;
      }
      CHECK(static_cast<int>(best) == by_rss[q]);
    }
  }
}

TEST_CASE("random partitions are seeded and in range") {
  const Partition a = random_partition(500, 7, 3);
  const Partition b = random_partition(500, 7, 3);
  CHECK(a.assignment == b.assignment);
  for (int x : a.assignment) {
    CHECK(x >= 0);
    CHECK(x < 7);
  }
  CHECK(random_partition(500, 7, 4).assignment != a.assignment);
}

TEST_CASE("cell weights and CSV export") {
  const RandomState s = random_state(12);
  const Partition p = assign_best_rss(s.c.samples, s.c.deployment);
  const auto w = cell_weights(p, s.c.samples, s.c.deployment.size());
  double total = 0;
  for (double x : w) total += x;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  std::ostringstream out;
  write_partition_csv(out, p, s.c.samples);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,y,z,region_tag,weight,bs_index");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    const auto last = line.substr(line.rfind(',') + 1);
    CHECK(std::stoi(last) == p.assignment[rows - 1] + 1);
  }
  CHECK(rows == s.c.samples.size());
}
