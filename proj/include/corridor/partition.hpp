#pragma once

// Cell partitioning: every sample point is served by the station with the
// strongest RSS. The same rule is optimal for all four objectives.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "corridor/config.hpp"
#include "corridor/kernels.hpp"
#include "corridor/link_table.hpp"
#include "corridor/types.hpp"

namespace corridor {

struct Partition {
  std::vector<int> assignment;  // station index per sample point
  std::uint64_t generation = 0;

  std::size_t size() const { return assignment.size(); }
};

// Fresh value of a process-wide monotone counter.
std::uint64_t next_partition_generation();

Partition assign_best_rss(const SampleSet& samples, const Deployment& dep);
Partition assign_best_rss(const LinkTable& table, kernels::State state);

// Uniformly random assignment, deterministic in seed.
Partition random_partition(std::size_t num_points, std::size_t num_stations,
                           std::uint64_t seed);

// True iff moving any single positive-weight point to another station does
// not increase the objective (comparison slack 1e-12 relative).
bool verify_partition_optimality(const Partition& partition,
                                 const SampleSet& samples, const Deployment& dep,
                                 const ObjectiveSpec& objective);
bool verify_partition_optimality(const Partition& partition,
                                 const LinkTable& table, kernels::State state,
                                 const ObjectiveSpec& objective);

// Total sample weight served by each station.
std::vector<double> cell_weights(const Partition& partition,
                                 const SampleSet& samples,
                                 std::size_t num_stations);

// CSV rows: x,y,z,region_tag,weight,bs_index (1-based station ids).
void write_partition_csv(std::ostream& out, const Partition& partition,
                         const SampleSet& samples);

}  // namespace corridor
