#pragma once

// Point-parallel evaluation kernels. Every kernel has a serial reference
// and an OpenMP version built from the same per-point routine; reductions
// run in point order with compensated summation, so both return
// bit-identical results.

#include <cstddef>
#include <span>
#include <vector>

#include "corridor/config.hpp"
#include "corridor/link_table.hpp"

namespace corridor::kernels {

enum Need : unsigned {
  kValue = 0,
  kGradTheta = 1u << 0,
  kGradRho = 1u << 1,
};

struct State {
  std::span<const double> tilts;
  std::span<const double> powers;
};

struct Evaluation {
  double value = 0.0;
  std::vector<double> grad_theta;  // per degree; empty unless requested
  std::vector<double> grad_rho;    // per dB; empty unless requested
};

// Scratch buffers reused across parallel evaluations.
struct Workspace {
  std::vector<double> metric;
  std::vector<double> theta_rows;
  std::vector<double> rho_rows;
};

Evaluation evaluate_serial(const LinkTable& table, const ObjectiveSpec& spec,
                           std::span<const int> assignment, State state,
                           unsigned need);
Evaluation evaluate_parallel(const LinkTable& table, const ObjectiveSpec& spec,
                             std::span<const int> assignment, State state,
                             unsigned need, Workspace& ws);

// Best-RSS association, lowest index on ties.
void assign_serial(const LinkTable& table, State state, std::span<int> out);
void assign_parallel(const LinkTable& table, State state, std::span<int> out);

// Metric of point q for every candidate serving station; out has size N.
void point_metrics_all(const LinkTable& table, const ObjectiveSpec& spec,
                       std::size_t q, State state, std::span<double> out);

struct PointReport {
  double rss_dbm = 0.0;
  double sinr_db = 0.0;
};

// RSS and SINR of each point toward its serving station.
void point_reports(const LinkTable& table, double sigma2,
                   std::span<const int> assignment, State state,
                   std::span<PointReport> out);

}  // namespace corridor::kernels
