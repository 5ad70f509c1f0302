#include "corridor/kernels.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "corridor/channel.hpp"
#include "corridor/errors.hpp"
#include "corridor/parallel.hpp"

namespace corridor::kernels {
namespace {

constexpr double kDbToNeper = std::numbers::ln10 / 10.0;

double rss_at(const LinkTable& t, std::size_t q, std::size_t n, State s) {
  const double off = t.elevation(q, n) - s.tilts[n];
  return s.powers[n] + t.static_gain(q, n) - t.vertical_coeff() * off * off;
}

struct Link {
  double rss_dbm;     // serving RSS
  double sinr_db;
  double sinr_lin;
  double denom;       // interference + noise, linear
};

// Fills lin[] with every station's linear RSS at q and returns the serving
// link quantities for station i.
Link link_at(const LinkTable& t, std::size_t q, std::size_t i, State s,
             double sigma2, double* lin) {
  const std::size_t n_bs = t.num_stations();
  for (std::size_t n = 0; n < n_bs; ++n) lin[n] = std::exp(kDbToNeper * rss_at(t, q, n, s));
  double denom = sigma2;
  for (std::size_t n = 0; n < n_bs; ++n) {
    if (n != i) denom += lin[n];
  }
  if (!(denom > 0.0)) {
    throw DomainError("SINR undefined at point " + std::to_string(q) +
                      ": no interference and zero noise");
  }
  const double rss = rss_at(t, q, i, s);
  return {rss, rss - 10.0 * std::log10(denom), lin[i] / denom, denom};
}

// Metric of one served point and its sensitivity d(metric)/d(RSS_i in dB).
struct MetricTerm {
  double value;
  double sensitivity;
};

MetricTerm metric_term(const ObjectiveSpec& spec, const Link& link) {
  const double s = link.sinr_lin;
  switch (spec.kind) {
    case ObjectiveKind::kRss:
      return {link.rss_dbm, 1.0};
    case ObjectiveKind::kSinr:
      return {link.sinr_db, 1.0};
    case ObjectiveKind::kMaxProduct: {
      // -ln(mu + 1/(s + nu)) = ln(s + nu) - ln(1 + mu (s + nu))
      const double x = s + spec.nu;
      const double log_x = spec.nu == 0.0 ? kDbToNeper * link.sinr_db : std::log(x);
      const double value = log_x - std::log1p(spec.mu * x);
      const double sens = kDbToNeper * s / (x * (1.0 + spec.mu * x));
      return {value, sens};
    }
    case ObjectiveKind::kSoftMaxMin: {
      const double x = s + spec.nu;
      const double e = std::exp(spec.alpha / std::pow(x, spec.xi));
      const double sens =
          kDbToNeper * spec.alpha * spec.xi * s / std::pow(x, spec.xi + 1.0) * e;
      return {-e, sens};
    }
  }
  return {0.0, 0.0};
}

// Weighted RSS of point q at its server i, and the tilt-gradient term.
double rss_terms(const LinkTable& t, std::size_t q, std::size_t i, State s,
                 double& theta_term) {
  const double w = t.weights()[q];
  theta_term = w * (2.0 * t.vertical_coeff()) * (t.elevation(q, i) - s.tilts[i]);
  return w * rss_at(t, q, i, s);
}

// Per-point contribution of an SINR-family objective. Writes the weighted
// gradient terms for every station into the rows when requested. lin is
// scratch of size N.
double point_terms(const LinkTable& t, const ObjectiveSpec& spec,
                   std::size_t q, std::size_t i, State s, unsigned need,
                   double* theta_row, double* rho_row, double* lin) {
  const std::size_t n_bs = t.num_stations();
  const double w = t.weights()[q];
  const double two_c = 2.0 * t.vertical_coeff();

  const Link link = link_at(t, q, i, s, spec.sigma2, lin);
  const MetricTerm term = metric_term(spec, link);
  if (need != kValue) {
    const double own = w * term.sensitivity;
    const double cross = own / link.denom;
    for (std::size_t n = 0; n < n_bs; ++n) {
      const double d_rss = n == i ? own : -cross * lin[n];
      if (theta_row != nullptr) {
        theta_row[n] = d_rss * two_c * (t.elevation(q, n) - s.tilts[n]);
      }
      if (rho_row != nullptr) rho_row[n] = d_rss;
    }
  }
  return w * term.value;
}

void check_inputs(const LinkTable& t, std::span<const int> assignment, State s) {
  if (assignment.size() != t.num_points()) {
    throw ValidationError("partition size does not match the sample set");
  }
  if (s.tilts.size() != t.num_stations() || s.powers.size() != t.num_stations()) {
    throw ValidationError("state size does not match the deployment");
  }
}

}  // namespace

Evaluation evaluate_serial(const LinkTable& table, const ObjectiveSpec& spec,
                           std::span<const int> assignment, State state,
                           unsigned need) {
  check_inputs(table, assignment, state);
  const std::size_t n_bs = table.num_stations();
  const bool want_theta = (need & kGradTheta) != 0;
  const bool want_rho = (need & kGradRho) != 0;

  std::vector<double> lin(n_bs), theta_row(n_bs), rho_row(n_bs);
  std::vector<CompensatedSum> theta_acc(want_theta ? n_bs : 0);
  std::vector<CompensatedSum> rho_acc(want_rho ? n_bs : 0);
  CompensatedSum value;
  const bool own_only = spec.kind == ObjectiveKind::kRss;
  for (std::size_t q = 0; q < table.num_points(); ++q) {
    const auto i = static_cast<std::size_t>(assignment[q]);
    if (own_only) {
      // Other columns would only receive zeros, which leave a compensated
      // sum bit-identical; skip them.
      double theta_term = 0.0;
      value.add(rss_terms(table, q, i, state, theta_term));
      if (want_theta) theta_acc[i].add(theta_term);
      if (want_rho) rho_acc[i].add(table.weights()[q]);
      continue;
    }
    value.add(point_terms(table, spec, q, i, state, need,
                          want_theta ? theta_row.data() : nullptr,
                          want_rho ? rho_row.data() : nullptr, lin.data()));
    for (std::size_t n = 0; n < theta_acc.size(); ++n) theta_acc[n].add(theta_row[n]);
    for (std::size_t n = 0; n < rho_acc.size(); ++n) rho_acc[n].add(rho_row[n]);
  }

  Evaluation out;
  out.value = value.value();
  for (const auto& a : theta_acc) out.grad_theta.push_back(a.value());
  for (const auto& a : rho_acc) out.grad_rho.push_back(a.value());
  return out;
}

Evaluation evaluate_parallel(const LinkTable& table, const ObjectiveSpec& spec,
                             std::span<const int> assignment, State state,
                             unsigned need, Workspace& ws) {
  check_inputs(table, assignment, state);
  const std::size_t n_pts = table.num_points();
  const std::size_t n_bs = table.num_stations();
  const bool want_theta = (need & kGradTheta) != 0;
  const bool want_rho = (need & kGradRho) != 0;

  ws.metric.resize(n_pts);

  if (spec.kind == ObjectiveKind::kRss) {
    // One gradient term per point, scattered to its serving column in point
    // order afterwards, exactly as the serial kernel accumulates it.
    ws.theta_rows.resize(n_pts);
    const auto n = static_cast<long long>(n_pts);
#pragma omp parallel for schedule(static)
    for (long long qi = 0; qi < n; ++qi) {
      const auto q = static_cast<std::size_t>(qi);
      ws.metric[q] = rss_terms(table, q, static_cast<std::size_t>(assignment[q]), state,
                               ws.theta_rows[q]);
    }
    std::vector<CompensatedSum> theta_acc(want_theta ? n_bs : 0);
    std::vector<CompensatedSum> rho_acc(want_rho ? n_bs : 0);
    CompensatedSum value;
    for (std::size_t q = 0; q < n_pts; ++q) {
      const auto i = static_cast<std::size_t>(assignment[q]);
      value.add(ws.metric[q]);
      if (want_theta) theta_acc[i].add(ws.theta_rows[q]);
      if (want_rho) rho_acc[i].add(table.weights()[q]);
    }
    Evaluation out;
    out.value = value.value();
    for (const auto& a : theta_acc) out.grad_theta.push_back(a.value());
    for (const auto& a : rho_acc) out.grad_rho.push_back(a.value());
    return out;
  }

  ws.theta_rows.resize(want_theta ? n_pts * n_bs : 0);
  ws.rho_rows.resize(want_rho ? n_pts * n_bs : 0);

  // Exceptions must not escape the parallel region; record and rethrow.
  bool failed = false;
  std::string failure;
  const auto n = static_cast<long long>(n_pts);
#pragma omp parallel
  {
    std::vector<double> lin(n_bs);
#pragma omp for schedule(static)
    for (long long qi = 0; qi < n; ++qi) {
      const auto q = static_cast<std::size_t>(qi);
      try {
        ws.metric[q] = point_terms(
            table, spec, q, static_cast<std::size_t>(assignment[q]), state, need,
            want_theta ? ws.theta_rows.data() + q * n_bs : nullptr,
            want_rho ? ws.rho_rows.data() + q * n_bs : nullptr, lin.data());
      } catch (const std::exception& e) {
#pragma omp critical(corridor_kernel_error)
        {
          if (!failed) failure = e.what();
          failed = true;
        }
      }
    }
  }
  if (failed) throw DomainError(failure);

  Evaluation out;
  CompensatedSum value;
  for (std::size_t q = 0; q < n_pts; ++q) value.add(ws.metric[q]);
  out.value = value.value();

  auto reduce_columns = [&](const std::vector<double>& rows, std::vector<double>& dst) {
    dst.assign(n_bs, 0.0);
    const auto cols = static_cast<long long>(n_bs);
#pragma omp parallel for schedule(static)
    for (long long c = 0; c < cols; ++c) {
      CompensatedSum acc;
      for (std::size_t q = 0; q < n_pts; ++q) {
        acc.add(rows[q * n_bs + static_cast<std::size_t>(c)]);
      }
      dst[static_cast<std::size_t>(c)] = acc.value();
    }
  };
  if (want_theta) reduce_columns(ws.theta_rows, out.grad_theta);
  if (want_rho) reduce_columns(ws.rho_rows, out.grad_rho);
  return out;
}

namespace {

int best_station(const LinkTable& t, std::size_t q, State s) {
  int best = 0;
  double best_rss = rss_at(t, q, 0, s);
  for (std::size_t n = 1; n < t.num_stations(); ++n) {
    const double r = rss_at(t, q, n, s);
    if (r > best_rss) {
      best_rss = r;
      best = static_cast<int>(n);
    }
  }
  return best;
}

}  // namespace

void assign_serial(const LinkTable& table, State state, std::span<int> out) {
  for (std::size_t q = 0; q < table.num_points(); ++q) {
    out[q] = best_station(table, q, state);
  }
}

void assign_parallel(const LinkTable& table, State state, std::span<int> out) {
  const auto n = static_cast<long long>(table.num_points());
#pragma omp parallel for schedule(static)
  for (long long q = 0; q < n; ++q) {
    out[static_cast<std::size_t>(q)] =
        best_station(table, static_cast<std::size_t>(q), state);
  }
}

void point_metrics_all(const LinkTable& table, const ObjectiveSpec& spec,
                       std::size_t q, State state, std::span<double> out) {
  const std::size_t n_bs = table.num_stations();
  if (spec.kind == ObjectiveKind::kRss) {
    for (std::size_t m = 0; m < n_bs; ++m) out[m] = rss_at(table, q, m, state);
    return;
  }
  std::vector<double> lin(n_bs);
  for (std::size_t m = 0; m < n_bs; ++m) {
    out[m] = metric_term(spec, link_at(table, q, m, state, spec.sigma2, lin.data())).value;
  }
}

void point_reports(const LinkTable& table, double sigma2,
                   std::span<const int> assignment, State state,
                   std::span<PointReport> out) {
  const std::size_t n_bs = table.num_stations();
  const auto n = static_cast<long long>(table.num_points());
  bool failed = false;
  std::string failure;
#pragma omp parallel
  {
    std::vector<double> lin(n_bs);
#pragma omp for schedule(static)
    for (long long qi = 0; qi < n; ++qi) {
      const auto q = static_cast<std::size_t>(qi);
      try {
        const Link link = link_at(table, q, static_cast<std::size_t>(assignment[q]),
                                  state, sigma2, lin.data());
        out[q] = {link.rss_dbm, link.sinr_db};
      } catch (const std::exception& e) {
#pragma omp critical(corridor_kernel_error)
        {
          if (!failed) failure = e.what();
          failed = true;
        }
      }
    }
  }
  if (failed) throw DomainError(failure);
}

}  // namespace corridor::kernels
