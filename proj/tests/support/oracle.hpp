#pragma once

// Test-only reference model. Everything is recomputed from raw geometry in
// long double with no shared code from the library: angles, gains,
// pathloss, the per-point metric, direct summation of the objectives, and
// the closed-form gradients written term by term (own-cell integral minus
// the sum over the other cells).

#include <cmath>
#include <cstddef>
#include <vector>

#include "corridor/config.hpp"
#include "corridor/types.hpp"

namespace oracle {

using Real = long double;
inline constexpr Real kPi = 3.141592653589793238462643383279502884L;
inline constexpr Real kLn10 = 2.302585092994045684017991454684364208L;

inline Real deg(Real rad) { return rad * 180.0L / kPi; }

struct Angles {
  Real elevation;
  Real azimuth_offset;  // relative to boresight, (-180, 180]
};

inline Angles angles(const corridor::BaseStation& bs, const corridor::Point3D& pt) {
  const Real dx = static_cast<Real>(pt.x) - bs.x;
  const Real dy = static_cast<Real>(pt.y) - bs.y;
  const Real dh = static_cast<Real>(pt.height) - bs.height;
  const Real d2 = std::sqrt(dx * dx + dy * dy);
  if (d2 == 0.0L) return {dh > 0 ? 90.0L : (dh < 0 ? -90.0L : 0.0L), 0.0L};
  Real off = deg(std::atan2(dy, dx)) - bs.azimuth_deg;
  while (off > 180.0L) off -= 360.0L;
  while (off <= -180.0L) off += 360.0L;
  return {deg(std::atan(dh / d2)), off};
}

// Link constants chosen from the region tag and the optional LoS label.
inline corridor::LinkClass link(const corridor::SampleSet& s, std::size_t q, std::size_t n,
                                const corridor::LinkConstants& c) {
  if (s.points[q].region != corridor::kGround) return c.uav_los;
  if (s.has_los_labels() && s.los_labels[q * s.los_columns + n] != 0) return c.gue_los;
  return c.gue_nlos;
}

struct Table {
  std::size_t points = 0;
  std::size_t stations = 0;
  std::vector<Real> rss;        // dBm, row-major
  std::vector<Real> elevation;  // degrees

  Real rss_at(std::size_t q, std::size_t n) const { return rss[q * stations + n]; }
  Real lin(std::size_t q, std::size_t n) const {
    return std::pow(10.0L, rss_at(q, n) / 10.0L);
  }
  Real elev(std::size_t q, std::size_t n) const { return elevation[q * stations + n]; }
};

// RSS of every (point, station) pair at the given tilts and powers.
inline Table table(const corridor::SampleSet& s, const corridor::Deployment& dep,
                   const std::vector<double>& tilts, const std::vector<double>& powers) {
  Table t;
  t.points = s.size();
  t.stations = dep.size();
  const Real th3 = dep.pattern.theta_3db;
  const Real ph3 = dep.pattern.phi_3db;
  for (std::size_t q = 0; q < t.points; ++q) {
    const corridor::Point3D& p = s.points[q].position;
    for (std::size_t n = 0; n < t.stations; ++n) {
      const corridor::BaseStation& bs = dep.base_stations[n];
      const Angles a = angles(bs, p);
      const Real v = a.elevation - tilts[n];
      const Real gain = dep.pattern.a_max - 12.0L * v * v / (th3 * th3) -
                        12.0L * a.azimuth_offset * a.azimuth_offset / (ph3 * ph3);
      const Real dx = static_cast<Real>(p.x) - bs.x;
      const Real dy = static_cast<Real>(p.y) - bs.y;
      const Real dh = static_cast<Real>(p.height) - bs.height;
      const Real d3 = std::sqrt(dx * dx + dy * dy + dh * dh);
      const corridor::LinkClass lc = link(s, q, n, dep.pathloss);
      t.rss.push_back(powers[n] + gain - (lc.a + lc.b * std::log10(d3)));
      t.elevation.push_back(a.elevation);
    }
  }
  return t;
}

inline Real interference(const Table& t, std::size_t q, std::size_t i, Real sigma2) {
  Real sum = sigma2;
  for (std::size_t j = 0; j < t.stations; ++j) {
    if (j != i) sum += t.lin(q, j);
  }
  return sum;
}

inline Real sinr_lin(const Table& t, std::size_t q, std::size_t i, Real sigma2) {
  return t.lin(q, i) / interference(t, q, i, sigma2);
}

inline Real metric(const corridor::ObjectiveSpec& spec, const Table& t, std::size_t q,
                   std::size_t i) {
  using K = corridor::ObjectiveKind;
  if (spec.kind == K::kRss) return t.rss_at(q, i);
  const Real s = sinr_lin(t, q, i, spec.sigma2);
  switch (spec.kind) {
    case K::kSinr:
      return 10.0L * std::log10(s);
    case K::kMaxProduct:
      return -std::log(spec.mu + 1.0L / (s + spec.nu));
    case K::kSoftMaxMin:
      return -std::exp(spec.alpha / std::pow(s + spec.nu, static_cast<Real>(spec.xi)));
    default:
      return 0.0L;
  }
}

inline Real objective(const corridor::ObjectiveSpec& spec, const corridor::SampleSet& s,
                      const Table& t, const std::vector<int>& cell) {
  Real sum = 0.0L;
  for (std::size_t q = 0; q < t.points; ++q) {
    sum += s.points[q].weight * metric(spec, t, q, static_cast<std::size_t>(cell[q]));
  }
  return sum;
}

// Per-point weighting factors of the closed forms. "own" multiplies the
// own-cell integrand, "cross" the interference integrand (before the
// RSS_lin(n) / (sum_{j != i} RSS_lin(j) + sigma2) factor), both in the
// power-derivative convention: tilt derivatives add 24/theta3^2 (RSS, SINR)
// or 2.4 ln10 / theta3^2 (MP, SM, where ln10/10 is already in the power
// form) times (theta_{n,q} - theta_n).
struct Factors {
  Real own;
  Real cross;
};

inline Factors factors(const corridor::ObjectiveSpec& spec, Real s) {
  using K = corridor::ObjectiveKind;
  const Real k = kLn10 / 10.0L;
  switch (spec.kind) {
    case K::kRss:
    case K::kSinr:
      return {1.0L, 1.0L};
    case K::kMaxProduct: {
      const Real den = (s + spec.nu) * (1.0L + spec.mu * (s + spec.nu));
      return {s * k / den, s * k / den};
    }
    case K::kSoftMaxMin: {
      const Real x = s + spec.nu;
      const Real e = std::exp(spec.alpha / std::pow(x, static_cast<Real>(spec.xi)));
      const Real f = spec.alpha * spec.xi * s * k / std::pow(x, static_cast<Real>(spec.xi) + 1) * e;
      return {f, f};
    }
  }
  return {0.0L, 0.0L};
}

// d Phi / d theta_n for every n.
inline std::vector<Real> grad_theta(const corridor::ObjectiveSpec& spec,
                                    const corridor::SampleSet& s, const Table& t,
                                    const std::vector<int>& cell,
                                    const std::vector<double>& tilts, Real theta_3db) {
  using K = corridor::ObjectiveKind;
  std::vector<Real> g(t.stations, 0.0L);
  const Real c = 24.0L / (theta_3db * theta_3db);
  for (std::size_t n = 0; n < t.stations; ++n) {
    Real own = 0.0L, cross = 0.0L;
    for (std::size_t q = 0; q < t.points; ++q) {
      const auto i = static_cast<std::size_t>(cell[q]);
      const Real w = s.points[q].weight;
      const Real off = t.elev(q, n) - tilts[n];
      if (spec.kind == K::kRss) {
        if (i == n) own += w * off;
        continue;
      }
      const Factors f = factors(spec, sinr_lin(t, q, i, spec.sigma2));
      if (i == n) {
        own += w * f.own * off;
      } else {
        cross += w * f.cross * off * t.lin(q, n) / interference(t, q, i, spec.sigma2);
      }
    }
    g[n] = c * (own - cross);
  }
  return g;
}

// d Phi / d rho_n for every n (not defined for the RSS objective).
inline std::vector<Real> grad_rho(const corridor::ObjectiveSpec& spec,
                                  const corridor::SampleSet& s, const Table& t,
                                  const std::vector<int>& cell) {
  std::vector<Real> g(t.stations, 0.0L);
  for (std::size_t n = 0; n < t.stations; ++n) {
    Real own = 0.0L, cross = 0.0L;
    for (std::size_t q = 0; q < t.points; ++q) {
      const auto i = static_cast<std::size_t>(cell[q]);
      const Real w = s.points[q].weight;
      const Real sl = sinr_lin(t, q, i, spec.sigma2);
      const Factors f = factors(spec, sl);
      if (i == n) {
        own += w * f.own;
      } else {
        // RSS_lin(n) * SINR_lin(i) / RSS_lin(i)
        cross += w * f.cross * t.lin(q, n) * sl / t.lin(q, i);
      }
    }
    g[n] = own - cross;
  }
  return g;
}

// Brute-force best-RSS association, lowest index on ties.
inline std::vector<int> argmax_rss(const Table& t) {
  std::vector<int> cell(t.points, 0);
  for (std::size_t q = 0; q < t.points; ++q) {
    for (std::size_t n = 1; n < t.stations; ++n) {
      if (t.rss_at(q, n) > t.rss_at(q, static_cast<std::size_t>(cell[q]))) {
        cell[q] = static_cast<int>(n);
      }
    }
  }
  return cell;
}

}  // namespace oracle
