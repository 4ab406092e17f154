#include "rotamime/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "rotamime/parallel.hpp"

namespace rotamime {

double seed_point(const MapSpec& spec, SeedKind which) {
  const CriticalPoints cp = critical_points(spec);
  return which == SeedKind::Plus ? cp.plus : cp.minus;
}

std::vector<double> iterate(const MapSpec& spec, double x0, long steps, MapKind which) {
  if (steps < 0) throw DomainError("iterate: negative step count");
  if (!std::isfinite(x0)) throw DomainError("iterate: non-finite start");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  out.push_back(x0);
  double x = x0;
  for (long t = 0; t < steps; ++t) {
    switch (which) {
      case MapKind::F: x = eval_F(spec, x); break;
      case MapKind::G: x = eval_G(spec.offset, x); break;
      case MapKind::Hybrid: x = eval_hybrid(spec, x); break;
    }
    out.push_back(x);
  }
  return out;
}

namespace {

// F^p(z) - z together with the chain-rule derivative product(F') - 1.
struct CycleResidual {
  double h;
  double dh;
};

CycleResidual cycle_residual(const MapSpec& spec, double z, int p) {
  double x = z;
  double d = 1.0;
  for (int s = 0; s < p; ++s) {
    d *= eval_F_deriv(spec, x, 1);
    x = eval_F(spec, x);
  }
  return {x - z, d - 1.0};
}

double cycle_gap(const MapSpec& spec, double z, int p) {
  double x = z;
  for (int s = 0; s < p; ++s) x = eval_F(spec, x);
  return x - z;
}

// Damped Newton on F^p(x) - x; falls back to bisection on a bracketing
// pair when Newton stalls. The derivative stays away from 0 near an
// attracting cycle (multiplier - 1 < 0).
double refine_cycle_point(const MapSpec& spec, double z0, int p, double tol) {
  const double accept = std::max(tol, 5e-16 * static_cast<double>(p));
  double z = z0;
  CycleResidual r = cycle_residual(spec, z, p);
  for (int it = 0; it < 80 && std::fabs(r.h) > accept; ++it) {
    if (r.dh == 0.0 || !std::isfinite(r.dh)) break;
    double step = -r.h / r.dh;
    double znew = z + step;
    CycleResidual rn = cycle_residual(spec, znew, p);
    int halvings = 0;
    while (std::fabs(rn.h) > std::fabs(r.h) && halvings < 50) {
      step *= 0.5;
      znew = z + step;
      rn = cycle_residual(spec, znew, p);
      ++halvings;
    }
    if (std::fabs(rn.h) >= std::fabs(r.h)) break;
    z = znew;
    r = rn;
  }
  if (std::fabs(r.h) <= accept) return z;

  double width = std::max(1e-7, 8.0 * std::fabs(r.h));
  for (int grow = 0; grow < 30 && width < 0.5; ++grow, width *= 4.0) {
    double lo = z - width, hi = z + width;
    double hlo = cycle_gap(spec, lo, p);
    double hhi = cycle_gap(spec, hi, p);
    if ((hlo < 0.0) == (hhi < 0.0)) continue;
    while (hi - lo > 1e-15) {
      const double mid = 0.5 * (lo + hi);
      const double hm = cycle_gap(spec, mid, p);
      if (std::fabs(hm) <= accept) return mid;
      if ((hm < 0.0) == (hlo < 0.0)) {
        lo = mid;
        hlo = hm;
      } else {
        hi = mid;
      }
    }
    const double mid = 0.5 * (lo + hi);
    if (std::fabs(cycle_gap(spec, mid, p)) <= std::max(accept, 1e-11)) return mid;
    break;
  }
  throw NumericError("orbit refinement did not converge");
}

} // namespace

PeriodicOrbit find_attracting_orbit(const MapSpec& spec, double seed,
                                    const OrbitOptions& opts) {
  if (!std::isfinite(seed)) throw DomainError("find_attracting_orbit: non-finite seed");
  double x = seed;
  for (long t = 0; t < opts.transient; ++t) x = eval_F(spec, x);
  if (!std::isfinite(x)) throw NumericError("trajectory diverged");

  const double x0 = x;
  int period = 0;
  for (int j = 1; j <= opts.max_period; ++j) {
    x = eval_F(spec, x);
    if (std::fabs(x - x0) < opts.recurrence_tol) {
      period = j;
      break;
    }
  }
  if (period == 0)
    throw NoOrbitError("no recurrence within max_period (chaotic or long-period regime)");

  double z = refine_cycle_point(spec, x0, period, opts.refine_tol);

  // minimal period: a divisor that already closes the orbit wins
  for (int d = 1; d < period; ++d) {
    if (period % d != 0) continue;
    if (std::fabs(cycle_gap(spec, z, d)) < opts.recurrence_tol * 10.0) {
      period = d;
      z = refine_cycle_point(spec, z, d, opts.refine_tol);
      break;
    }
  }

  PeriodicOrbit orbit;
  orbit.period = period;
  orbit.points.reserve(period);
  double p = z;
  for (int s = 0; s < period; ++s) {
    orbit.points.push_back(p);
    p = eval_F(spec, p);
  }

  orbit.multiplier = 1.0;
  for (double pt : orbit.points) orbit.multiplier *= eval_F_deriv(spec, pt, 1);

  const double n = static_cast<double>(spec.n());
  bool have_critical = true;
  CriticalPoints cp{};
  try {
    cp = critical_points(spec);
  } catch (const NoCriticalPointsError&) {
    have_critical = false; // F is monotone: a single lap
  }
  for (double pt : orbit.points) {
    orbit.basic_indices.push_back(static_cast<long long>(std::floor(pt * n)));
    if (!have_critical)
      orbit.laps.push_back(1);
    else
      orbit.laps.push_back(pt < cp.minus ? 1 : (pt > cp.plus ? 3 : 2));
  }

  orbit.rotation_ok = false;
  if (period == spec.n()) {
    try {
      orbit.rotation_ok = rotation_order_check(orbit.points, spec.k(), spec.n());
    } catch (const DegenerateOrbitError&) {
      orbit.rotation_ok = false;
    }
  }
  return orbit;
}

bool rotation_order_check(const std::vector<double>& points, long long k, long long n) {
  if (static_cast<long long>(points.size()) != n)
    throw DomainError("rotation_order_check: expected exactly n points");
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return points[i] < points[j]; });
  for (std::size_t r = 1; r < order.size(); ++r)
    if (points[order[r]] - points[order[r - 1]] < 1e-12)
      throw DegenerateOrbitError("orbit points coincide within 1e-12");
  std::vector<long long> rank(points.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = static_cast<long long>(r);
  for (long long i = 0; i < n; ++i)
    if (rank[(i + 1) % n] != (rank[i] + k) % n) return false;
  return true;
}

OrbitCertificate orbit_certificate(const MapSpec& spec) {
  const long long n = spec.n();
  const double nn = static_cast<double>(n);
  const double half_cell = 1.0 / (2.0 * nn);
  const CriticalPoints cp = critical_points(spec);

  OrbitCertificate cert;
  cert.lower = cp.plus;

  auto cell_of = [&](double x) { return static_cast<long long>(std::floor(x * nn)); };
  auto lap_of = [&](double x) { return x < cp.minus ? 1 : (x > cp.plus ? 3 : 2); };
  auto fail = [&](std::string why, int step) {
    if (cert.failure.empty()) {
      cert.failure = std::move(why);
      cert.failing_step = step;
    }
  };

  // forward trace of the lower endpoint: x_0 = y+, ..., x_n
  std::vector<double> trace;
  trace.reserve(n + 1);
  trace.push_back(cert.lower);
  for (long long j = 0; j < n; ++j) trace.push_back(eval_F(spec, trace.back()));
  cert.lower_images.assign(trace.begin() + 1, trace.end());
  cert.lower_displacement = trace[n] - trace[0];
  for (long long j = 0; j < n; ++j) cert.basic_trace.push_back(cell_of(trace[j]));

  // the interior of the trace must stay on the increasing laps
  for (long long j = 1; j < n; ++j) {
    if (lap_of(trace[j]) == 2) {
      fail("forward trace enters the middle lap at step " + std::to_string(j),
           static_cast<int>(j));
      cert.valid = false;
      return cert; // structure broken; backward recovery is meaningless
    }
  }

  // left-endpoint distance bookkeeping, including y+ < 1/(2n) at step 0
  for (long long j = 0; j < n; ++j) {
    const double dist = trace[j] - static_cast<double>(cert.basic_trace[j]) / nn;
    if (!(dist < half_cell)) {
      fail("left-endpoint distance bound fails at step " + std::to_string(j),
           static_cast<int>(j));
      break;
    }
  }

  long long enter = -1;
  for (long long j = 1; j < n; ++j) {
    if (cert.basic_trace[j] == -1) {
      enter = j;
      break;
    }
  }
  if (enter < 0) {
    fail("forward trace never reaches the cell left of 0", -1);
    cert.valid = false;
    return cert;
  }

  // Backward recovery of the upper endpoint: its trace passes through y-
  // at step `enter`. Invert F along the increasing branch of each cell of
  // the shared itinerary (the nonlinear cells keep only their outer
  // branches).
  double w = cp.minus;
  for (long long j = enter; j >= 1; --j) {
    const long long cell = cert.basic_trace[j - 1];
    double lo = static_cast<double>(cell) / nn;
    double hi = static_cast<double>(cell + 1) / nn;
    if (cell == 0) lo = cp.plus;
    if (cell == -1) hi = cp.minus;
    const double flo = eval_F(spec, lo);
    const double fhi = eval_F(spec, hi);
    if (!(w >= flo - 1e-12 && w <= fhi + 1e-12))
      throw NumericError("certificate inversion lost its bracket at step " +
                         std::to_string(j));
    while (hi - lo > 1e-13) {
      const double mid = 0.5 * (lo + hi);
      if (eval_F(spec, mid) < w)
        lo = mid;
      else
        hi = mid;
    }
    w = 0.5 * (lo + hi);
  }
  cert.upper = w;

  std::vector<double> up;
  up.reserve(n + 1);
  up.push_back(cert.upper);
  for (long long j = 0; j < n; ++j) up.push_back(eval_F(spec, up.back()));
  cert.upper_images.assign(up.begin() + 1, up.end());
  cert.upper_displacement = up[n] - up[0];

  const double boundary_tol = 1e-9;
  for (long long j = 0; j < n; ++j) {
    if (cell_of(up[j]) != cert.basic_trace[j]) {
      fail("upper trace leaves the shared cell itinerary at step " + std::to_string(j),
           static_cast<int>(j));
      break;
    }
    const bool at_critical = std::fabs(up[j] - cp.minus) <= boundary_tol ||
                             std::fabs(up[j] - cp.plus) <= boundary_tol;
    if (lap_of(up[j]) == 2 && !at_critical) {
      fail("upper trace enters the middle lap at step " + std::to_string(j),
           static_cast<int>(j));
      break;
    }
    // mirrored bookkeeping: distance from the right endpoint of the cell
    const double dist = static_cast<double>(cert.basic_trace[j] + 1) / nn - up[j];
    if (!(dist < half_cell)) {
      fail("right-endpoint distance bound fails at step " + std::to_string(j),
           static_cast<int>(j));
      break;
    }
  }

  if (!(cert.lower_displacement > 0.0))
    fail("n-step displacement at the lower endpoint is not positive", static_cast<int>(n));
  if (!(cert.upper_displacement < 0.0))
    fail("n-step displacement at the upper endpoint is not negative", static_cast<int>(n));

  cert.valid = cert.failure.empty();
  return cert;
}

double basin_fraction(const MapSpec& spec, const PeriodicOrbit& orbit, long n_samples,
                      Interval sample_interval, const BasinOptions& opts) {
  if (n_samples < 1) throw DomainError("basin_fraction: need at least one sample");
  if (orbit.points.empty()) throw DomainError("basin_fraction: empty orbit");

  const double lo = sample_interval.lo;
  const double span = sample_interval.hi - sample_interval.lo;
  const int p = orbit.period;
  const double pt_min = *std::min_element(orbit.points.begin(), orbit.points.end());
  const double pt_max = *std::max_element(orbit.points.begin(), orbit.points.end());

  std::vector<std::uint8_t> captured(static_cast<std::size_t>(n_samples), 0);
  parallel_for(static_cast<std::size_t>(n_samples), opts.jobs, [&](std::size_t s) {
    double x = lo + (static_cast<double>(s) + 0.5) * span / static_cast<double>(n_samples);
    long left = opts.max_iters;
    while (left > 0) {
      if (x >= pt_min - opts.tol && x <= pt_max + opts.tol) {
        std::size_t nearest = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < orbit.points.size(); ++i) {
          const double d = std::fabs(x - orbit.points[i]);
          if (d < best) {
            best = d;
            nearest = i;
          }
        }
        if (best < opts.tol) {
          // captured only if still next to the same point one period later
          double y = x;
          for (int s2 = 0; s2 < p && left > 0; ++s2, --left) y = eval_F(spec, y);
          if (std::fabs(y - orbit.points[nearest]) < opts.tol) {
            captured[s] = 1;
            return;
          }
          x = y;
          continue;
        }
      }
      x = eval_F(spec, x);
      --left;
    }
  });

  long hits = 0;
  for (std::uint8_t c : captured) hits += c;
  return static_cast<double>(hits) / static_cast<double>(n_samples);
}

} // namespace rotamime
