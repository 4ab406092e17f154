#include "rotamime/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "rotamime/parallel.hpp"

namespace rotamime {

namespace {

std::string dec17_local(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace

std::vector<ScanRecord> scan(const Rational& offset, KernelTag kernel, Interval a_range,
                             double a_step, const ScanOptions& opts) {
  if (!(a_step > 0.0)) throw DomainError("scan: step must be positive");
  if (!(a_range.hi >= a_range.lo)) throw DomainError("scan: empty range");
  if (opts.n_samples < 1) throw DomainError("scan: need at least one sample");
  if (opts.transient < 0) throw DomainError("scan: negative transient");

  const long count =
      static_cast<long>(std::floor((a_range.hi - a_range.lo) / a_step + 1e-9)) + 1;
  const double threshold = kernel_threshold(kernel);
  double (*step)(const MapSpec&, double) = opts.use_hybrid ? &eval_hybrid : &eval_F;

  std::vector<ScanRecord> records(static_cast<std::size_t>(2 * count));
  parallel_for(records.size(), opts.jobs, [&](std::size_t idx) {
    const long gi = static_cast<long>(idx / 2);
    ScanRecord rec;
    rec.a = a_range.lo + static_cast<double>(gi) * a_step;
    rec.seed = (idx % 2 == 0) ? SeedKind::Minus : SeedKind::Plus;
    if (!(rec.a > threshold)) {
      rec.skipped = true;
      records[idx] = std::move(rec);
      return;
    }
    const MapSpec spec = make_spec(kernel, rec.a, offset.num, offset.den);
    double x = seed_point(spec, rec.seed);
    for (long t = 0; t < opts.transient; ++t) x = step(spec, x);

    rec.attractor_points.reserve(opts.n_samples);
    rec.attractor_points.push_back(x);
    const double x0 = x;
    int period = 0;
    const long iters = std::max<long>(opts.max_period, opts.n_samples - 1);
    for (long j = 1; j <= iters; ++j) {
      x = step(spec, x);
      if (j < opts.n_samples) rec.attractor_points.push_back(x);
      if (period == 0 && j <= opts.max_period && std::fabs(x - x0) < opts.recurrence_tol)
        period = static_cast<int>(j);
      if (period != 0 && j >= opts.n_samples - 1) break;
    }
    if (period != 0) rec.detected_period = period;
    records[idx] = std::move(rec);
  });
  return records;
}

const char* to_string(FareyVerdict v) {
  switch (v) {
    case FareyVerdict::ParentLargerDen: return "parent_larger_den";
    case FareyVerdict::ParentSmallerDen: return "parent_smaller_den";
    case FareyVerdict::NotNeighbor: return "not_neighbor";
  }
  return "?";
}

namespace {

// Per-step advance of the spatial rank when it is the same at every step;
// 0 otherwise. For an orbit ordered like a rotation this equals the number
// of third-lap points, without the ambiguity of points sitting within the
// critical plateau.
int constant_spatial_advance(const std::vector<double>& points) {
  const std::size_t q = points.size();
  if (q < 2) return 0;
  std::vector<std::size_t> order(q);
  for (std::size_t i = 0; i < q; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return points[i] < points[j]; });
  std::vector<std::size_t> rank(q);
  for (std::size_t r = 0; r < q; ++r) rank[order[r]] = r;
  const std::size_t advance = (rank[1 % q] + q - rank[0]) % q;
  for (std::size_t i = 1; i < q; ++i)
    if ((rank[(i + 1) % q] + q - rank[i]) % q != advance) return 0;
  return static_cast<int>(advance);
}

} // namespace

int effective_third_lap_count(const MapSpec& spec, const PeriodicOrbit& orbit) {
  const int advance = constant_spatial_advance(orbit.points);
  if (advance > 0) return advance;
  // not rotation-ordered: count laps directly, attributing at most one
  // point inside the critical plateau (width scale 2/a) to the third lap
  int third = 0;
  for (int lap : orbit.laps)
    if (lap == 3) ++third;
  try {
    const CriticalPoints cp = critical_points(spec);
    const double near = 2.0 / spec.kernel.steepness;
    int near_critical = 0;
    for (std::size_t i = 0; i < orbit.points.size(); ++i) {
      if (orbit.laps[i] != 2) continue;
      const double d = std::min(std::fabs(orbit.points[i] - cp.plus),
                                std::fabs(orbit.points[i] - cp.minus));
      if (d < near) ++near_critical;
    }
    return third + std::min(near_critical, 1);
  } catch (const NoCriticalPointsError&) {
    return third;
  }
}

std::vector<PeriodicWindow> detect_windows(const std::vector<ScanRecord>& records,
                                           const Rational& offset, KernelTag kernel) {
  std::vector<PeriodicWindow> windows;
  if (records.size() < 2) return windows;
  const std::size_t grid = records.size() / 2;

  auto agreed_period = [&](std::size_t gi) -> std::optional<int> {
    const ScanRecord& minus = records[2 * gi];
    const ScanRecord& plus = records[2 * gi + 1];
    if (minus.skipped || plus.skipped) return std::nullopt;
    if (!minus.detected_period || !plus.detected_period) return std::nullopt;
    if (*minus.detected_period != *plus.detected_period) return std::nullopt;
    return minus.detected_period;
  };

  const auto parents = [&]() -> std::optional<std::pair<Rational, Rational>> {
    try {
      return farey_parents(offset);
    } catch (const DomainError&) {
      return std::nullopt;
    }
  }();

  std::size_t run_start = 0;
  std::optional<int> run_q;
  auto flush = [&](std::size_t run_end) { // [run_start, run_end)
    if (!run_q || run_end - run_start < 3) return;
    PeriodicWindow w;
    w.a_range = Interval{records[2 * run_start].a, records[2 * (run_end - 1)].a};
    w.q = *run_q;
    w.p = 0;
    w.verdict = FareyVerdict::NotNeighbor;
    const std::size_t mid = run_start + (run_end - 1 - run_start) / 2;
    try {
      const MapSpec spec = make_spec(kernel, records[2 * mid].a, offset.num, offset.den);
      const PeriodicOrbit orbit = find_attracting_orbit(spec, seed_point(spec, SeedKind::Plus));
      w.p = effective_third_lap_count(spec, orbit);
      if (w.p > 0 && parents) {
        const Rational pq = make_rational(w.p, w.q);
        if (pq == parents->second)
          w.verdict = FareyVerdict::ParentLargerDen;
        else if (pq == parents->first)
          w.verdict = FareyVerdict::ParentSmallerDen;
      }
    } catch (const Error&) {
      // midpoint refinement failed; keep the window with p = 0
    }
    windows.push_back(w);
  };

  for (std::size_t gi = 0; gi < grid; ++gi) {
    const std::optional<int> q = agreed_period(gi);
    if (q != run_q) {
      flush(gi);
      run_start = gi;
      run_q = q;
    }
  }
  flush(grid);
  return windows;
}

double birth_parameter(const Rational& offset, KernelTag kernel, int target_period,
                       Interval bracket, const OrbitOptions& opts) {
  if (target_period < 1) throw DomainError("birth_parameter: bad target period");
  const double threshold = kernel_threshold(kernel);
  auto settles = [&](double a) -> bool {
    if (!(a > threshold)) return false;
    try {
      const MapSpec spec = make_spec(kernel, a, offset.num, offset.den);
      const PeriodicOrbit plus = find_attracting_orbit(spec, seed_point(spec, SeedKind::Plus), opts);
      if (plus.period != target_period) return false;
      const PeriodicOrbit minus = find_attracting_orbit(spec, seed_point(spec, SeedKind::Minus), opts);
      return minus.period == target_period;
    } catch (const NoOrbitError&) {
      return false;
    } catch (const NoCriticalPointsError&) {
      return false;
    }
  };

  double lo = bracket.lo, hi = bracket.hi;
  if (settles(lo))
    throw BracketError("birth_parameter: target period already present at the lower end");
  if (!settles(hi))
    throw BracketError("birth_parameter: target period absent at the upper end");
  while (hi - lo > 1e-4) {
    const double mid = 0.5 * (lo + hi);
    if (settles(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

namespace {

struct ReturnCore {
  Interval J;
  long long r = 0;
  Rational shift; // hybrid^r = F + shift on J
};

// root of F(x) = target on [lo, hi] where F is increasing or decreasing
double monotone_root(const MapSpec& spec, double lo, double hi, double target) {
  double flo = eval_F(spec, lo);
  double fhi = eval_F(spec, hi);
  const bool increasing = fhi >= flo;
  if (!increasing) {
    std::swap(flo, fhi);
  }
  if (!(target >= flo - 1e-12 && target <= fhi + 1e-12))
    throw DegenerateConfigError("return_map: root target outside the branch range");
  while (hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    const bool below = eval_F(spec, mid) < target;
    if (below == increasing)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

ReturnCore compute_core(const MapSpec& spec, const CriticalPoints& cp, int j) {
  const long long n = spec.n();
  const long long k = spec.k();
  const double nn = static_cast<double>(n);
  const double cell = 1.0 / nn;
  const double b = spec.offset;

  // J_1 = {x in [0, 1/n] : x + (1 - g(x)) <= 1/n}; J_0 is its mirror image.
  auto overshoot = [&](double x) { return x + kernel_g_complement(spec.kernel, x); };
  if (!(cp.plus < cell))
    throw DegenerateConfigError("return_map: critical point outside the cell right of 0");
  if (!(overshoot(cp.plus) < cell))
    throw DegenerateConfigError("return_map: no admissible subinterval at these parameters");

  double x_lo = 0.0;
  if (overshoot(0.0) > cell) {
    double lo = 0.0, hi = cp.plus; // overshoot decreasing here
    while (hi - lo > 1e-14) {
      const double mid = 0.5 * (lo + hi);
      if (overshoot(mid) > cell)
        lo = mid;
      else
        hi = mid;
    }
    x_lo = 0.5 * (lo + hi);
  }
  double x_hi;
  {
    double lo = cp.plus, hi = cell; // overshoot increasing here, > cell at 1/n
    while (hi - lo > 1e-14) {
      const double mid = 0.5 * (lo + hi);
      if (overshoot(mid) < cell)
        lo = mid;
      else
        hi = mid;
    }
    x_hi = 0.5 * (lo + hi);
  }

  ReturnCore core;
  core.J = j == 1 ? Interval{x_lo, x_hi} : Interval{-x_hi, -x_lo};
  core.shift = Rational{0, 1};

  // first step applies F; the interior critical point is an image extremum
  const double crit = j == 1 ? cp.plus : cp.minus;
  double v0 = eval_F(spec, core.J.lo);
  double v1 = eval_F(spec, core.J.hi);
  double vc = eval_F(spec, crit);
  double lo = std::min(std::min(v0, v1), vc);
  double hi = std::max(std::max(v0, v1), vc);
  core.r = 1;

  const long long target_cell = j == 1 ? -1 : 0;
  const Rational up = make_rational(k, n);
  const Rational down = make_rational(k - n, n);
  for (;;) {
    // The endpoints of the maximal J land exactly on cell boundaries, so
    // the cell is classified by the interval midpoint; anything protruding
    // beyond rounding is a genuine straddle.
    const long long c = static_cast<long long>(std::floor(0.5 * (lo + hi) * nn));
    const double cell_lo = static_cast<double>(c) / nn;
    const double cell_hi = static_cast<double>(c + 1) / nn;
    if (lo < cell_lo - 1e-12 || hi > cell_hi + 1e-12)
      throw DegenerateConfigError("return_map: image straddles cells");
    if (c == target_cell) break;
    if (c == -1 || c == 0)
      throw DegenerateConfigError("return_map: image re-enters the nonlinear window early");
    if (core.r > n) throw DegenerateConfigError("return_map: no return within n steps");
    const double s = c >= 0 ? b - 1.0 : b;
    core.shift = add(core.shift, c >= 0 ? down : up);
    lo += s;
    hi += s;
    ++core.r;
  }
  return core;
}

} // namespace

ReturnMapData return_map(const Rational& offset, KernelTag kernel, double a, int j,
                         int graph_samples) {
  if (j != 0 && j != 1) throw DomainError("return_map: j must be 0 or 1");
  if (graph_samples < 2) throw DomainError("return_map: need at least two graph samples");
  const MapSpec spec = make_spec(kernel, a, offset.num, offset.den);
  CriticalPoints cp;
  try {
    cp = critical_points(spec);
  } catch (const NoCriticalPointsError&) {
    throw DegenerateConfigError("return_map: no critical points at this steepness");
  }

  const ReturnCore mine = compute_core(spec, cp, j);
  const ReturnCore other = compute_core(spec, cp, 1 - j);
  const double my_shift = to_double(mine.shift);
  const double other_shift = to_double(other.shift);

  auto ret_mine = [&](double x) { return eval_F(spec, x) + my_shift; };
  auto ret_other = [&](double y) { return eval_F(spec, y) + other_shift; };
  auto composed = [&](double x) { return ret_other(ret_mine(x)); };
  auto composed_deriv = [&](double x) {
    return eval_F_deriv(spec, x, 1) * eval_F_deriv(spec, ret_mine(x), 1);
  };

  // admissible domain: the part of J whose return image lands inside the
  // opposite J. The return map is unimodal with its extremum at the
  // critical point, so the domain is one interval around it.
  const double crit = j == 1 ? cp.plus : cp.minus;
  const double at_crit = ret_mine(crit);
  if (!(at_crit > other.J.lo && at_crit < other.J.hi))
    throw DegenerateConfigError("return_map: return image of the critical point misses the opposite domain");
  const double inner_target = j == 1 ? other.J.hi : other.J.lo;
  const double d_lo = monotone_root(spec, mine.J.lo, crit, inner_target - my_shift);
  const double d_hi = monotone_root(spec, crit, mine.J.hi, inner_target - my_shift);

  // fixed points of the n-step return on the admissible domain
  std::vector<double> fixed;
  {
    const int scan_pts = 1024;
    double prev_x = d_lo;
    double prev_h = composed(d_lo) - d_lo;
    for (int i = 1; i <= scan_pts; ++i) {
      const double x = d_lo + (d_hi - d_lo) * static_cast<double>(i) / scan_pts;
      const double h = composed(x) - x;
      if ((prev_h < 0.0) != (h < 0.0)) {
        double lo = prev_x, hi = x, hlo = prev_h;
        while (hi - lo > 1e-13) {
          const double mid = 0.5 * (lo + hi);
          const double hm = composed(mid) - mid;
          if ((hm < 0.0) == (hlo < 0.0)) {
            lo = mid;
            hlo = hm;
          } else {
            hi = mid;
          }
        }
        fixed.push_back(0.5 * (lo + hi));
      }
      prev_x = x;
      prev_h = h;
    }
  }
  double z = 0.0;
  double best_mult = std::numeric_limits<double>::infinity();
  for (double f : fixed) {
    const double m = std::fabs(composed_deriv(f));
    if (m < best_mult) {
      best_mult = m;
      z = f;
    }
  }
  if (fixed.empty() || best_mult >= 1.0)
    throw DegenerateConfigError("return_map: no attracting fixed point of the n-step return");

  // grow K around the fixed point until the n-step image stays inside
  ReturnMapData data;
  data.j = j;
  data.J = mine.J;
  data.r = mine.r;
  data.shift = mine.shift;

  double rho_lo = z - d_lo;
  double rho_hi = d_hi - z;
  const double other_crit = j == 1 ? cp.minus : cp.plus;
  const double pre_target = other_crit - my_shift;
  auto image_inside = [&](double lo, double hi) {
    // extrema of the composition: interval ends, my critical point, and
    // preimages of the other branch's critical point, each taken per
    // monotone branch actually inside [lo, hi]
    std::vector<double> candidates{lo, hi};
    auto branch_root = [&](double blo, double bhi) {
      const double flo = eval_F(spec, blo);
      const double fhi = eval_F(spec, bhi);
      if (pre_target >= std::min(flo, fhi) && pre_target <= std::max(flo, fhi))
        candidates.push_back(monotone_root(spec, blo, bhi, pre_target));
    };
    if (crit > lo && crit < hi) {
      candidates.push_back(crit);
      branch_root(lo, crit);
      branch_root(crit, hi);
    } else {
      branch_root(lo, hi);
    }
    double vmin = std::numeric_limits<double>::infinity();
    double vmax = -vmin;
    for (double x : candidates) {
      const double v = composed(x);
      vmin = std::min(vmin, v);
      vmax = std::max(vmax, v);
    }
    return vmin >= lo && vmax <= hi;
  };
  for (int it = 0; it < 400; ++it) {
    if (image_inside(z - rho_lo, z + rho_hi)) break;
    rho_lo *= 0.85;
    rho_hi *= 0.85;
    if (rho_lo + rho_hi < 1e-11)
      throw DegenerateConfigError("return_map: no forward-invariant subinterval found");
  }
  if (!image_inside(z - rho_lo, z + rho_hi))
    throw DegenerateConfigError("return_map: no forward-invariant subinterval found");
  data.K = Interval{z - rho_lo, z + rho_hi};

  data.graph.reserve(graph_samples);
  for (int i = 0; i < graph_samples; ++i) {
    const double x = mine.J.lo + (mine.J.hi - mine.J.lo) * static_cast<double>(i) /
                                     (graph_samples - 1);
    data.graph.emplace_back(x, ret_mine(x));
  }
  return data;
}

std::string scan_to_csv(const std::vector<ScanRecord>& records) {
  std::string out = "a,seed,sample_index,x,period\n";
  for (const ScanRecord& rec : records) {
    if (rec.skipped) continue;
    const char* seed = rec.seed == SeedKind::Minus ? "minus" : "plus";
    const std::string period = rec.detected_period ? std::to_string(*rec.detected_period) : "";
    const std::string a = dec17_local(rec.a);
    for (std::size_t i = 0; i < rec.attractor_points.size(); ++i) {
      out += a;
      out += ',';
      out += seed;
      out += ',';
      out += std::to_string(i);
      out += ',';
      out += dec17_local(rec.attractor_points[i]);
      out += ',';
      out += period;
      out += '\n';
    }
  }
  return out;
}

} // namespace rotamime
