#include "rotamime/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rotamime {

namespace {

constexpr int kGridPoints = 10000;
constexpr double kDerivUnitTol = 1e-9; // |g'(y+-) - 1| sanity bound

// min of f over the open interval (lo, hi), sampled at midpoints of a
// uniform partition so no sample sits on a lap boundary.
template <typename Fn>
double grid_min(double lo, double hi, Fn&& f) {
  const double h = (hi - lo) / kGridPoints;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kGridPoints; ++i) {
    const double v = f(lo + (i + 0.5) * h);
    if (v < best) best = v;
  }
  return best;
}

} // namespace

CriticalPoints critical_points(const KernelFamily& kernel) {
  const double a = kernel.steepness;
  const double threshold = kernel_threshold(kernel.tag);
  if (!(a > threshold))
    throw NoCriticalPointsError(std::string("no critical points: steepness ") +
                                std::to_string(a) + " <= " + std::to_string(threshold) +
                                " for " + kernel_name(kernel.tag));
  CriticalPoints cp;
  switch (kernel.tag) {
    case KernelTag::Eos: {
      // roots of (t+1)^2 - a t; the larger root is taken directly and the
      // smaller as its reciprocal (their product is 1), avoiding cancellation
      const double root = ((a - 2.0) + std::sqrt(a * (a - 4.0))) / 2.0;
      cp.t_minus = root;
      cp.t_plus = 1.0 / root;
      cp.plus = std::log(root) / a;
      break;
    }
    case KernelTag::Arctan:
      cp.plus = std::sqrt(a / M_PI - 1.0) / a;
      cp.t_minus = std::exp(a * cp.plus);
      cp.t_plus = std::exp(-a * cp.plus);
      break;
    case KernelTag::Erf:
      cp.plus = std::sqrt(std::log(a / std::sqrt(M_PI))) / a;
      cp.t_minus = std::exp(a * cp.plus);
      cp.t_plus = std::exp(-a * cp.plus);
      break;
  }
  cp.minus = -cp.plus;
  return cp;
}

CriticalPoints critical_points(const MapSpec& spec) {
  return critical_points(spec.kernel);
}

ConditionReport check_membership(const MapSpec& spec) {
  ConditionReport report;
  report.spec = spec;

  const KernelFamily& kernel = spec.kernel;
  const double a = kernel.steepness;
  const double b = spec.offset;
  const double n = static_cast<double>(spec.n());
  const double half_basic = 1.0 / (2.0 * n);
  const double below_threshold = a - kernel_threshold(kernel.tag); // <= 0 when missing

  try {
    report.critical = critical_points(kernel);
    report.has_critical = true;
  } catch (const NoCriticalPointsError&) {
    report.has_critical = false;
  }

  // minimal feasible correction bound; both arguments agree for the
  // symmetric kernels up to rounding
  report.epsilon = std::max(kernel_g(kernel, -half_basic),
                            kernel_g_complement(kernel, half_basic));

  auto push = [&](const char* id, bool passed, double margin) {
    report.checks.push_back(ConditionCheck{id, passed, margin});
  };

  const double yp = report.critical.plus;
  const double ym = report.critical.minus;

  if (report.has_critical) {
    // A1: 0 < g' < 1 on the outer laps, sampled across the trapping interval
    const double a1_left = grid_min(b - 1.0, ym, [&](double x) {
      const double d = kernel_g_deriv(kernel, x, 1);
      return std::min(d, 1.0 - d);
    });
    const double a1_right = grid_min(yp, b, [&](double x) {
      const double d = kernel_g_deriv(kernel, x, 1);
      return std::min(d, 1.0 - d);
    });
    const double a1 = std::min(a1_left, a1_right);
    push("A1", a1 > 0.0, a1);

    // A2: the critical points exist, g'(y+-) = 1, and they sit inside
    // (b-1, 0) x (0, b); margin is the containment slack
    const double res = std::max(std::fabs(kernel_g_deriv(kernel, ym, 1) - 1.0),
                                std::fabs(kernel_g_deriv(kernel, yp, 1) - 1.0));
    const double contain = std::min(std::min(ym - (b - 1.0), -ym), std::min(yp, b - yp));
    push("A2", contain > 0.0 && res <= kDerivUnitTol, contain);

    // A3: g' > 1 strictly between the critical points
    const double a3 = grid_min(ym, yp, [&](double x) {
      return kernel_g_deriv(kernel, x, 1) - 1.0;
    });
    push("A3", a3 > 0.0, a3);
  } else {
    push("A1", false, below_threshold);
    push("A2", false, below_threshold);
    push("A3", false, below_threshold);
  }

  // B: g(b-1) < b < g(b)
  const double b_margin = std::min(b - kernel_g(kernel, b - 1.0), kernel_g(kernel, b) - b);
  push("B", b_margin > 0.0, b_margin);

  // C1/C2: decay of g against epsilon. The slack at the defining points
  // -+1/(2n) is zero by construction, so the margin is taken at the probe
  // points -+3/(4n); a sign sweep over the rest of the range guards the
  // kernel implementation. Mirrored expressions share one code path.
  const double probe = 3.0 / (4.0 * n);
  const double c1_margin = report.epsilon - kernel_g(kernel, -probe);
  const double c2_margin = report.epsilon - kernel_g_complement(kernel, probe);
  const double c1_sweep = grid_min(b - 1.0, -probe, [&](double x) {
    return report.epsilon - kernel_g(kernel, x);
  });
  const double c2_sweep = grid_min(probe, b, [&](double x) {
    return report.epsilon - kernel_g_complement(kernel, x);
  });
  push("C1", c1_margin > 0.0 && c1_sweep >= 0.0, c1_margin);
  push("C2", c2_margin > 0.0 && c2_sweep >= 0.0, c2_margin);

  // C3/C4: the correction budget (n-1)e fits both under the jump at the
  // critical point and under the half-cell headroom. g(y-) is evaluated
  // as the complement at y+ (bit-identical mirror).
  if (report.has_critical) {
    const double budget = (n - 1.0) * report.epsilon;
    const double jump_plus = kernel_g_complement(kernel, yp); // 1 - g(y+)
    const double c3 = std::min(jump_plus - budget,
                               half_basic - (jump_plus + yp) - budget);
    const double jump_minus = kernel_g(kernel, ym); // g(y-)
    const double c4 = std::min(jump_minus - budget,
                               half_basic - (jump_minus - ym) - budget);
    push("C3", c3 > 0.0, c3);
    push("C4", c4 > 0.0, c4);
    report.y_plus_lt_half_basic = yp < half_basic;
    report.y_plus_margin = half_basic - yp;
  } else {
    push("C3", false, below_threshold);
    push("C4", false, below_threshold);
    report.y_plus_lt_half_basic = false;
    report.y_plus_margin = below_threshold;
  }

  report.member = std::all_of(report.checks.begin(), report.checks.end(),
                              [](const ConditionCheck& c) { return c.passed; });
  return report;
}

InvariantIntervalReport invariant_interval_check(const MapSpec& spec) {
  InvariantIntervalReport r;
  const double b = spec.offset;
  r.margin_left = eval_F(spec, b - 1.0) - (b - 1.0);
  r.margin_right = b - eval_F(spec, b);
  r.ok = r.margin_left > 0.0 && r.margin_right > 0.0;
  try {
    const CriticalPoints cp = critical_points(spec);
    r.has_critical = true;
    // the interior extrema of F on [b-1, b]: max at y-, min at y+
    r.margin_at_minus = b - eval_F(spec, cp.minus);
    r.margin_at_plus = eval_F(spec, cp.plus) - (b - 1.0);
    r.ok = r.ok && r.margin_at_minus > 0.0 && r.margin_at_plus > 0.0;
  } catch (const NoCriticalPointsError&) {
    r.has_critical = false; // F monotone: endpoint margins decide
  }
  return r;
}

double membership_threshold(const Rational& offset, KernelTag tag, Interval search) {
  auto member_at = [&](double a) {
    return check_membership(make_spec(tag, a, offset.num, offset.den)).member;
  };
  double lo = search.lo;
  double hi = search.hi;
  if (member_at(lo))
    throw BracketError("membership_threshold: already a member at the lower end");
  if (!member_at(hi))
    throw BracketError("membership_threshold: not a member at the upper end");
  for (int attempt = 0; attempt < 100; ++attempt) {
    double left = lo, right = hi;
    while (right - left > 1e-6) {
      const double mid = 0.5 * (left + right);
      if (member_at(mid))
        right = mid;
      else
        left = mid;
    }
    // accept only a threshold that stays a member slightly above it;
    // otherwise restart the bracket beyond the unstable flip
    if (member_at(std::min(right + 1e-3, search.hi))) return right;
    lo = std::min(right + 1e-3, search.hi);
  }
  throw NumericError("membership_threshold: did not stabilize");
}

} // namespace rotamime
