#pragma once

#include <string>
#include <vector>

#include "rotamime/map.hpp"

namespace rotamime {

/// The two solutions of g'(y) = 1, minus < 0 < plus, with the associated
/// exponential scales t = e^{-a*y}. For the eos kernel t_minus and t_plus
/// are the roots of (t+1)^2 - a*t = 0 and t_minus lies in (a-3, a-2).
struct CriticalPoints {
  double minus = 0.0;
  double plus = 0.0;
  double t_minus = 0.0;
  double t_plus = 0.0;

  friend bool operator==(const CriticalPoints&, const CriticalPoints&) = default;
};

/// Closed-form critical points per kernel:
///   eos     t = ((a-2) +- sqrt(a^2-4a))/2,  y = -(1/a) ln t
///   arctan  y_plus = (1/a) sqrt(a/pi - 1)
///   erf     y_plus = (1/a) sqrt(ln(a/sqrt(pi)))
/// Throws NoCriticalPointsError when steepness is at or below the
/// existence threshold (the double-root boundary is excluded).
CriticalPoints critical_points(const KernelFamily& kernel);
CriticalPoints critical_points(const MapSpec& spec);

struct ConditionCheck {
  std::string id; // A1 A2 A3 B C1 C2 C3 C4
  bool passed = false;
  double margin = 0.0; // inequality slack, absolute units

  friend bool operator==(const ConditionCheck&, const ConditionCheck&) = default;
};

/// Outcome of the membership test. The map family belongs to the class
/// with a guaranteed attracting period-n orbit when
///   (A) the critical points exist with b-1 < y- < 0 < y+ < b and
///       0 < g' < 1 outside [y-, y+], g' > 1 inside,
///   (B) g(b-1) < b < g(b),
///   (C) with e = max(g(-1/(2n)), 1 - g(1/(2n))) (the minimal feasible
///       correction bound, both arguments equal for symmetric kernels):
///       C3: (n-1)e < 1 - g(y+)  and  (n-1)e < 1/(2n) - (1 - g(y+) + y+),
///       C4: the mirror image with g(y-) and g(y-) - y-.
/// C1/C2 certify the decay of g itself against e; their margins are the
/// slack at the probe points -+3/(4n) (the slack at -+1/(2n) is zero by
/// the minimal-e construction), backed by a 10^4-point sign sweep.
struct ConditionReport {
  MapSpec spec;
  bool has_critical = false;
  CriticalPoints critical;           // meaningful only if has_critical
  double epsilon = 0.0;              // minimal feasible correction bound
  bool y_plus_lt_half_basic = false; // y+ < 1/(2n), implied by C3
  double y_plus_margin = 0.0;        // 1/(2n) - y+
  std::vector<ConditionCheck> checks;
  bool member = false;

  friend bool operator==(const ConditionReport&, const ConditionReport&) = default;
};

/// Evaluates all conditions with explicit numeric margins. Never throws
/// for mathematical reasons: a missing critical point is reported as a
/// failed condition A (margin = steepness - threshold).
ConditionReport check_membership(const MapSpec& spec);

/// Direct check that F maps [b-1, b] into itself, using the lap structure
/// (extrema only at y-, y+ and the endpoints).
struct InvariantIntervalReport {
  bool ok = false;
  bool has_critical = false;
  double margin_left = 0.0;    // F(b-1) - (b-1)
  double margin_right = 0.0;   // b - F(b)
  double margin_at_minus = 0.0; // b - F(y-), when critical points exist
  double margin_at_plus = 0.0;  // F(y+) - (b-1)
};
InvariantIntervalReport invariant_interval_check(const MapSpec& spec);

/// Smallest steepness in the search range at which membership holds and
/// remains true at +1e-3, located by bisection to 1e-6. Requires
/// member(lo) = false and member(hi) = true, else BracketError.
double membership_threshold(const Rational& offset, KernelTag tag, Interval search);

} // namespace rotamime
