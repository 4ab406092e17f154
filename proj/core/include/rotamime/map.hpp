#pragma once

#include "rotamime/kernel.hpp"
#include "rotamime/rational.hpp"

namespace rotamime {

struct Interval {
  double lo = 0.0;
  double hi = 1.0; // invariant: lo < hi

  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// One member of the interval-map family
///
///   F(x) = x + b - g(x),   b = k/n in (0,1), k,n coprime.
///
/// The offset is carried both as the exact fraction (Farey logic and the
/// rotation model need exactness) and as its double image.
struct MapSpec {
  KernelFamily kernel;
  Rational offset_exact; // k/n, reduced, 0 < k < n
  double offset = 0.0;   // double(k)/double(n)

  long long k() const { return offset_exact.num; }
  long long n() const { return offset_exact.den; }

  friend bool operator==(const MapSpec&, const MapSpec&) = default;
};

/// Validates a > 0 finite, 0 < k < n, gcd(k,n) = 1. Throws DomainError.
MapSpec make_spec(KernelTag tag, double steepness, long long k, long long n);

/// [b-1, b]: once conditions A and B hold this interval is invariant and
/// globally attracting.
Interval trapping_interval(const MapSpec& spec);

double eval_g(const MapSpec& spec, double x);
double eval_F(const MapSpec& spec, double x);

/// Closed-form F', F'', F''' (order in {1,2,3}); F' = 1 - g'.
double eval_F_deriv(const MapSpec& spec, double x, int order);

/// F'''/F' - (3/2)(F''/F')^2. Throws CriticalPointError when |F'| < 1e-12.
double schwarzian(const MapSpec& spec, double x);

/// The piecewise-translation model: x + b for x < 0, x + b - 1 for x > 0.
/// Undefined at 0 (hard error). Gluing b-1 to b turns it into the circle
/// rotation by b.
double eval_G(double b, double x);

/// Exact circle shift of the i-th model iterate: the signed fraction
/// G^i(x) - x, either m/n or (m-n)/n with m = i*k mod n. Pure integer
/// arithmetic; m = 0 gives 0/1.
Rational rotation_shift(const Rational& offset, long long i, bool wrap_down);

/// G^i(x) computed in the circle model: x plus the exact rational shift,
/// wrapped back into [b-1, b). G^n(x) == x bit-for-bit. Throws
/// UndefinedPointError if the orbit passes through 0, DomainError if
/// x is outside (b-1, b).
double rotation_power(const Rational& offset, double x, long long i);

/// F on [-1/n, 1/n] (closed window), the model G elsewhere.
double eval_hybrid(const MapSpec& spec, double x);

/// F(x) - G(x) = sgn(x) * (1 - g(|x|)); exponentially small away from 0.
/// Undefined at 0.
double correction(const MapSpec& spec, double x);

/// The multiplicative-weights update on (0,1):
///   y -> y / (y + (1-y) e^{a(y-b)}),
/// conjugate to the eos map under x = (1/a) log(y/(1-y)).
double mw_value(double steepness, double offset, double y);

/// |F(h(y)) - h(f(y))| with h(y) = (1/a) log(y/(1-y)) and f the
/// multiplicative-weights update; vanishes up to rounding.
double conjugacy_residual(double steepness, double offset, double y);

} // namespace rotamime
