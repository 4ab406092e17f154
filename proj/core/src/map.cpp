#include "rotamime/map.hpp"

#include <cmath>

namespace rotamime {

MapSpec make_spec(KernelTag tag, double steepness, long long k, long long n) {
  if (!std::isfinite(steepness) || steepness <= 0.0)
    throw DomainError("spec: steepness must be positive and finite");
  if (n < 2 || k <= 0 || k >= n)
    throw DomainError("spec: need 0 < k < n");
  Rational b = make_rational(k, n);
  if (b.num != k || b.den != n)
    throw DomainError("spec: " + std::to_string(k) + "/" + std::to_string(n) +
                      " is not in lowest terms");
  MapSpec spec;
  spec.kernel = KernelFamily{tag, steepness};
  spec.offset_exact = b;
  spec.offset = static_cast<double>(k) / static_cast<double>(n);
  return spec;
}

Interval trapping_interval(const MapSpec& spec) {
  return Interval{spec.offset - 1.0, spec.offset};
}

double eval_g(const MapSpec& spec, double x) { return kernel_g(spec.kernel, x); }

double eval_F(const MapSpec& spec, double x) {
  return x + spec.offset - kernel_g(spec.kernel, x);
}

double eval_F_deriv(const MapSpec& spec, double x, int order) {
  if (order == 1) return 1.0 - kernel_g_deriv(spec.kernel, x, 1);
  if (order == 2 || order == 3) return -kernel_g_deriv(spec.kernel, x, order);
  throw DomainError("eval_F_deriv: order must be 1..3");
}

double schwarzian(const MapSpec& spec, double x) {
  const double d1 = eval_F_deriv(spec, x, 1);
  if (std::fabs(d1) < 1e-12)
    throw CriticalPointError("schwarzian undefined at a critical point");
  const double d2 = eval_F_deriv(spec, x, 2);
  const double d3 = eval_F_deriv(spec, x, 3);
  const double ratio = d2 / d1;
  return d3 / d1 - 1.5 * ratio * ratio;
}

double eval_G(double b, double x) {
  if (!std::isfinite(x)) throw DomainError("eval_G: non-finite argument");
  if (x == 0.0) throw UndefinedPointError("the model map is undefined at 0");
  return x < 0.0 ? x + b : x + b - 1.0;
}

Rational rotation_shift(const Rational& offset, long long i, bool wrap_down) {
  const long long n = offset.den;
  long long m = (i % n) * (offset.num % n) % n;
  if (m < 0) m += n;
  if (m == 0) return Rational{0, 1};
  return wrap_down ? make_rational(m - n, n) : make_rational(m, n);
}

double rotation_power(const Rational& offset, double x, long long i) {
  const double b = to_double(offset);
  if (!(x > b - 1.0 && x < b)) throw DomainError("rotation_power: x outside (b-1, b)");
  if (i < 0) throw DomainError("rotation_power: negative iterate count");
  const long long n = offset.den;
  // Each intermediate point is x plus an exact fraction; applying the model
  // there is undefined exactly when the point is 0.
  auto point_at = [&](long long j) {
    Rational s = rotation_shift(offset, j, false);
    double up = x + to_double(s);
    return up < b ? up : x + to_double(rotation_shift(offset, j, true));
  };
  const long long distinct = i < n ? i : n;
  for (long long j = 0; j < distinct; ++j)
    if (point_at(j) == 0.0)
      throw UndefinedPointError("rotation_power: orbit passes through 0");
  return point_at(i % n);
}

double eval_hybrid(const MapSpec& spec, double x) {
  const double window = 1.0 / static_cast<double>(spec.n());
  if (x >= -window && x <= window) return eval_F(spec, x);
  return eval_G(spec.offset, x);
}

double correction(const MapSpec& spec, double x) {
  if (!std::isfinite(x)) throw DomainError("correction: non-finite argument");
  if (x == 0.0) throw UndefinedPointError("correction undefined at 0");
  const double c = kernel_g_complement(spec.kernel, std::fabs(x));
  return x > 0.0 ? c : -c;
}

namespace {

double stable_logistic(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double logit(double y) { return std::log(y) - std::log1p(-y); }

} // namespace

double mw_value(double steepness, double offset, double y) {
  if (!(y > 0.0 && y < 1.0)) throw DomainError("mw_value: y outside (0,1)");
  // y / (y + (1-y) e^{a(y-b)}) rewritten through the logistic for stability
  return stable_logistic(logit(y) - steepness * (y - offset));
}

double conjugacy_residual(double steepness, double offset, double y) {
  if (!(y > 0.0 && y < 1.0)) throw DomainError("conjugacy_residual: y outside (0,1)");
  const double x = logit(y) / steepness;
  const KernelFamily kernel{KernelTag::Eos, steepness};
  const double lhs = x + offset - kernel_g(kernel, x);

  // The update route evaluates the weight pair of
  //   w = y / (y + (1-y) e^t),  t = a(y-b),
  // in log domain, as one would for any softmax-style update; the plain
  // weight rounds to 1 once t is large and its logit would be lost.
  const double t = steepness * (y - offset);
  const double log_norm = t > 0.0 ? t + std::log1p(std::expm1(-t) * y)
                                  : std::log1p(std::expm1(t) * (1.0 - y));
  const double log_w = std::log(y) - log_norm;
  const double log_1mw = std::log1p(-y) + t - log_norm;
  const double rhs = (log_w - log_1mw) / steepness;
  return std::fabs(lhs - rhs);
}

} // namespace rotamime
