#include "rotamime/kernel.hpp"

#include <cmath>

namespace rotamime {

const char* kernel_name(KernelTag tag) {
  switch (tag) {
    case KernelTag::Eos: return "eos";
    case KernelTag::Arctan: return "arctan";
    case KernelTag::Erf: return "erf";
  }
  return "?";
}

KernelTag parse_kernel(const std::string& name) {
  if (name == "eos") return KernelTag::Eos;
  if (name == "arctan") return KernelTag::Arctan;
  if (name == "erf") return KernelTag::Erf;
  throw DomainError("unknown kernel \"" + name + "\" (eos|arctan|erf)");
}

double kernel_threshold(KernelTag tag) {
  switch (tag) {
    case KernelTag::Eos: return 4.0;
    case KernelTag::Arctan: return M_PI;
    case KernelTag::Erf: return std::sqrt(M_PI);
  }
  return 0.0;
}

double kernel_g(const KernelFamily& k, double x) {
  if (!std::isfinite(x)) throw DomainError("kernel_g: non-finite argument");
  const double a = k.steepness;
  switch (k.tag) {
    case KernelTag::Eos:
      // branch-stable logistic; saturation for |a*x| > 745 is fine
      if (x >= 0.0) return 1.0 / (std::exp(-a * x) + 1.0);
      {
        const double e = std::exp(a * x);
        return e / (1.0 + e);
      }
    case KernelTag::Arctan:
      return 0.5 + std::atan(a * x) / M_PI;
    case KernelTag::Erf:
      return 0.5 * std::erfc(-a * x);
  }
  return 0.0;
}

double kernel_g_complement(const KernelFamily& k, double x) {
  // 1 - g(x) = g(-x); the shared code path keeps mirrored margins
  // bit-identical.
  return kernel_g(k, -x);
}

double kernel_g_deriv(const KernelFamily& k, double x, int order) {
  if (!std::isfinite(x)) throw DomainError("kernel_g_deriv: non-finite argument");
  if (order < 1 || order > 3) throw DomainError("kernel_g_deriv: order must be 1..3");
  const double a = k.steepness;
  switch (k.tag) {
    case KernelTag::Eos: {
      // g' = a s(1-s), g'' = a^2 s(1-s)(1-2s), g''' = a^3 s(1-s)(1-6s(1-s))
      // with s = g(x); s and 1-s both from the stable branches.
      const double s = kernel_g(k, x);
      const double c = kernel_g_complement(k, x);
      const double sc = s * c;
      if (order == 1) return a * sc;
      if (order == 2) return a * a * sc * (c - s);
      return a * a * a * sc * (1.0 - 6.0 * sc);
    }
    case KernelTag::Arctan: {
      const double u = a * x;
      const double d = 1.0 + u * u;
      if (order == 1) return a / (M_PI * d);
      if (order == 2) return -2.0 * a * a * u / (M_PI * d * d);
      return 2.0 * a * a * a * (3.0 * u * u - 1.0) / (M_PI * d * d * d);
    }
    case KernelTag::Erf: {
      const double u = a * x;
      const double e = std::exp(-u * u) / std::sqrt(M_PI);
      if (order == 1) return a * e;
      if (order == 2) return -2.0 * a * a * u * e;
      return 2.0 * a * a * a * (2.0 * u * u - 1.0) * e;
    }
  }
  return 0.0;
}

} // namespace rotamime
