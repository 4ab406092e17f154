#pragma once

#include <string>

#include "rotamime/errors.hpp"

namespace rotamime {

/// The three sigmoid kernels. Each g is smooth, strictly increasing,
/// maps the line onto (0,1) and satisfies g(-x) + g(x) = 1:
///
///   eos     g(x) = 1/(e^{-ax} + 1)
///   arctan  g(x) = 1/2 + arctan(ax)/pi
///   erf     g(x) = 1/2 + erf(ax)/2
enum class KernelTag { Eos, Arctan, Erf };

struct KernelFamily {
  KernelTag tag = KernelTag::Eos;
  double steepness = 1.0; // a > 0

  friend bool operator==(const KernelFamily&, const KernelFamily&) = default;
};

const char* kernel_name(KernelTag tag);
KernelTag parse_kernel(const std::string& name);

/// g(x), evaluated branch-stably. Saturation to {0,1} can occur for
/// |a*x| beyond the double exp range and is permitted.
double kernel_g(const KernelFamily& k, double x);

/// 1 - g(x) without cancellation; equals kernel_g at -x by symmetry and is
/// computed that way so mirrored quantities agree bit-for-bit.
double kernel_g_complement(const KernelFamily& k, double x);

/// Closed-form derivative of g, order in {1,2,3}.
double kernel_g_deriv(const KernelFamily& k, double x, int order);

/// Smallest steepness at which the solutions of g' = 1 exist
/// (4 for eos, pi for arctan, sqrt(pi) for erf). Existence is strict:
/// steepness must exceed the threshold.
double kernel_threshold(KernelTag tag);

} // namespace rotamime
