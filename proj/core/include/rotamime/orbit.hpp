#pragma once

#include <string>
#include <vector>

#include "rotamime/conditions.hpp"
#include "rotamime/map.hpp"

namespace rotamime {

enum class MapKind { F, G, Hybrid };
enum class SeedKind { Minus, Plus };

/// The critical point used as an iteration seed.
double seed_point(const MapSpec& spec, SeedKind which);

/// steps+1 points x0, f(x0), ..., f^steps(x0).
std::vector<double> iterate(const MapSpec& spec, double x0, long steps,
                            MapKind which = MapKind::F);

struct OrbitOptions {
  long transient = 100000;      // long enough for the intermittent slow-down
  int max_period = 2000;        // near window edges
  double recurrence_tol = 1e-9; // |x_{t+p} - x_t|
  double refine_tol = 1e-12;    // |F^p(z) - z| after Newton
};

/// A refined attracting periodic orbit.
///   points        temporally ordered: z, F(z), ..., F^{p-1}(z)
///   laps          1 | 2 | 3 per point (left, middle, right lap of F)
///   basic_indices i with x in [i/n, (i+1)/n)
///   rotation_ok   period == n and, gluing b-1 to b, the temporal successor
///                 advances the spatial rank by exactly k mod n
struct PeriodicOrbit {
  std::vector<double> points;
  int period = 0;
  double multiplier = 0.0; // product of F' along the orbit
  std::vector<int> laps;
  std::vector<long long> basic_indices;
  bool rotation_ok = false;

  friend bool operator==(const PeriodicOrbit&, const PeriodicOrbit&) = default;
};

/// Iterates the seed through the transient, finds the minimal recurrence
/// p <= max_period, refines the orbit point with damped Newton on
/// F^p(x) - x (chain-rule derivative, bisection fallback), and rejects
/// non-minimal periods by testing every divisor of p. Throws NoOrbitError
/// when no recurrence is found.
PeriodicOrbit find_attracting_orbit(const MapSpec& spec, double seed,
                                    const OrbitOptions& opts = {});

/// True iff the temporal successor of the j-th point in spatial order is
/// the (j+k mod n)-th. Requires exactly n distinct points; throws
/// DegenerateOrbitError when two points coincide within 1e-12.
bool rotation_order_check(const std::vector<double>& points, long long k,
                          long long n);

/// Executable witness for the attracting period-n orbit. The lower bracket
/// endpoint is the right critical point; the upper one is recovered by
/// walking backward along the same cell itinerary through the increasing
/// branches so that its forward orbit passes through the left critical point.
/// Valid when the n-step displacements have the certifying signs
/// (> 0 at lower, < 0 at upper), all intermediate laps are 1 or 3, the
/// lower trace stays within 1/(2n) of the left endpoints of its cells and
/// the upper trace within 1/(2n) of the right endpoints.
struct OrbitCertificate {
  double lower = 0.0; // = y+
  double upper = 0.0; // backward-recovered
  std::vector<double> lower_images; // F(lower) ... F^n(lower)
  std::vector<double> upper_images; // F(upper) ... F^n(upper)
  std::vector<long long> basic_trace; // cells of the lower trace, steps 0..n-1
  double lower_displacement = 0.0; // F^n(lower) - lower, must be > 0
  double upper_displacement = 0.0; // F^n(upper) - upper, must be < 0
  bool valid = false;
  std::string failure; // empty when valid
  int failing_step = -1;

  friend bool operator==(const OrbitCertificate&, const OrbitCertificate&) = default;
};

/// Runs the construction unconditionally and reports what failed; a lap
/// violation on the forward trace aborts before the backward recovery.
/// Throws NumericError only if a monotone inversion loses its bracket,
/// NoCriticalPointsError below the steepness threshold.
OrbitCertificate orbit_certificate(const MapSpec& spec);

struct BasinOptions {
  long max_iters = 100000;
  double tol = 1e-6; // capture distance to an orbit point
  int jobs = 1;
};

/// Fraction of n_samples equally spaced starting points whose trajectory
/// comes within tol of an orbit point and stays there one period later.
/// Stratified deterministic sampling; parallel runs are bit-identical.
double basin_fraction(const MapSpec& spec, const PeriodicOrbit& orbit,
                      long n_samples, Interval sample_interval,
                      const BasinOptions& opts = {});

} // namespace rotamime
