#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rotamime/orbit.hpp"

namespace rotamime {

struct ScanOptions {
  long transient = 100000;
  int n_samples = 100; // attractor samples recorded per (a, seed)
  int max_period = 2000;
  double recurrence_tol = 1e-9;
  int jobs = 1;
  bool use_hybrid = false; // sweep the hybrid map instead of F
};

/// One grid point of a steepness sweep. Grid points at or below the
/// kernel threshold are kept as skipped markers.
struct ScanRecord {
  double a = 0.0;
  SeedKind seed = SeedKind::Minus;
  std::vector<double> attractor_points; // post-transient samples
  std::optional<int> detected_period;
  bool skipped = false;
};

/// Sweeps steepness over the grid a = lo + i*step, both critical seeds per
/// grid point, recording n_samples post-transient points and the detected
/// period. Grid points are independent; records are stored by index, so
/// the output is byte-identical for any worker count. Ordered by (a, seed)
/// with minus before plus.
std::vector<ScanRecord> scan(const Rational& offset, KernelTag kernel,
                             Interval a_range, double a_step,
                             const ScanOptions& opts = {});

enum class FareyVerdict { ParentLargerDen, ParentSmallerDen, NotNeighbor };

const char* to_string(FareyVerdict v);

/// Maximal run of grid points where both seeds agree on one period.
///   q        the period
///   p        third-lap points of the refined midpoint orbit, plus at most
///            one second-lap point within 2/a of a critical point
///   verdict  p/q compared against the Farey parents of k/n
struct PeriodicWindow {
  Interval a_range;
  int q = 0;
  int p = 0;
  FareyVerdict verdict = FareyVerdict::NotNeighbor;

  friend bool operator==(const PeriodicWindow&, const PeriodicWindow&) = default;
};

/// Windows shorter than 3 grid points are discarded as noise.
std::vector<PeriodicWindow> detect_windows(const std::vector<ScanRecord>& records,
                                           const Rational& offset,
                                           KernelTag kernel);

/// Third-lap count with the near-critical adjustment used for windows.
int effective_third_lap_count(const MapSpec& spec, const PeriodicOrbit& orbit);

/// Smallest steepness in the bracket at which both critical seeds settle
/// onto an orbit of the target period, bisected to 1e-4. Requires the
/// predicate false at bracket.lo and true at bracket.hi, else BracketError.
double birth_parameter(const Rational& offset, KernelTag kernel,
                       int target_period, Interval bracket,
                       const OrbitOptions& opts = {});

/// Return-map data of the hybrid map on the two cells adjacent to 0,
/// I_0 = [-1/n, 0] and I_1 = [0, 1/n]:
///   J      maximal subinterval of I_j whose image falls in the same cell
///          as the model image (the correction near 0 excluded)
///   r      smallest r > 0 with hybrid^r(J) inside I_{1-j}; r_0 + r_1 = n
///   shift  exact vertical translation: hybrid^r on J equals F + shift
///   K      subinterval of J with hybrid^n(K) inside K
struct ReturnMapData {
  int j = 0;
  Interval J;
  long long r = 0;
  Rational shift;
  Interval K;
  std::vector<std::pair<double, double>> graph; // (x, hybrid^r(x)) on J

  friend bool operator==(const ReturnMapData&, const ReturnMapData&) = default;
};

/// Computes the structure above; throws DegenerateConfigError when an
/// image touches a cell boundary within 1e-12 or the structure does not
/// exist at these parameters.
ReturnMapData return_map(const Rational& offset, KernelTag kernel, double a,
                         int j, int graph_samples = 512);

/// CSV with header a,seed,sample_index,x,period; reals as
/// 17-significant-digit decimals, period empty when undetected.
std::string scan_to_csv(const std::vector<ScanRecord>& records);

} // namespace rotamime
