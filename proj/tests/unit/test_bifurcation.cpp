#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "rotamime/bifurcation.hpp"
#include "rotamime/svg.hpp"

using namespace rotamime;

TEST_SUITE_BEGIN("bifurcation");

namespace {
const Rational kB311 = Rational{3, 11};
}

TEST_CASE("scan records the seed itself when there is no transient") {
  ScanOptions opts;
  opts.transient = 0;
  opts.n_samples = 1;
  const auto records = scan(kB311, KernelTag::Eos, Interval{110.0, 110.0}, 1.0, opts);
  REQUIRE(records.size() == 2);
  CHECK(records[0].seed == SeedKind::Minus);
  CHECK(records[1].seed == SeedKind::Plus);
  const MapSpec spec = make_spec(KernelTag::Eos, 110.0, 3, 11);
  CHECK(records[0].attractor_points[0] == seed_point(spec, SeedKind::Minus));
  CHECK(records[1].attractor_points[0] == seed_point(spec, SeedKind::Plus));
  // the seed itself is not on the attractor, so no recurrence is seen yet
  CHECK_FALSE(records[1].detected_period.has_value());
}

TEST_CASE("grid points below the kernel threshold are marked, not run") {
  ScanOptions opts;
  opts.transient = 100;
  opts.n_samples = 2;
  const auto records = scan(kB311, KernelTag::Eos, Interval{3.0, 5.0}, 1.0, opts);
  REQUIRE(records.size() == 6);
  CHECK(records[0].skipped); // a = 3
  CHECK(records[2].skipped); // a = 4 (threshold itself excluded)
  CHECK_FALSE(records[4].skipped);
  CHECK(records[4].attractor_points.size() == 2);
}

TEST_CASE("attractor samples stay in the trapping region") {
  ScanOptions opts;
  opts.transient = 20000;
  opts.n_samples = 40;
  const auto records = scan(kB311, KernelTag::Eos, Interval{100.0, 104.0}, 0.5, opts);
  const double b = to_double(kB311);
  for (const ScanRecord& rec : records) {
    for (double x : rec.attractor_points) {
      CHECK(x >= b - 1.0 - 0.01);
      CHECK(x <= b + 0.01);
    }
  }
}

TEST_CASE("scan detects the period inside the window") {
  ScanOptions opts;
  opts.transient = 40000;
  const auto records = scan(kB311, KernelTag::Eos, Interval{83.25, 83.35}, 0.05, opts);
  for (const ScanRecord& rec : records) {
    REQUIRE(rec.detected_period.has_value());
    CHECK(*rec.detected_period == 7);
  }
}

TEST_CASE("window detection and Farey classification") {
  ScanOptions opts;
  opts.transient = 40000;
  opts.n_samples = 2;
  const auto records = scan(kB311, KernelTag::Eos, Interval{82.0, 85.0}, 0.02, opts);
  const auto windows = detect_windows(records, kB311, KernelTag::Eos);
  REQUIRE(!windows.empty());

  const PeriodicWindow& seven = windows.front();
  CHECK(seven.q == 7);
  CHECK(seven.p == 2);
  CHECK(seven.verdict == FareyVerdict::ParentLargerDen);
  CHECK(seven.a_range.lo <= 83.3);
  CHECK(seven.a_range.hi >= 83.3);

  CHECK(detect_windows({}, kB311, KernelTag::Eos).empty());
}

TEST_CASE("runs shorter than three grid points are discarded") {
  std::vector<ScanRecord> synth;
  auto push_pair = [&](double a, std::optional<int> q) {
    ScanRecord minus;
    minus.a = a;
    minus.seed = SeedKind::Minus;
    minus.detected_period = q;
    ScanRecord plus = minus;
    plus.seed = SeedKind::Plus;
    synth.push_back(minus);
    synth.push_back(plus);
  };
  push_pair(1.0, std::nullopt);
  push_pair(2.0, 9);
  push_pair(3.0, 9);
  push_pair(4.0, std::nullopt);
  CHECK(detect_windows(synth, kB311, KernelTag::Eos).empty());
}

TEST_CASE("effective third-lap count") {
  // rotation-ordered orbits: the count is the constant spatial advance
  for (long long k : {1, 2, 3, 4, 5}) {
    const MapSpec spec = make_spec(KernelTag::Eos, 110.0, k, 11);
    const PeriodicOrbit orbit = find_attracting_orbit(spec, seed_point(spec, SeedKind::Plus));
    CHECK(effective_third_lap_count(spec, orbit) == static_cast<int>(k));
  }
  const MapSpec clean = make_spec(KernelTag::Eos, 130.0, 3, 11);
  const PeriodicOrbit orbit = find_attracting_orbit(clean, seed_point(clean, SeedKind::Plus));
  CHECK(effective_third_lap_count(clean, orbit) == 3);
  CHECK(std::count(orbit.laps.begin(), orbit.laps.end(), 3) == 3); // agrees with raw laps here
}

TEST_CASE("birth parameter bisection") {
  OrbitOptions opts;
  opts.transient = 60000;
  const double born = birth_parameter(make_rational(1, 3), KernelTag::Eos, 3,
                                      Interval{10.0, 40.0}, opts);
  CHECK(born > 10.0);
  CHECK(born < 40.0);
  // the predicate flips across the returned value
  const MapSpec above = make_spec(KernelTag::Eos, born, 1, 3);
  CHECK(find_attracting_orbit(above, seed_point(above, SeedKind::Plus), opts).period == 3);

  CHECK_THROWS_AS(birth_parameter(kB311, KernelTag::Eos, 7, Interval{83.3, 83.5}, opts),
                  BracketError);
  CHECK_THROWS_AS(birth_parameter(kB311, KernelTag::Eos, 11, Interval{80.0, 85.0}, opts),
                  BracketError);
}

TEST_CASE("return maps compose to the full period") {
  struct Params {
    Rational b;
    double a;
  };
  for (const Params& p : {Params{Rational{3, 11}, 110.0}, Params{Rational{4, 11}, 110.0},
                          Params{Rational{1, 3}, 40.0}}) {
    const ReturnMapData r0 = return_map(p.b, KernelTag::Eos, p.a, 0);
    const ReturnMapData r1 = return_map(p.b, KernelTag::Eos, p.a, 1);
    const long long n = p.b.den;
    CHECK(r0.r + r1.r == n);
    // the return time of the right cell is the modular inverse of k
    CHECK((p.b.num * r0.r) % n == 1);

    // mirror symmetry of the construction
    CHECK(r0.J.lo == -r1.J.hi);
    CHECK(r0.J.hi == -r1.J.lo);
    CHECK(r0.K.lo == doctest::Approx(-r1.K.hi).epsilon(1e-12));
    CHECK(r0.K.hi == doctest::Approx(-r1.K.lo).epsilon(1e-12));
  }
}

TEST_CASE("return graph is the map plus an exact vertical shift") {
  const ReturnMapData r1 = return_map(kB311, KernelTag::Eos, 110.0, 1, 64);
  CHECK(r1.r == 7);
  CHECK(r1.shift == Rational{7, 11});
  const MapSpec spec = make_spec(KernelTag::Eos, 110.0, 3, 11);
  const double shift = to_double(r1.shift);
  for (const auto& [x, y] : r1.graph) CHECK(y == eval_F(spec, x) + shift);

  const ReturnMapData r0 = return_map(kB311, KernelTag::Eos, 110.0, 0, 64);
  CHECK(r0.shift == Rational{-2, 11});
}

TEST_CASE("n-step images of the invariant cores stay inside") {
  const MapSpec spec = make_spec(KernelTag::Eos, 110.0, 3, 11);
  for (int j : {0, 1}) {
    const ReturnMapData data = return_map(kB311, KernelTag::Eos, 110.0, j);
    for (int i = 0; i <= 16; ++i) {
      const double x0 = data.K.lo + data.K.width() * i / 16.0;
      double x = x0;
      for (long long s = 0; s < 11; ++s) x = eval_hybrid(spec, x);
      CHECK(x >= data.K.lo);
      CHECK(x <= data.K.hi);
      // odd symmetry of the n-step hybrid map on the cores
      double mx = -x0;
      for (long long s = 0; s < 11; ++s) mx = eval_hybrid(spec, mx);
      CHECK(std::fabs(mx + x) < 1e-10);
    }
  }
}

TEST_CASE("mirrored return routes cancel") {
  // for x in J_0 the two return maps satisfy
  //   hybrid^{r_1}(-x) = -hybrid^{r_0}(x),
  // exactly because the shifts sum to 1 - 2b and F(x) + F(-x) = 2b - 1
  const MapSpec spec = make_spec(KernelTag::Eos, 110.0, 3, 11);
  const ReturnMapData r0 = return_map(kB311, KernelTag::Eos, 110.0, 0, 64);
  const ReturnMapData r1 = return_map(kB311, KernelTag::Eos, 110.0, 1, 64);
  CHECK(add(r0.shift, r1.shift) == Rational{5, 11}); // 1 - 2b exactly
  const double s0 = to_double(r0.shift);
  const double s1 = to_double(r1.shift);
  for (int i = 0; i <= 40; ++i) {
    const double x = r0.J.lo + r0.J.width() * i / 40.0;
    const double route0 = eval_F(spec, x) + s0;
    const double route1 = eval_F(spec, -x) + s1;
    CHECK(std::fabs(route1 + route0) < 1e-10);
  }
}

TEST_CASE("the period-11 plateau spans the sweep above the birth") {
  ScanOptions opts;
  opts.n_samples = 1;
  const auto records = scan(kB311, KernelTag::Eos, Interval{110.0, 180.0}, 2.5, opts);
  for (const ScanRecord& rec : records) {
    REQUIRE(rec.detected_period.has_value());
    CHECK(*rec.detected_period == 11);
  }
  // as a window: one run with q = 11 and k third-lap points
  const auto windows = detect_windows(records, kB311, KernelTag::Eos);
  REQUIRE(windows.size() == 1);
  CHECK(windows[0].q == 11);
  CHECK(windows[0].p == 3);
  CHECK(windows[0].verdict == FareyVerdict::NotNeighbor); // 3/11 is b itself
}

TEST_CASE("return graphs for different numerators differ by a constant") {
  const ReturnMapData three = return_map(Rational{3, 11}, KernelTag::Eos, 110.0, 1, 128);
  const ReturnMapData four = return_map(Rational{4, 11}, KernelTag::Eos, 110.0, 1, 128);
  REQUIRE(three.graph.size() == four.graph.size());
  CHECK(three.J.lo == four.J.lo); // the domain does not depend on the numerator
  CHECK(three.J.hi == four.J.hi);
  const double delta = four.graph[0].second - three.graph[0].second;
  for (std::size_t i = 0; i < three.graph.size(); ++i) {
    CHECK(three.graph[i].first == four.graph[i].first);
    CHECK(std::fabs((four.graph[i].second - three.graph[i].second) - delta) < 1e-9);
  }
}

TEST_CASE("sweeping the hybrid map leaves the window structure intact") {
  ScanOptions plain;
  plain.transient = 30000;
  plain.n_samples = 1;
  ScanOptions hybrid = plain;
  hybrid.use_hybrid = true;
  const Interval range{80.0, 89.0};
  const auto rf = scan(kB311, KernelTag::Eos, range, 0.02, plain);
  const auto rh = scan(kB311, KernelTag::Eos, range, 0.02, hybrid);
  REQUIRE(rf.size() == rh.size());
  const std::size_t grid = rf.size() / 2;
  std::size_t changed = 0;
  for (std::size_t gi = 0; gi < grid; ++gi) {
    bool mismatch = false;
    for (std::size_t s = 0; s < 2; ++s) {
      const auto& pf = rf[2 * gi + s].detected_period;
      const auto& ph = rh[2 * gi + s].detected_period;
      if (pf != ph) mismatch = true;
      // solid short-period windows must agree exactly
      if (pf && ph && *pf <= 30) CHECK(*pf == *ph);
    }
    if (mismatch) ++changed;
  }
  // isolated long-period flecks move by more than their width under the
  // exponentially small difference between the maps
  CHECK(static_cast<double>(changed) / static_cast<double>(grid) <= 0.01);
}

TEST_CASE("CSV output is deterministic across worker counts") {
  ScanOptions serial;
  serial.transient = 20000;
  serial.n_samples = 5;
  serial.jobs = 1;
  ScanOptions parallel = serial;
  parallel.jobs = 8;
  const auto a = scan_to_csv(scan(kB311, KernelTag::Eos, Interval{82.0, 84.0}, 0.1, serial));
  const auto b = scan_to_csv(scan(kB311, KernelTag::Eos, Interval{82.0, 84.0}, 0.1, parallel));
  CHECK(a == b);
  CHECK(a.substr(0, a.find('\n')) == "a,seed,sample_index,x,period");
  CHECK(a.find("82,minus,0,") != std::string::npos);
}

TEST_CASE("svg writers produce standalone documents") {
  ScanOptions opts;
  opts.transient = 5000;
  opts.n_samples = 10;
  const auto records = scan(kB311, KernelTag::Eos, Interval{108.0, 112.0}, 0.5, opts);
  const std::string scatter = scan_svg(records, kB311, KernelTag::Eos);
  CHECK(scatter.rfind("<svg", 0) == 0);
  CHECK(scatter.find("stroke=\"red\"") != std::string::npos);
  CHECK(scatter.find("stroke=\"cyan\"") != std::string::npos);
  CHECK(scatter.find("</svg>") != std::string::npos);

  const ReturnMapData data = return_map(kB311, KernelTag::Eos, 110.0, 1, 64);
  const std::string graph = return_map_svg(data, kB311, KernelTag::Eos, 110.0);
  CHECK(graph.rfind("<svg", 0) == 0);
  CHECK(graph.find("stroke=\"magenta\"") != std::string::npos);
  CHECK(graph.find("stroke=\"blue\"") != std::string::npos);
}

TEST_SUITE_END();
