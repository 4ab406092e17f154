#include <cmath>

#include <doctest.h>

#include "oracles.hpp"
#include "rotamime/conditions.hpp"

using namespace rotamime;

TEST_SUITE_BEGIN("conditions");

namespace {

const ConditionCheck& check_by_id(const ConditionReport& r, const std::string& id) {
  for (const ConditionCheck& c : r.checks)
    if (c.id == id) return c;
  REQUIRE(false);
  static ConditionCheck dummy;
  return dummy;
}

} // namespace

TEST_CASE("critical points against the root-solving oracle") {
  // eos: g'(y) = 1 solved in extended precision on (0, 1)
  for (double a : {5.0, 10.0, 40.0, 90.0, 110.0, 200.0}) {
    const KernelFamily kernel{KernelTag::Eos, a};
    const CriticalPoints cp = critical_points(kernel);
    const long double al = static_cast<long double>(a);
    auto slope_minus_one = [&](long double y) {
      const long double s = oracles::logistic_hp(al * y);
      return al * s * (1.0L - s) - 1.0L;
    };
    // g' decreases through 1 on (0, inf); bracket [tiny, 1]
    const long double root = oracles::bisect_hp(slope_minus_one, 1e-6L, 1.0L);
    CHECK(cp.plus == doctest::Approx(static_cast<double>(root)).epsilon(1e-12));
    CHECK(cp.minus == -cp.plus); // constructed by exact negation
    CHECK(kernel_g_deriv(kernel, cp.plus, 1) == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(kernel_g_deriv(kernel, cp.minus, 1) == doctest::Approx(1.0).epsilon(1e-11));
    // t-scales multiply to 1 for this kernel
    CHECK(cp.t_minus * cp.t_plus == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("critical points for the other kernels") {
  for (KernelTag tag : {KernelTag::Arctan, KernelTag::Erf}) {
    const KernelFamily kernel{tag, 12.0};
    const CriticalPoints cp = critical_points(kernel);
    CHECK(kernel_g_deriv(kernel, cp.plus, 1) == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(cp.plus > 0.0);
    CHECK(cp.minus == -cp.plus);
  }
  CHECK_THROWS_AS(critical_points(KernelFamily{KernelTag::Arctan, M_PI}), NoCriticalPointsError);
  CHECK_THROWS_AS(critical_points(KernelFamily{KernelTag::Erf, std::sqrt(M_PI)}),
                  NoCriticalPointsError);
}

TEST_CASE("existence threshold is strict") {
  CHECK_THROWS_AS(critical_points(KernelFamily{KernelTag::Eos, 4.0}), NoCriticalPointsError);
  CHECK_THROWS_AS(critical_points(KernelFamily{KernelTag::Eos, 3.0}), NoCriticalPointsError);
  CHECK_NOTHROW(critical_points(KernelFamily{KernelTag::Eos, 4.0 + 1e-9}));
}

TEST_CASE("critical point brackets: log(a-3)/a < y+ < log(a-2)/a") {
  for (double a : {10.0, 40.0, 110.0, 200.0}) {
    const CriticalPoints cp = critical_points(KernelFamily{KernelTag::Eos, a});
    CHECK(cp.plus > std::log(a - 3.0) / a);
    CHECK(cp.plus < std::log(a - 2.0) / a);
    CHECK(cp.t_minus > a - 3.0);
    CHECK(cp.t_minus < a - 2.0);
  }
  // the a = 40 value, frozen from the quadratic-root oracle
  const CriticalPoints cp40 = critical_points(KernelFamily{KernelTag::Eos, 40.0});
  CHECK(cp40.plus == doctest::Approx(0.090922322961603).epsilon(1e-12));
}

TEST_CASE("correction bracket at the critical point: 1/(a-1) < F(y+) - G(y+) < 1/(a-2)") {
  for (double a : {10.0, 40.0, 110.0, 200.0}) {
    const MapSpec spec = make_spec(KernelTag::Eos, a, 1, 3);
    const CriticalPoints cp = critical_points(spec);
    const double jump = correction(spec, cp.plus);
    CHECK(jump > 1.0 / (a - 1.0));
    CHECK(jump < 1.0 / (a - 2.0));
  }
}

TEST_CASE("membership decisions") {
  const ConditionReport strong = check_membership(make_spec(KernelTag::Eos, 40.0, 1, 3));
  CHECK(strong.member);
  CHECK(strong.y_plus_lt_half_basic);

  // all conditions hold only when the correction budget fits; at this
  // steepness the accumulated budget is an order of magnitude too large
  const ConditionReport mid = check_membership(make_spec(KernelTag::Eos, 90.0, 3, 11));
  CHECK_FALSE(mid.member);
  CHECK(check_by_id(mid, "A1").passed);
  CHECK(check_by_id(mid, "A2").passed);
  CHECK(check_by_id(mid, "B").passed);
  CHECK_FALSE(check_by_id(mid, "C3").passed);
  CHECK_FALSE(check_by_id(mid, "C4").passed);
  CHECK_FALSE(mid.y_plus_lt_half_basic);

  const ConditionReport weak = check_membership(make_spec(KernelTag::Eos, 5.0, 3, 11));
  CHECK_FALSE(weak.member);
  CHECK_FALSE(check_by_id(weak, "C3").passed);

  const ConditionReport high = check_membership(make_spec(KernelTag::Eos, 170.0, 3, 11));
  CHECK(high.member);
  CHECK(high.y_plus_lt_half_basic);

  // below the critical threshold condition A reports failure, no throw
  const ConditionReport none = check_membership(make_spec(KernelTag::Eos, 3.0, 1, 3));
  CHECK_FALSE(none.member);
  CHECK_FALSE(none.has_critical);
  CHECK_FALSE(check_by_id(none, "A2").passed);
  CHECK(check_by_id(none, "A2").margin < 0.0);
}

TEST_CASE("member iff every margin is positive") {
  for (double a : {5.0, 40.0, 90.0, 140.0, 170.0}) {
    const ConditionReport r = check_membership(make_spec(KernelTag::Eos, a, 3, 11));
    bool all_positive = true;
    for (const ConditionCheck& c : r.checks) all_positive = all_positive && c.margin > 0.0;
    CHECK(r.member == all_positive);
  }
}

TEST_CASE("mirrored margins agree") {
  for (double a : {40.0, 90.0, 170.0}) {
    const ConditionReport r = check_membership(make_spec(KernelTag::Eos, a, 3, 11));
    CHECK(std::fabs(check_by_id(r, "C1").margin - check_by_id(r, "C2").margin) < 1e-12);
    CHECK(std::fabs(check_by_id(r, "C3").margin - check_by_id(r, "C4").margin) < 1e-12);
  }
}

TEST_CASE("epsilon is the minimal feasible correction bound") {
  const MapSpec spec = make_spec(KernelTag::Eos, 90.0, 3, 11);
  const ConditionReport r = check_membership(spec);
  const double half = 1.0 / 22.0;
  CHECK(r.epsilon == std::max(eval_g(spec, -half), 1.0 - eval_g(spec, half)));
  // feasibility: g stays below epsilon strictly inside the tail
  for (int i = 1; i <= 100; ++i) {
    const double x = -half - i * 0.005;
    CHECK(eval_g(spec, x) < r.epsilon);
  }
}

TEST_CASE("invariant interval check") {
  const InvariantIntervalReport at90 = invariant_interval_check(make_spec(KernelTag::Eos, 90.0, 3, 11));
  CHECK(at90.ok);

  const InvariantIntervalReport at40 = invariant_interval_check(make_spec(KernelTag::Eos, 40.0, 1, 3));
  CHECK(at40.ok);
  CHECK(at40.margin_left > 0.0);
  CHECK(at40.margin_right > 0.0);
  CHECK(at40.margin_at_minus > 0.0);
  CHECK(at40.margin_at_plus > 0.0);
  // the interior margins are the jump sizes: b - F(y-) and F(y+) - (b-1)
  const MapSpec s40 = make_spec(KernelTag::Eos, 40.0, 1, 3);
  const CriticalPoints cp = critical_points(s40);
  CHECK(at40.margin_at_plus ==
        doctest::Approx(1.0 - eval_g(s40, cp.plus) + cp.plus).epsilon(1e-12));

  // a gentle slope with b near 1 pushes F(b) above b
  const InvariantIntervalReport bad = invariant_interval_check(make_spec(KernelTag::Eos, 2.5, 10, 11));
  CHECK_FALSE(bad.ok);
  CHECK(bad.margin_right < 0.0);
}

TEST_CASE("membership threshold by bisection") {
  const Rational b = make_rational(3, 11);
  const double star = membership_threshold(b, KernelTag::Eos, Interval{4.1, 200.0});
  CHECK(star > 100.0);
  CHECK(star < 200.0);

  auto member_at = [&](double a) {
    return check_membership(make_spec(KernelTag::Eos, a, 3, 11)).member;
  };
  CHECK(member_at(star));
  CHECK(member_at(star + 1e-3));
  CHECK_FALSE(member_at(star - 1e-3));

  // dense-grid oracle around the reported threshold
  double first_member = 0.0;
  for (double a = star - 0.005; a <= star + 0.005; a += 1e-3) {
    if (member_at(a)) {
      first_member = a;
      break;
    }
  }
  CHECK(std::fabs(first_member - star) <= 1e-3 + 1e-6);

  CHECK_THROWS_AS(membership_threshold(make_rational(1, 3), KernelTag::Eos, Interval{200.0, 300.0}),
                  BracketError);
}

TEST_CASE("membership is monotone above the threshold") {
  const Rational b = make_rational(1, 3);
  const double star = membership_threshold(b, KernelTag::Eos, Interval{4.1, 200.0});
  for (int i = 0; i <= 50; ++i) {
    CHECK(check_membership(make_spec(KernelTag::Eos, star + i, 1, 3)).member);
  }
}

TEST_SUITE_END();
