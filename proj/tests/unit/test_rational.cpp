#include <doctest.h>

#include "oracles.hpp"
#include "rotamime/rational.hpp"

using namespace rotamime;

TEST_SUITE_BEGIN("rational");

TEST_CASE("normalization and parsing") {
  CHECK(make_rational(6, 4) == Rational{3, 2});
  CHECK(make_rational(-6, 4) == Rational{-3, 2});
  CHECK(make_rational(6, -4) == Rational{-3, 2});
  CHECK(make_rational(0, 7) == Rational{0, 1});
  CHECK_THROWS_AS(make_rational(1, 0), DomainError);
  CHECK(parse_rational("3/11") == Rational{3, 11});
  CHECK(parse_rational("-2/4") == Rational{-1, 2});
  CHECK_THROWS_AS(parse_rational("3:11"), DomainError);
  CHECK_THROWS_AS(parse_rational("3/"), DomainError);
  CHECK(to_string(Rational{3, 11}) == "3/11");
}

TEST_CASE("arithmetic") {
  CHECK(add(Rational{1, 3}, Rational{1, 6}) == Rational{1, 2});
  CHECK(sub(Rational{1, 2}, Rational{1, 3}) == Rational{1, 6});
  CHECK(mediant(Rational{1, 4}, Rational{2, 7}) == Rational{3, 11});
  CHECK(less(Rational{1, 4}, Rational{2, 7}));
  CHECK(to_double(Rational{1, 2}) == 0.5);
}

TEST_CASE("parents of named fractions") {
  auto [small, large] = farey_parents(make_rational(3, 11));
  CHECK(small == Rational{1, 4});
  CHECK(large == Rational{2, 7});
  CHECK(larger_denominator_parent(make_rational(3, 11)) == Rational{2, 7});

  auto half = farey_parents(make_rational(1, 2));
  CHECK(half.first == Rational{0, 1});
  CHECK(half.second == Rational{1, 1});
  CHECK(larger_denominator_parent(make_rational(1, 2)) == Rational{1, 1});

  // frozen from the exhaustive search oracle
  auto five11 = oracles::brute_force_parents(make_rational(5, 11));
  REQUIRE(five11.has_value());
  CHECK(five11->first == Rational{1, 2});
  CHECK(five11->second == Rational{4, 9});
  auto got = farey_parents(make_rational(5, 11));
  CHECK(got.first == five11->first);
  CHECK(got.second == five11->second);

  CHECK(larger_denominator_parent(make_rational(1, 11)) == Rational{1, 10});
}

TEST_CASE("parents rejected outside (0,1)") {
  CHECK_THROWS_AS(farey_parents(Rational{0, 1}), DomainError);
  CHECK_THROWS_AS(farey_parents(Rational{1, 1}), DomainError);
  CHECK_THROWS_AS(farey_parents(Rational{5, 3}), DomainError);
}

TEST_CASE("neighbor test") {
  CHECK(is_farey_neighbor(make_rational(2, 7), make_rational(3, 11)));
  CHECK(is_farey_neighbor(make_rational(1, 4), make_rational(3, 11)));
  CHECK_FALSE(is_farey_neighbor(make_rational(3, 11), make_rational(3, 11)));
  CHECK_FALSE(is_farey_neighbor(make_rational(1, 3), make_rational(3, 11)));
}

TEST_CASE("mediant and determinant identities") {
  for (long long n = 2; n <= 40; ++n) {
    for (long long k = 1; k < n; ++k) {
      if (std::gcd(k, n) != 1) continue;
      const Rational f = make_rational(k, n);
      auto [p1, p2] = farey_parents(f);
      CHECK(p1.num + p2.num == k);
      CHECK(p1.den + p2.den == n);
      const long long det = p1.num * p2.den - p2.num * p1.den;
      CHECK((det == 1 || det == -1));
      CHECK(p1.den <= p2.den);
      CHECK(is_farey_neighbor(p1, f));
      CHECK(is_farey_neighbor(p2, f));
    }
  }
}

TEST_CASE("agreement with the exhaustive oracle up to denominator 50") {
  for (long long n = 2; n <= 50; ++n) {
    for (long long k = 1; k < n; ++k) {
      if (std::gcd(k, n) != 1) continue;
      const Rational f = make_rational(k, n);
      const auto expected = oracles::brute_force_parents(f);
      REQUIRE(expected.has_value());
      const auto got = farey_parents(f);
      CHECK(got.first == expected->first);
      CHECK(got.second == expected->second);
    }
  }
}

TEST_SUITE_END();
