#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "rotamime/errors.hpp"

namespace rotamime {

/// Exact reduced fraction on 64-bit integers. Denominator is always
/// positive and gcd(|num|, den) == 1. All arithmetic is overflow-checked.
struct Rational {
  long long num = 0;
  long long den = 1;

  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Builds the reduced fraction num/den. Throws DomainError on den == 0,
/// overflow_error if normalization overflows.
Rational make_rational(long long num, long long den);

Rational add(const Rational& a, const Rational& b);
Rational sub(const Rational& a, const Rational& b);
Rational neg(const Rational& a);
bool less(const Rational& a, const Rational& b);

/// (p1+p2)/(q1+q2).
Rational mediant(const Rational& a, const Rational& b);

double to_double(const Rational& a);

/// "k/n".
std::string to_string(const Rational& a);

/// Parses "k/n"; throws DomainError on malformed input.
Rational parse_rational(const std::string& s);

// --- Farey arithmetic -----------------------------------------------------
//
// The parents of a reduced fraction k/n in (0,1) are the unique pair of
// reduced fractions whose mediant is k/n and whose cross-determinant is
// +-1. They are the two fractions with denominator < n that are Farey
// neighbors of k/n.

/// Returns the parent pair ordered by denominator (smaller first).
/// Requires 0 < k < n (equivalently 0/1 and 1/1 have no parents).
std::pair<Rational, Rational> farey_parents(const Rational& f);

/// The parent with the larger denominator.
Rational larger_denominator_parent(const Rational& f);

/// True iff |p*n - q*k| == 1 for p/q vs k/n, exact integer arithmetic.
bool is_farey_neighbor(const Rational& a, const Rational& b);

} // namespace rotamime
