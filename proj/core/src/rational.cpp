#include "rotamime/rational.hpp"

#include <cstdlib>
#include <numeric>

namespace rotamime {

namespace {

long long checked_mul(long long a, long long b) {
  long long r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("rational: multiply overflow");
  return r;
}

long long checked_add(long long a, long long b) {
  long long r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("rational: add overflow");
  return r;
}

} // namespace

Rational make_rational(long long num, long long den) {
  if (den == 0) throw DomainError("rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational{num, den};
}

Rational add(const Rational& a, const Rational& b) {
  return make_rational(checked_add(checked_mul(a.num, b.den), checked_mul(b.num, a.den)),
                       checked_mul(a.den, b.den));
}

Rational sub(const Rational& a, const Rational& b) { return add(a, neg(b)); }

Rational neg(const Rational& a) { return Rational{-a.num, a.den}; }

bool less(const Rational& a, const Rational& b) {
  return checked_mul(a.num, b.den) < checked_mul(b.num, a.den);
}

Rational mediant(const Rational& a, const Rational& b) {
  return make_rational(checked_add(a.num, b.num), checked_add(a.den, b.den));
}

double to_double(const Rational& a) {
  return static_cast<double>(a.num) / static_cast<double>(a.den);
}

std::string to_string(const Rational& a) {
  return std::to_string(a.num) + "/" + std::to_string(a.den);
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 >= s.size())
    throw DomainError("rational: expected \"k/n\", got \"" + s + "\"");
  char* end = nullptr;
  long long num = std::strtoll(s.c_str(), &end, 10);
  if (end != s.c_str() + slash) throw DomainError("rational: bad numerator in \"" + s + "\"");
  long long den = std::strtoll(s.c_str() + slash + 1, &end, 10);
  if (end != s.c_str() + s.size()) throw DomainError("rational: bad denominator in \"" + s + "\"");
  return make_rational(num, den);
}

namespace {

void require_interior_fraction(const Rational& f) {
  if (f.num <= 0 || f.num >= f.den || f.den < 2)
    throw DomainError("farey: " + to_string(f) + " has no parents");
}

// Modular inverse of k mod n via extended Euclid; k, n coprime.
long long mod_inverse(long long k, long long n) {
  long long r0 = n, r1 = k % n;
  long long s0 = 0, s1 = 1;
  while (r1 != 0) {
    long long q = r0 / r1;
    long long r2 = r0 - q * r1;
    long long s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  long long inv = s0 % n;
  if (inv < 0) inv += n;
  return inv;
}

} // namespace

std::pair<Rational, Rational> farey_parents(const Rational& f) {
  require_interior_fraction(f);
  long long k = f.num, n = f.den;
  // The parent denominators are the two residues m with k*m = +-1 (mod n).
  long long m = mod_inverse(k, n); // k*m = 1 (mod n), 0 < m < n
  long long i = (checked_mul(k, m) - 1) / n;
  Rational p1 = make_rational(i, m);
  Rational p2 = make_rational(k - i, n - m);
  if (p1.den > p2.den) std::swap(p1, p2);
  return {p1, p2};
}

Rational larger_denominator_parent(const Rational& f) {
  return farey_parents(f).second;
}

bool is_farey_neighbor(const Rational& a, const Rational& b) {
  long long det = checked_mul(a.num, b.den) - checked_mul(a.den, b.num);
  return det == 1 || det == -1;
}

} // namespace rotamime
