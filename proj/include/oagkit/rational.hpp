#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace oagkit {

using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(std::int64_t num, std::int64_t den = 1);
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }
int sign(const Rational& r);

/// True iff no prime in `primes` divides the (reduced) denominator.
bool denominator_coprime_to(const Rational& r, const std::vector<std::int64_t>& primes);

/// Distinct prime factors, ascending.
std::vector<std::int64_t> prime_factors(std::int64_t n);
/// The n-th prime, counting from 0 (0 -> 2).
std::int64_t nth_prime(std::size_t n);
/// Inverse of nth_prime; -1 if p is not prime.
std::int64_t prime_index(std::int64_t p);

// Rib coordinate. `fin` is the standard part; `inf` counts a fixed nonstandard
// element F of a non-archimedean discrete rib, F divisible by every integer.
// Ordering is lexicographic with `inf` first.
struct Coord {
    Rational fin{0};
    Rational inf{0};

    Coord() = default;
    Coord(Rational f) : fin(std::move(f)) {}  // NOLINT(google-explicit-constructor)
    Coord(Rational f, Rational i) : fin(std::move(f)), inf(std::move(i)) {}

    bool is_zero() const { return sgn(fin) == 0 && sgn(inf) == 0; }
    int sign() const;
    bool standard() const { return sgn(inf) == 0; }

    Coord operator-() const { return {-fin, -inf}; }
    Coord& operator+=(const Coord& o) { fin += o.fin; inf += o.inf; return *this; }
    Coord& operator-=(const Coord& o) { fin -= o.fin; inf -= o.inf; return *this; }
    friend Coord operator+(Coord a, const Coord& b) { return a += b; }
    friend Coord operator-(Coord a, const Coord& b) { return a -= b; }
    friend Coord operator*(const Rational& k, const Coord& c) { return {k * c.fin, k * c.inf}; }
    Coord divided(const Rational& k) const { return {fin / k, inf / k}; }

    friend bool operator==(const Coord& a, const Coord& b) { return a.fin == b.fin && a.inf == b.inf; }
    friend std::strong_ordering operator<=>(const Coord& a, const Coord& b);
};

std::string to_string(const Coord& c);

}  // namespace oagkit
