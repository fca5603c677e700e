#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace miniomt {

// Exact arbitrary-precision rational. mpq_class keeps values canonical
// (den > 0, gcd(|num|, den) = 1) as long as they are built through its
// own operators; raw mpq_t manipulation must call canonicalize().
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Parses "p", "-p", or "p/q". Returns nullopt on malformed input.
std::optional<Rational> rat_from_string(const std::string& s);

// Canonical "p" or "p/q" form, matching the CSV serialization.
std::string rat_to_string(const Rational& q);

Integer rat_floor(const Rational& q);
Integer rat_ceil(const Rational& q);
bool is_integer(const Rational& q);

}  // namespace miniomt
