#pragma once

#include <compare>
#include <string>

#include "core/rational.hpp"

namespace miniomt {

// Value of the form r + k*delta where delta is a positive infinitesimal,
// used to represent strict bounds exactly: (x < c) becomes x <= c - delta.
// Ordering is lexicographic on (real, delta_coeff).
struct DeltaRational {
    Rational real;
    Rational delta;

    DeltaRational() = default;
    DeltaRational(Rational r) : real(std::move(r)) {}
    DeltaRational(Rational r, Rational d) : real(std::move(r)), delta(std::move(d)) {}

    bool is_rational() const { return delta == 0; }

    DeltaRational operator+(const DeltaRational& o) const {
        return {real + o.real, delta + o.delta};
    }
    DeltaRational operator-(const DeltaRational& o) const {
        return {real - o.real, delta - o.delta};
    }
    DeltaRational operator-() const { return {-real, -delta}; }
    DeltaRational operator*(const Rational& c) const { return {real * c, delta * c}; }
    DeltaRational& operator+=(const DeltaRational& o) {
        real += o.real;
        delta += o.delta;
        return *this;
    }
    DeltaRational& operator-=(const DeltaRational& o) {
        real -= o.real;
        delta -= o.delta;
        return *this;
    }

    friend bool operator==(const DeltaRational& a, const DeltaRational& b) {
        return a.real == b.real && a.delta == b.delta;
    }
    friend bool operator<(const DeltaRational& a, const DeltaRational& b) {
        int c = cmp(a.real, b.real);
        if (c != 0) return c < 0;
        return a.delta < b.delta;
    }
    friend bool operator<=(const DeltaRational& a, const DeltaRational& b) {
        return a == b || a < b;
    }
    friend bool operator>(const DeltaRational& a, const DeltaRational& b) { return b < a; }
    friend bool operator>=(const DeltaRational& a, const DeltaRational& b) { return b <= a; }
    friend bool operator!=(const DeltaRational& a, const DeltaRational& b) { return !(a == b); }
};

inline std::string to_string(const DeltaRational& v) {
    if (v.delta == 0) return rat_to_string(v.real);
    std::string s = rat_to_string(v.real);
    if (v.delta > 0) s += "+";
    s += rat_to_string(v.delta) + "d";
    return s;
}

}  // namespace miniomt
