#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frontend/problem.hpp"

namespace miniomt::bench {

// splitmix64: tiny deterministic PRNG, identical on every platform.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

struct SpInstance {
    size_t n = 0;
    Rational strip_height;  // sqrt(n)/2, sqrt rounded to 3 decimals
    std::vector<Rational> widths;   // in (1, 2], steps of 1/1000
    std::vector<Rational> heights;  // in (0, strip_height], steps of 1/1000
    bool lira = false;
    std::vector<bool> integer_coords;  // per rectangle, lira only
    uint64_t seed = 0;
};

// Deterministic per (n, seed); the lira flag only adds the integrality coin
// flips on top of the same width/height data.
SpInstance sample_sp(size_t n, uint64_t seed, bool lira);

// Variables x_i, y_i, L; containment bounds plus one 4-literal non-overlap
// clause per rectangle pair; objective minimize L. Self-checks that a
// side-by-side placement satisfies every clause.
Problem build_sp_problem(const SpInstance& inst);

// Problem text (frontend grammar) with a generation-parameter header.
std::string sp_problem_text(const SpInstance& inst);

}  // namespace miniomt::bench
