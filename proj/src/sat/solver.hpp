#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "core/atoms.hpp"

namespace miniomt::sat {

// CDCL SAT solver over the propositional skeleton: two-watched-literal
// propagation, 1UIP conflict analysis, VSIDS activity, phase saving and Luby
// restarts. Assumption-based solving returns an unsat core on failure. All
// heuristics are deterministic given the seed.
class Solver {
public:
    explicit Solver(uint64_t seed = 0);
    ~Solver();
    Solver(Solver&&) noexcept;
    Solver& operator=(Solver&&) noexcept;

    // Atoms map one-to-one to solver variables; unknown atoms are created on
    // demand. An empty clause makes the solver permanently unsat.
    void add_clause(const Clause& c);

    struct Result {
        bool sat = false;
        TruthAssignment model;          // total over all known atoms, on SAT
        std::vector<Literal> core;      // subset of assumptions, on UNSAT
    };

    Result solve(const std::vector<Literal>& assumptions = {});

    size_t num_vars() const;
    size_t num_clauses() const;  // excludes learned clauses

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace miniomt::sat
