#pragma once

#include <optional>
#include <vector>

#include "frontend/problem.hpp"
#include "lia/bnb.hpp"
#include "reduce/reduce.hpp"

namespace miniomt::omt {

struct OmtConfig {
    reduce::Strategy strategy = reduce::Strategy::None;
    // Branch-and-bound mode for mixed problems; defaults to Truncated when
    // the problem has integer variables and the caller leaves it unset.
    std::optional<lia::BnbConfig::Mode> lia_mode;
    size_t lia_node_limit = 100000;
    bool learn_block_lemma = true;
    double time_budget_s = 1e9;
    uint64_t seed = 0;
    // Extra assumptions for the first SAT call only; lets tests pin the first
    // enumerated assignment.
    std::vector<Literal> forced_first;
};

struct IterationRecord {
    size_t index = 0;  // 1-based, counts theory-consistent SAT answers
    double time_s = 0;
    DeltaRational ub;  // upper bound after this iteration
    size_t literals_dropped = 0;
    size_t minimize_calls = 0;  // reduction minimizations + the final one
};

struct OmtTrace {
    std::vector<IterationRecord> iterations;
    size_t theory_conflicts = 0;  // SAT answers rejected by the theory
    size_t lemmas_learned = 0;
    double total_time_s = 0;
};

struct OmtOutcome {
    enum class Status { Optimum, Unsat, Unbounded, BudgetExhausted };
    Status status = Status::Unsat;
    std::optional<ArithModel> model;      // best model found
    std::optional<DeltaRational> value;   // its objective value
    OmtTrace trace;
};

// The literal assumed to force (cost < ub) in the next SAT call. Interns
// (cost - ub.real <= 0) when ub has a positive delta part (any rational
// strictly below ub is then <= ub.real) and (cost - ub.real < 0) otherwise.
Literal objective_bound_atom(AtomTable& atoms, const LinearTerm& cost, const DeltaRational& ub);

// Linear-search optimization: enumerate satisfying assignments under a
// strictly tightening cost bound, reduce each assignment per the configured
// strategy, minimize the reduced conjunction, and repeat until UNSAT.
OmtOutcome solve(const Problem& problem, const OmtConfig& cfg);

}  // namespace miniomt::omt
