#pragma once

#include <vector>

#include "core/atoms.hpp"
#include "lra/simplex.hpp"

namespace miniomt::reduce {

enum class Strategy { None, Basic, Guided };

struct ReductionReport {
    TruthAssignment reduced;
    std::vector<Literal> dropped;  // in drop order
    size_t minimize_calls = 0;     // guided only
    std::vector<Literal> final_limiting;
    std::vector<DeltaRational> minimize_values;  // value after each minimize call
};

// Single-pass reduction: walks eta's theory literals in the order their
// atoms first appear in the formula and drops each one whose removal keeps
// every clause satisfied. `theory_only = false` extends the candidate set to
// boolean literals (comparison aid; not used by the solver pipeline).
// Throws std::invalid_argument if eta is not a total satisfying assignment.
ReductionReport reduce_basic(const CnfFormula& phi, const TruthAssignment& eta,
                             bool theory_only = true);

// Minimizer-guided reduction: minimize (the LRA relaxation of) eta, then
// repeatedly ask the simplex for limiting literals, dropping a proposal
// whenever the clauses stay satisfied and re-minimizing after every single
// drop. `num_vars` is the arithmetic variable count of the problem.
// Throws std::invalid_argument if eta is not total/satisfying and
// std::runtime_error if eta is theory-inconsistent.
ReductionReport reduce_guided(const CnfFormula& phi, const TruthAssignment& eta,
                              const LinearTerm& objective, size_t num_vars);

}  // namespace miniomt::reduce
