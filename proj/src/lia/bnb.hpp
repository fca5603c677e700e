#pragma once

#include <vector>

#include "lra/simplex.hpp"

namespace miniomt::lia {

using lra::OptResult;

struct BnbConfig {
    enum class Mode { Full, Truncated };
    Mode mode = Mode::Full;
    size_t node_limit = 100000;  // relaxation solves before giving up
};

// Minimizes `objective` over the conjunction of `mu` with the variables
// flagged in `is_integer` restricted to integers. Branch-and-bound with
// best-bound node selection and most-fractional branching; branch cuts are
// x <= floor(v) and x >= floor(v)+1.
//
// Full mode returns the integer optimum. Truncated mode returns the first
// integer-feasible node found (flagged via OptResult.truncated). When the
// node limit runs out, resource_out is set; the result then carries the best
// model found so far if any, and an empty, non-authoritative core otherwise.
// `limiting` always comes from the LRA relaxation at the returned node.
OptResult minimize_mixed(const AtomTable& atoms, size_t num_vars,
                         const std::vector<bool>& is_integer, const std::vector<Literal>& mu,
                         const LinearTerm& objective, const BnbConfig& cfg);

// LRA minimize over mu ignoring integrality (the approximate minimizer used
// by the guided reduction loop).
OptResult minimize_relaxation(const AtomTable& atoms, size_t num_vars,
                              const std::vector<Literal>& mu, const LinearTerm& objective);

}  // namespace miniomt::lia
