#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "frontend/problem.hpp"

namespace miniomt::bench {

// Inclusive per-variable bounds for grid scans and unboundedness detection.
using Box = std::map<VarId, std::pair<Rational, Rational>>;

struct OracleResult {
    enum class Status { Optimum, Unsat, Unbounded };
    Status status = Status::Unsat;
    DeltaRational value;  // on Optimum
};

// Exact optimum of the conjunction of theory literals, by enumerating every
// potential vertex of the constraint polytope (all n-subsets of constraint
// hyperplanes, solved in delta-rational arithmetic) inside a large synthetic
// bounding box; an optimum on the box boundary is reported as unbounded.
OracleResult vertex_minimize(const std::vector<Literal>& lits, const LinearTerm& objective,
                             const AtomTable& atoms, size_t num_vars,
                             const std::optional<Box>& box = std::nullopt);

// Exact optimum of the conjunction over a finite box: integer variables are
// scanned over the integer grid, rational variables handled by vertex
// enumeration after substitution. Throws when the grid exceeds `max_grid`.
OracleResult grid_minimize(const std::vector<Literal>& lits, const LinearTerm& objective,
                           const AtomTable& atoms, size_t num_vars,
                           const std::vector<VarType>& var_types, const Box& box,
                           size_t max_grid = 10000);

// Reference optimum of a whole problem: enumerate the propositionally
// satisfying total assignments of the CNF skeleton and minimize each with
// the oracle above. Refuses formulas with more than 24 atoms.
OracleResult brute_force_omt(const Problem& p, const std::optional<Box>& box = std::nullopt);

}  // namespace miniomt::bench
