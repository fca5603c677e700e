#pragma once

#include <string>
#include <vector>

#include "core/atoms.hpp"

namespace miniomt {

enum class VarType { Rational, Integer };

// An optimization problem: CNF over interned atoms plus a linear objective
// to minimize. When the input used (maximize t) the objective is stored
// negated and `maximize` is set so results can be sign-flipped on output.
struct Problem {
    CnfFormula cnf;
    LinearTerm objective;
    std::vector<VarType> var_types;   // indexed by VarId
    std::vector<std::string> var_names;
    std::string name;
    bool maximize = false;

    size_t num_vars() const { return var_types.size(); }
    bool has_integer_vars() const {
        for (VarType t : var_types)
            if (t == VarType::Integer) return true;
        return false;
    }
};

std::string print_problem(const Problem& p);

}  // namespace miniomt
