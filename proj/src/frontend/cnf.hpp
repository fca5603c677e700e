#pragma once

#include <memory>
#include <vector>

#include "core/atoms.hpp"

namespace miniomt {

// Boolean structure over interned atoms, prior to CNF conversion.
struct BoolExpr;
using BoolExprPtr = std::shared_ptr<const BoolExpr>;

struct BoolExpr {
    enum class Kind { True, False, Lit, And, Or, Not };
    Kind kind;
    Literal lit;  // Kind::Lit
    std::vector<BoolExprPtr> kids;

    static BoolExprPtr make_true();
    static BoolExprPtr make_false();
    static BoolExprPtr make_lit(Literal l);
    static BoolExprPtr make_and(std::vector<BoolExprPtr> kids);
    static BoolExprPtr make_or(std::vector<BoolExprPtr> kids);
    static BoolExprPtr make_not(BoolExprPtr e);
};

// Plaisted-Greenbaum CNF conversion. Negations are pushed to literals;
// auxiliary boolean atoms (flagged non-theory) are introduced only for
// nested subformulas, with one-sided definitions. Tautological clauses are
// dropped and duplicate literals removed.
void cnf_convert(const BoolExprPtr& expr, CnfFormula& out);

}  // namespace miniomt
