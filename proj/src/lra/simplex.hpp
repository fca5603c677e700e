#pragma once

#include <map>
#include <optional>
#include <vector>

#include "core/atoms.hpp"

namespace miniomt::lra {

struct OptResult {
    enum class Status { Optimum, Unbounded, Infeasible };
    Status status = Status::Infeasible;
    ArithModel model;               // concretized, on Optimum
    DeltaModel delta_model;         // exact delta-valued model, on Optimum
    DeltaRational value;            // objective value, on Optimum
    std::vector<Literal> limiting;  // active bounds with nonzero reduced cost
    std::vector<Literal> core;      // on Infeasible
    bool truncated = false;         // set by the mixed minimizer
    bool resource_out = false;      // set by the mixed minimizer
};

// Incremental Simplex over a conjunction of asserted bound literals, in the
// style of the general simplex for SMT: each distinct linear form gets a
// slack variable, literals become bounds on variables, and strict bounds are
// represented with an infinitesimal delta component. Feasibility pivots use
// Bland's rule; the optimization phase picks the steepest reduced cost and
// falls back to Bland after 2x the variable count pivots.
class Simplex {
public:
    struct Conflict {
        std::vector<Literal> core;
        bool complete = true;  // false if an untagged internal bound is involved
    };

    Simplex(const AtomTable& atoms, size_t num_problem_vars);

    // Adds the bound corresponding to a theory literal. Detects an immediate
    // conflict when the new bound crosses the opposite one.
    std::optional<Conflict> assert_literal(Literal l);

    // Internal bound with no asserting literal (branch-and-bound cuts).
    std::optional<Conflict> assert_cut(VarId v, bool is_lower, const DeltaRational& val);

    // Restores feasibility by pivoting; returns a conflict core on unsat.
    std::optional<Conflict> check();

    OptResult minimize(const LinearTerm& objective);

    // Cursor over the limiting literals of the last minimize, in decreasing
    // order of |reduced cost| (ties by assertion order). Throws
    // std::logic_error before any minimize.
    std::optional<Literal> propose_literal_to_drop();

    void push();
    void pop(size_t n = 1);
    size_t depth() const { return frames_.size(); }

private:
    using SVar = uint32_t;
    struct Bound {
        DeltaRational val;
        std::optional<Literal> lit;
        uint64_t order = 0;  // assertion sequence, for deterministic ties
    };
    struct UndoBound {
        SVar var;
        bool is_lower;
        std::optional<Bound> old;
    };

    SVar intern_form(const LinearTerm& var_part);
    std::optional<Conflict> assert_bound(SVar s, bool is_lower, DeltaRational val,
                                         std::optional<Literal> lit);
    void update_nonbasic(SVar s, const DeltaRational& v);
    void pivot(SVar leaving_basic, SVar entering_nonbasic);
    Conflict row_conflict(SVar basic, bool need_increase) const;
    Rational concretization_eps() const;

    const AtomTable& atoms_;
    size_t num_problem_vars_;

    std::vector<DeltaRational> values_;
    std::vector<std::optional<Bound>> lower_, upper_;
    std::vector<bool> basic_;
    // Row for each basic variable: basic = sum coeff * nonbasic.
    std::vector<std::map<SVar, Rational>> rows_;
    std::map<std::string, SVar> form_index_;
    uint64_t assert_counter_ = 0;

    std::vector<UndoBound> trail_;
    std::vector<size_t> frames_;

    // Proposal cursor state from the last minimize.
    bool have_limiting_ = false;
    std::vector<Literal> limiting_sorted_;
    size_t proposal_cursor_ = 0;
};

}  // namespace miniomt::lra
