#include "reduce/reduce.hpp"

#include <stdexcept>

#include "sat/clause_index.hpp"

namespace miniomt::reduce {

namespace {

// Atoms in the order they first appear in the formula's clauses.
std::vector<AtomId> appearance_order(const CnfFormula& phi) {
    std::vector<AtomId> order;
    std::vector<bool> seen(phi.atoms.size(), false);
    for (const Clause& c : phi.clauses) {
        for (Literal l : c.lits) {
            if (!seen[l.atom]) {
                seen[l.atom] = true;
                order.push_back(l.atom);
            }
        }
    }
    return order;
}

void check_total_satisfying(const CnfFormula& phi, const TruthAssignment& eta) {
    for (const Clause& c : phi.clauses)
        for (Literal l : c.lits)
            if (!eta.value(l.atom))
                throw std::invalid_argument("assignment does not cover the formula");
    if (!sat::satisfies_all_clauses(phi, eta))
        throw std::invalid_argument("assignment does not satisfy the formula");
}

}  // namespace

ReductionReport reduce_basic(const CnfFormula& phi, const TruthAssignment& eta, bool theory_only) {
    check_total_satisfying(phi, eta);
    ReductionReport rep;
    rep.reduced = eta;
    sat::ClauseSatIndex index(phi);
    index.load(eta);
    for (AtomId a : appearance_order(phi)) {
        if (theory_only && !phi.atoms.atom(a).is_theory) continue;
        auto v = rep.reduced.value(a);
        if (!v) continue;
        Literal l{a, *v};
        if (index.can_drop(l)) {
            index.drop(l);
            rep.reduced.unassign(a);
            rep.dropped.push_back(l);
        }
    }
    return rep;
}

ReductionReport reduce_guided(const CnfFormula& phi, const TruthAssignment& eta,
                              const LinearTerm& objective, size_t num_vars) {
    check_total_satisfying(phi, eta);
    ReductionReport rep;
    rep.reduced = eta;
    sat::ClauseSatIndex index(phi);
    index.load(eta);
    const std::vector<AtomId> order = appearance_order(phi);
    for (;;) {
        // Fresh assertion of the current (possibly reduced) conjunction; the
        // proposal cursor lives in the minimizing solver.
        lra::Simplex spx(phi.atoms, num_vars);
        for (AtomId a : order) {
            if (!phi.atoms.atom(a).is_theory) continue;
            auto v = rep.reduced.value(a);
            if (!v) continue;
            if (spx.assert_literal(Literal{a, *v}))
                throw std::runtime_error("theory-inconsistent assignment");
        }
        lra::OptResult res = spx.minimize(objective);
        ++rep.minimize_calls;
        if (res.status == lra::OptResult::Status::Infeasible)
            throw std::runtime_error("theory-inconsistent assignment");
        if (res.status == lra::OptResult::Status::Unbounded) {
            // Nothing limits the minimum; no proposals to make.
            rep.final_limiting.clear();
            break;
        }
        rep.minimize_values.push_back(res.value);
        bool dropped_one = false;
        while (auto l = spx.propose_literal_to_drop()) {
            if (!index.can_drop(*l)) continue;
            index.drop(*l);
            rep.reduced.unassign(l->atom);
            rep.dropped.push_back(*l);
            dropped_one = true;  // one drop per minimize call
            break;
        }
        if (!dropped_one) {
            rep.final_limiting = res.limiting;
            break;
        }
    }
    return rep;
}

}  // namespace miniomt::reduce
