#include "omt/driver.hpp"

#include <chrono>
#include <stdexcept>

#include "sat/solver.hpp"

namespace miniomt::omt {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Clause negation_clause(const std::vector<Literal>& lits) {
    Clause c;
    c.lits.reserve(lits.size());
    for (Literal l : lits) c.lits.push_back(l.complement());
    return c;
}

}  // namespace

Literal objective_bound_atom(AtomTable& atoms, const LinearTerm& cost, const DeltaRational& ub) {
    LinearTerm t = cost;
    t.add_constant(-ub.real);
    AtomId a = atoms.intern_linear(std::move(t), ub.delta > 0 ? RawRel::Le : RawRel::Lt);
    return Literal{a, true};
}

OmtOutcome solve(const Problem& problem, const OmtConfig& cfg) {
    const auto start = Clock::now();
    // Bound atoms are interned on the fly, so work on a private copy of the
    // formula's atom table.
    CnfFormula cnf = problem.cnf;
    const LinearTerm& cost = problem.objective;
    const size_t num_vars = problem.num_vars();

    std::vector<bool> is_integer(num_vars, false);
    bool mixed = false;
    for (size_t v = 0; v < num_vars; ++v) {
        is_integer[v] = problem.var_types[v] == VarType::Integer;
        mixed = mixed || is_integer[v];
    }
    lia::BnbConfig bnb;
    bnb.mode = cfg.lia_mode.value_or(mixed ? lia::BnbConfig::Mode::Truncated
                                           : lia::BnbConfig::Mode::Full);
    bnb.node_limit = cfg.lia_node_limit;

    // Atoms of the input formula itself; SAT models are restricted to these
    // before reduction (bound atoms and lemma atoms come and go per query).
    std::vector<bool> formula_atom(cnf.atoms.size(), false);
    for (const Clause& c : cnf.clauses)
        for (Literal l : c.lits) formula_atom[l.atom] = true;

    sat::Solver sat(cfg.seed);
    for (const Clause& c : cnf.clauses) sat.add_clause(c);

    OmtOutcome out;
    std::vector<Literal> bound_lits;  // accumulating (cost < ub) assumptions
    bool first_query = true;

    auto finish = [&](OmtOutcome::Status st) {
        out.status = st;
        out.trace.total_time_s = seconds_since(start);
        return out;
    };

    for (;;) {
        if (seconds_since(start) > cfg.time_budget_s)
            return finish(OmtOutcome::Status::BudgetExhausted);

        std::vector<Literal> assumptions = bound_lits;
        if (first_query)
            assumptions.insert(assumptions.end(), cfg.forced_first.begin(),
                               cfg.forced_first.end());
        first_query = false;
        sat::Solver::Result r = sat.solve(assumptions);
        if (!r.sat) {
            // No assignment beats the current bound: the last model is the
            // optimum, or the formula was unsatisfiable to begin with.
            return finish(out.model ? OmtOutcome::Status::Optimum : OmtOutcome::Status::Unsat);
        }

        // eta: the SAT model restricted to the input formula's atoms.
        TruthAssignment eta;
        for (const auto& [a, v] : r.model.values())
            if (a < formula_atom.size() && formula_atom[a]) eta.assign(a, v);

        // Theory-consistency of eta together with the cost bounds (LRA
        // relaxation; integrality is handled by the minimizer below). A
        // conflict core is learned and the answer does not count as an
        // iteration.
        {
            lra::Simplex spx(cnf.atoms, num_vars);
            std::optional<lra::Simplex::Conflict> conf;
            for (const auto& [a, v] : eta.values()) {
                if (!cnf.atoms.atom(a).is_theory) continue;
                if ((conf = spx.assert_literal(Literal{a, v}))) break;
            }
            if (!conf)
                for (Literal l : bound_lits)
                    if ((conf = spx.assert_literal(l))) break;
            if (!conf)
                if (auto c2 = spx.check()) conf = c2;
            if (conf) {
                sat.add_clause(negation_clause(conf->core));
                ++out.trace.theory_conflicts;
                continue;
            }
        }

        // Reduce eta to a partial assignment that still satisfies every
        // clause.
        reduce::ReductionReport rep;
        switch (cfg.strategy) {
            case reduce::Strategy::None:
                rep.reduced = eta;
                break;
            case reduce::Strategy::Basic:
                rep = reduce::reduce_basic(cnf, eta);
                break;
            case reduce::Strategy::Guided:
                rep = reduce::reduce_guided(cnf, eta, cost, num_vars);
                break;
        }

        // Full theory minimization over the reduced conjunction plus the
        // cost bounds.
        std::vector<Literal> mu_theory;
        for (const auto& [a, v] : rep.reduced.values())
            if (cnf.atoms.atom(a).is_theory) mu_theory.push_back(Literal{a, v});
        std::vector<Literal> minimized = mu_theory;
        minimized.insert(minimized.end(), bound_lits.begin(), bound_lits.end());

        lra::OptResult res =
            mixed ? lia::minimize_mixed(cnf.atoms, num_vars, is_integer, minimized, cost, bnb)
                  : lia::minimize_relaxation(cnf.atoms, num_vars, minimized, cost);

        if (res.status == lra::OptResult::Status::Unbounded)
            return finish(OmtOutcome::Status::Unbounded);
        if (res.status == lra::OptResult::Status::Infeasible) {
            if (res.resource_out) return finish(OmtOutcome::Status::BudgetExhausted);
            // Integer-infeasible conjunction (the LRA relaxation was checked
            // above): learn its negation and re-enumerate.
            sat.add_clause(negation_clause(res.core));
            ++out.trace.theory_conflicts;
            continue;
        }

        out.model = res.model;
        out.value = res.value;

        IterationRecord rec;
        rec.index = out.trace.iterations.size() + 1;
        rec.ub = res.value;
        rec.literals_dropped = rep.dropped.size();
        rec.minimize_calls = rep.minimize_calls + 1;
        rec.time_s = seconds_since(start);
        out.trace.iterations.push_back(rec);

        Literal bound = objective_bound_atom(cnf.atoms, cost, res.value);
        if (cfg.learn_block_lemma && !res.truncated) {
            // (not (cost < ub)) or some asserted literal must flip. For pure
            // LRA the limiting literals suffice; for mixed problems the
            // relaxation's dual certificate does not account for branch
            // cuts, so the lemma falls back to all of mu's theory literals.
            const std::vector<Literal>& blockers = mixed ? mu_theory : res.limiting;
            if (!blockers.empty()) {
                Clause lemma = negation_clause(blockers);
                lemma.lits.insert(lemma.lits.begin(), bound.complement());
                sat.add_clause(lemma);
                ++out.trace.lemmas_learned;
            }
        }
        bound_lits.push_back(bound);

        if (res.resource_out) return finish(OmtOutcome::Status::BudgetExhausted);
    }
}

}  // namespace miniomt::omt
