// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion is self-contained and uses only public module
// interfaces plus the independent test oracles.
#include <algorithm>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "bench/brute_force.hpp"
#include "bench/strip_packing.hpp"
#include "bench/suite.hpp"
#include "lra/simplex.hpp"
#include "omt/driver.hpp"
#include "reduce/reduce.hpp"
#include "sat/clause_index.hpp"
#include "support/oracles.hpp"

using namespace miniomt;

namespace {

struct Check {
    bool ok = true;
    size_t comparisons = 0;
    std::string detail;

    void fail(const std::string& why) {
        if (ok) detail = why;  // keep the first failure reason
        ok = false;
    }
    void expect(bool cond, const std::string& why) {
        ++comparisons;
        if (!cond) fail(why);
    }
};

const reduce::Strategy kStrategies[] = {reduce::Strategy::None, reduce::Strategy::Basic,
                                        reduce::Strategy::Guided};

omt::OmtOutcome solve_with(const Problem& p, reduce::Strategy s, bool lemma = true,
                           std::optional<lia::BnbConfig::Mode> mode = std::nullopt) {
    omt::OmtConfig cfg;
    cfg.strategy = s;
    cfg.learn_block_lemma = lemma;
    cfg.lia_mode = mode;
    return omt::solve(p, cfg);
}

bool same_result(const omt::OmtOutcome& out, const bench::OracleResult& oracle, Check& c,
                 const std::string& tag) {
    using S = omt::OmtOutcome::Status;
    using O = bench::OracleResult::Status;
    switch (oracle.status) {
        case O::Unsat:
            c.expect(out.status == S::Unsat, tag + ": expected unsat");
            return out.status == S::Unsat;
        case O::Unbounded:
            c.expect(out.status == S::Unbounded, tag + ": expected unbounded");
            return out.status == S::Unbounded;
        case O::Optimum:
            c.expect(out.status == S::Optimum, tag + ": expected an optimum");
            if (out.status != S::Optimum) return false;
            c.expect(*out.value == oracle.value,
                     tag + ": value " + to_string(*out.value) + " != oracle " +
                         to_string(oracle.value));
            return *out.value == oracle.value;
    }
    return false;
}

// --- criterion 1: exact reproduction of the worked example -----------------

Check criterion1() {
    Check c;
    testsupport::WorkedExample ex = testsupport::worked_example();
    for (auto s : kStrategies) {
        auto out = solve_with(ex.problem, s);
        c.expect(out.status == omt::OmtOutcome::Status::Optimum, "no optimum");
        if (out.status != omt::OmtOutcome::Status::Optimum) return c;
        c.expect(*out.value == DeltaRational(rat(-12)), "optimum is not -12");
        bool sat = true;
        for (const Clause& cl : ex.problem.cnf.clauses) {
            bool any = false;
            for (const Literal& l : cl.lits) any = any || eval_literal(l, *out.model, ex.problem.cnf.atoms);
            sat = sat && any;
        }
        c.expect(sat, "model violates a constraint");
    }
    // (6, 2) is among the optima
    ArithModel witness{{0, rat(6)}, {1, rat(2)}};
    c.expect(ex.problem.objective.eval(witness) == rat(-12), "witness (6,2) is not optimal");

    // forcing the first assignment to mu: guided reduction's intermediate
    // minimize values are -6, -8, -12 and the reduced assignment is mu''
    auto rep = reduce::reduce_guided(ex.problem.cnf, ex.mu, ex.problem.objective, 2);
    c.expect(rep.minimize_values.size() == 3, "expected three minimize calls");
    if (rep.minimize_values.size() == 3) {
        c.expect(rep.minimize_values[0] == DeltaRational(rat(-6)), "first value != -6");
        c.expect(rep.minimize_values[1] == DeltaRational(rat(-8)), "second value != -8");
        c.expect(rep.minimize_values[2] == DeltaRational(rat(-12)), "third value != -12");
    }
    TruthAssignment mu2;  // mu'' from the worked example
    mu2.assign(ex.a_2x3y, true);
    mu2.assign(ex.a_y2, true);
    mu2.assign(ex.a_xm2, false);
    c.expect(rep.reduced.subset_of(mu2) && mu2.subset_of(rep.reduced),
             "reduced assignment is not mu''");

    auto forced = omt::OmtConfig{};
    forced.strategy = reduce::Strategy::Guided;
    forced.forced_first = ex.mu.literals();
    auto out = omt::solve(ex.problem, forced);
    c.expect(out.status == omt::OmtOutcome::Status::Optimum &&
                 *out.value == DeltaRational(rat(-12)),
             "forced-first run missed the optimum");
    c.expect(!out.trace.iterations.empty() &&
                 out.trace.iterations[0].ub == DeltaRational(rat(-12)),
             "guided reduction did not reach -12 in the first iteration");
    return c;
}

// --- criterion 2: oracle equivalence on random LRA problems ----------------

Check criterion2() {
    Check c;
    for (uint64_t seed = 1; seed <= 200; ++seed) {
        Problem p = testsupport::random_lra_problem(seed);
        bench::OracleResult oracle = bench::brute_force_omt(p);
        for (auto s : kStrategies) {
            for (bool lemma : {true, false}) {
                auto out = solve_with(p, s, lemma);
                if (!same_result(out, oracle, c, p.name)) return c;
            }
        }
    }
    c.expect(c.comparisons >= 1200, "not enough comparisons");
    return c;
}

// --- criterion 3: oracle equivalence on random box-bounded LIRA ------------

Check criterion3() {
    Check c;
    for (uint64_t seed = 1; seed <= 100; ++seed) {
        auto [p, box] = testsupport::random_lira_problem(seed);
        bench::OracleResult oracle = bench::brute_force_omt(p, box);
        for (auto mode : {lia::BnbConfig::Mode::Full, lia::BnbConfig::Mode::Truncated}) {
            for (auto s : {reduce::Strategy::None, reduce::Strategy::Guided}) {
                auto out = solve_with(p, s, true, mode);
                if (!same_result(out, oracle, c, p.name)) return c;
            }
        }
    }
    return c;
}

// --- criterion 4: reduction safety on every satisfying assignment ----------

// relaxation value as a totally ordered surrogate: infeasible = +inf,
// unbounded = -inf
struct RelaxValue {
    int cls;  // -1 unbounded, 0 optimum, 1 infeasible
    DeltaRational v;
    bool operator<=(const RelaxValue& o) const {
        if (cls != o.cls) return cls < o.cls;
        return cls != 0 || v <= o.v;
    }
};

RelaxValue relax_value(const CnfFormula& cnf, const TruthAssignment& eta,
                       const LinearTerm& objective, size_t num_vars) {
    lra::Simplex sx(cnf.atoms, num_vars);
    for (const Literal& l : eta.literals()) {
        if (!cnf.atoms.is_theory(l.atom)) continue;
        if (sx.assert_literal(l)) return {1, {}};
    }
    if (sx.check()) return {1, {}};
    auto r = sx.minimize(objective);
    if (r.status == lra::OptResult::Status::Infeasible) return {1, {}};
    if (r.status == lra::OptResult::Status::Unbounded) return {-1, {}};
    return {0, r.value};
}

Check criterion4() {
    Check c;
    auto check_eta = [&](const Problem& p, const TruthAssignment& eta) {
        RelaxValue base = relax_value(p.cnf, eta, p.objective, p.num_vars());
        std::vector<reduce::ReductionReport> reps;
        reps.push_back(reduce::reduce_basic(p.cnf, eta));
        if (base.cls != 1)  // guided refuses theory-inconsistent assignments
            reps.push_back(reduce::reduce_guided(p.cnf, eta, p.objective, p.num_vars()));
        for (const auto& rep : reps) {
            c.expect(rep.reduced.subset_of(eta), p.name + ": reduced not a subset");
            c.expect(sat::satisfies_all_clauses(p.cnf, rep.reduced),
                     p.name + ": reduced assignment falsifies a clause");
            RelaxValue after = relax_value(p.cnf, rep.reduced, p.objective, p.num_vars());
            c.expect(after <= base, p.name + ": reduction increased the minimum");
        }
    };
    for (uint64_t seed = 1; seed <= 200 && c.ok; ++seed) {
        Problem p = testsupport::random_lra_problem(seed);
        testsupport::for_each_satisfying_assignment(
            p.cnf, [&](const TruthAssignment& eta) { check_eta(p, eta); });
    }
    for (uint64_t seed = 1; seed <= 100 && c.ok; ++seed) {
        auto [p, box] = testsupport::random_lira_problem(seed);
        testsupport::for_each_satisfying_assignment(
            p.cnf, [&](const TruthAssignment& eta) { check_eta(p, eta); });
    }
    return c;
}

// --- criterion 5: simplex vs vertex-enumeration oracle ---------------------

Check criterion5() {
    Check c;
    for (uint64_t seed = 1; seed <= 500 && c.ok; ++seed) {
        testsupport::RandomLp lp = testsupport::random_feasible_lp(seed);
        lra::Simplex sx(lp.atoms, lp.num_vars);
        for (const Literal& l : lp.lits) {
            if (sx.assert_literal(l)) {
                c.fail("generator produced an infeasible conjunction");
                return c;
            }
        }
        if (sx.check()) {
            c.fail("feasible conjunction rejected");
            return c;
        }
        auto r = sx.minimize(lp.objective);
        auto oracle = bench::vertex_minimize(lp.lits, lp.objective, lp.atoms, lp.num_vars);
        if (oracle.status == bench::OracleResult::Status::Unbounded) {
            c.expect(r.status == lra::OptResult::Status::Unbounded, "expected unbounded");
            continue;
        }
        c.expect(r.status == lra::OptResult::Status::Optimum &&
                     oracle.status == bench::OracleResult::Status::Optimum,
                 "status mismatch");
        if (!c.ok) return c;
        c.expect(r.value == oracle.value, "optimum differs from the vertex oracle");

        // the limiting set conjoined with (cost < value) must be infeasible,
        // and so must the full conjunction
        Literal tighter = omt::objective_bound_atom(lp.atoms, lp.objective, r.value);
        for (const std::vector<Literal>* lits : {&r.limiting, &lp.lits}) {
            lra::Simplex probe(lp.atoms, lp.num_vars);
            std::optional<lra::Simplex::Conflict> conflict;
            for (const Literal& l : *lits) {
                conflict = probe.assert_literal(l);
                if (conflict) break;
            }
            if (!conflict) conflict = probe.assert_literal(tighter);
            if (!conflict) conflict = probe.check();
            c.expect(conflict.has_value(), "limiting set fails to block improvement");
        }
    }
    return c;
}

// --- criterion 6: blocking-lemma neutrality ---------------------------------

Check criterion6() {
    Check c;
    std::vector<Problem> problems;
    problems.push_back(testsupport::worked_example().problem);
    for (uint64_t seed = 1; seed <= 200; ++seed)
        problems.push_back(testsupport::random_lra_problem(seed));
    for (const Problem& p : problems) {
        for (auto s : kStrategies) {
            auto with = solve_with(p, s, true);
            auto without = solve_with(p, s, false);
            c.expect(with.status == without.status, p.name + ": status changed");
            if (with.status == omt::OmtOutcome::Status::Optimum)
                c.expect(*with.value == *without.value, p.name + ": optimum changed");
            c.expect(without.trace.lemmas_learned == 0, p.name + ": lemma learned while off");
            if (!c.ok) return c;
        }
    }
    // guard: truncated-mode minimizations never feed the lemma
    for (uint64_t seed = 1; seed <= 100; ++seed) {
        auto [p, box] = testsupport::random_lira_problem(seed);
        auto out = solve_with(p, reduce::Strategy::Guided, true, lia::BnbConfig::Mode::Truncated);
        c.expect(out.trace.lemmas_learned == 0,
                 p.name + ": lemma learned from a truncated minimization");
        if (!c.ok) return c;
    }
    return c;
}

// --- criterion 7: iteration-reduction trend on strip packing ---------------

Check criterion7() {
    Check c;
    std::vector<double> iters_none, iters_guided;
    DeltaRational ub5_none, ub5_guided;  // sums for the mean comparison
    for (size_t n : {6, 7, 8}) {
        for (uint64_t seed = 1; seed <= 10; ++seed) {
            Problem p = bench::build_sp_problem(bench::sample_sp(n, seed, false));
            auto an = solve_with(p, reduce::Strategy::None);
            auto ag = solve_with(p, reduce::Strategy::Guided);
            c.expect(an.status == omt::OmtOutcome::Status::Optimum &&
                         ag.status == omt::OmtOutcome::Status::Optimum,
                     p.name + ": instance did not solve to optimum");
            if (!c.ok) return c;
            c.expect(*an.value == *ag.value, p.name + ": strategies disagree on the optimum");
            iters_none.push_back(double(an.trace.iterations.size()));
            iters_guided.push_back(double(ag.trace.iterations.size()));
            auto ub_at_cap = [](const omt::OmtTrace& t) {
                size_t idx = std::min<size_t>(5, t.iterations.size());
                return t.iterations[idx - 1].ub;
            };
            ub5_none += ub_at_cap(an.trace);
            ub5_guided += ub_at_cap(ag.trace);
        }
    }
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        size_t m = v.size() / 2;
        return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
    };
    double mn = median(iters_none), mg = median(iters_guided);
    c.expect(mg <= mn, "median iterations: guided " + std::to_string(mg) + " > none " +
                           std::to_string(mn));
    // mean comparison over the same 30 instances, exact arithmetic
    c.expect(ub5_guided <= ub5_none, "mean ub at iteration cap 5: guided worse than none");
    c.detail = "median iterations none=" + std::to_string(mn) +
               " guided=" + std::to_string(mg);
    return c;
}

// --- criterion 8: determinism ----------------------------------------------

std::string trace_fingerprint(const omt::OmtTrace& t) {
    std::ostringstream os;
    os << t.theory_conflicts << "|" << t.lemmas_learned << "\n";
    for (const auto& it : t.iterations)
        os << it.index << "," << to_string(it.ub) << "," << it.literals_dropped << ","
           << it.minimize_calls << "\n";
    return os.str();
}

Check criterion8() {
    Check c;
    std::vector<Problem> problems;
    problems.push_back(testsupport::worked_example().problem);
    problems.push_back(bench::build_sp_problem(bench::sample_sp(6, 2, false)));
    problems.push_back(bench::build_sp_problem(bench::sample_sp(3, 4, true)));
    for (uint64_t seed = 1; seed <= 10; ++seed)
        problems.push_back(testsupport::random_lra_problem(seed));
    for (const Problem& p : problems) {
        for (auto s : kStrategies) {
            omt::OmtConfig cfg;
            cfg.strategy = s;
            cfg.seed = 7;
            auto a = omt::solve(p, cfg);
            auto b = omt::solve(p, cfg);
            c.expect(a.status == b.status, p.name + ": status differs between runs");
            c.expect(trace_fingerprint(a.trace) == trace_fingerprint(b.trace),
                     p.name + ": traces differ between runs");
            c.expect(bench::trace_to_csv(a.trace, false) == bench::trace_to_csv(b.trace, false),
                     p.name + ": csv differs between runs");
            if (!c.ok) return c;
        }
    }
    return c;
}

}  // namespace

int main() {
    struct Entry {
        int num;
        const char* label;
        std::function<Check()> run;
    };
    const Entry entries[] = {
        {1, "worked example reproduced exactly", criterion1},
        {2, "solver matches the brute-force oracle on 200 random LRA problems", criterion2},
        {3, "full and truncated mixed search match the grid oracle on 100 problems", criterion3},
        {4, "reductions are subsets, satisfying, and never raise the minimum", criterion4},
        {5, "simplex matches the vertex oracle on 500 LPs and limiting sets block", criterion5},
        {6, "blocking lemmas never change the optimum and respect truncation", criterion6},
        {7, "guided reduction lowers iterations/bounds on strip packing", criterion7},
        {8, "identical runs produce identical traces and CSVs", criterion8},
    };
    int failures = 0;
    for (const Entry& e : entries) {
        Check c;
        try {
            c = e.run();
        } catch (const std::exception& ex) {
            c.fail(std::string("exception: ") + ex.what());
        }
        if (c.ok) {
            std::printf("PASS criterion %d: %s (%zu checks%s%s)\n", e.num, e.label,
                        c.comparisons, c.detail.empty() ? "" : "; ", c.detail.c_str());
        } else {
            ++failures;
            std::printf("FAIL criterion %d: %s -- %s\n", e.num, e.label, c.detail.c_str());
        }
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
