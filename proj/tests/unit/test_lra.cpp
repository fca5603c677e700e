#include "doctest.h"

#include "lra/simplex.hpp"
#include "omt/driver.hpp"
#include "support/oracles.hpp"

using namespace miniomt;

namespace {

// asserts all literals into a fresh simplex; fails the test on conflict
lra::Simplex assert_all(const AtomTable& atoms, size_t num_vars,
                        const std::vector<Literal>& lits) {
    lra::Simplex sx(atoms, num_vars);
    for (const Literal& l : lits) REQUIRE(!sx.assert_literal(l));
    return sx;
}

bool model_satisfies(const std::vector<Literal>& lits, const ArithModel& m,
                     const AtomTable& atoms) {
    for (const Literal& l : lits)
        if (!eval_literal(l, m, atoms)) return false;
    return true;
}

}  // namespace

TEST_CASE("minimization along the example's assignments") {
    testsupport::WorkedExample ex = testsupport::worked_example();
    const AtomTable& atoms = ex.problem.cnf.atoms;
    LinearTerm cost = ex.problem.objective;  // -2x

    // full assignment: optimum -6 at (3, 0)... any vertex with x = 3 works,
    // the binding rows are (2x-3y<=6) and (y<=-3x+9)
    lra::Simplex sx = assert_all(atoms, 2, ex.mu.literals());
    auto r = sx.minimize(cost);
    REQUIRE(r.status == lra::OptResult::Status::Optimum);
    CHECK(r.value == DeltaRational(rat(-6)));
    CHECK(r.model.at(0) == rat(3));
    CHECK(model_satisfies(ex.mu.literals(), r.model, atoms));

    // without (y <= -3x+9): -8 at (4, 2/3)
    TruthAssignment mu2 = ex.mu;
    mu2.unassign(ex.a_y3x9);
    lra::Simplex sx2 = assert_all(atoms, 2, mu2.literals());
    auto r2 = sx2.minimize(cost);
    REQUIRE(r2.status == lra::OptResult::Status::Optimum);
    CHECK(r2.value == DeltaRational(rat(-8)));
    CHECK(r2.model.at(0) == rat(4));
    CHECK(model_satisfies(mu2.literals(), r2.model, atoms));

    // additionally without (x <= 4): -12 at (6, 2), both remaining rows tight
    TruthAssignment mu3 = mu2;
    mu3.unassign(ex.a_x4);
    lra::Simplex sx3 = assert_all(atoms, 2, mu3.literals());
    auto r3 = sx3.minimize(cost);
    REQUIRE(r3.status == lra::OptResult::Status::Optimum);
    CHECK(r3.value == DeltaRational(rat(-12)));
    CHECK(r3.model.at(0) == rat(6));
    CHECK(r3.model.at(1) == rat(2));
    REQUIRE(r3.limiting.size() == 2);
    CHECK(std::count(r3.limiting.begin(), r3.limiting.end(), Literal{ex.a_2x3y, true}) == 1);
    CHECK(std::count(r3.limiting.begin(), r3.limiting.end(), Literal{ex.a_y2, true}) == 1);
}

TEST_CASE("infeasible conjunctions produce genuine cores") {
    AtomTable atoms;
    LinearTerm x = LinearTerm::variable(0), y = LinearTerm::variable(1);
    AtomId xle0 = atoms.intern_linear(x, RawRel::Le);                       // x <= 0
    AtomId yle0 = atoms.intern_linear(y, RawRel::Le);                       // y <= 0
    AtomId sum1 = atoms.intern_linear(x + y - LinearTerm(rat(1)), RawRel::Lt);  // x+y < 1

    SUBCASE("all three needed") {
        // x <= 0, y <= 0, not(x+y < 1): unsat, and no pair is
        lra::Simplex sx(atoms, 2);
        std::vector<Literal> lits{{xle0, true}, {yle0, true}, {sum1, false}};
        bool conflicted = false;
        std::vector<Literal> core;
        for (const Literal& l : lits) {
            if (auto c = sx.assert_literal(l)) {
                conflicted = true;
                core = c->core;
                break;
            }
        }
        if (!conflicted) {
            auto c = sx.check();
            REQUIRE(c.has_value());
            CHECK(c->complete);
            core = c->core;
        }
        REQUIRE(core.size() == 3);
        for (const Literal& l : lits) CHECK(std::count(core.begin(), core.end(), l) == 1);
    }
    SUBCASE("immediate bound crossing") {
        lra::Simplex sx(atoms, 2);
        AtomId xge1 = atoms.intern_linear(LinearTerm(rat(1)) - x, RawRel::Le);  // x >= 1
        REQUIRE(!sx.assert_literal({xle0, true}));
        auto c = sx.assert_literal({xge1, true});
        REQUIRE(c.has_value());
        REQUIRE(c->core.size() == 2);
    }
    SUBCASE("strict boundary") {
        // x <= 0 and not(x <= 0) would share an atom; use x < 0, x >= 0
        AtomId xlt0 = atoms.intern_linear(x, RawRel::Lt);
        lra::Simplex sx(atoms, 2);
        std::optional<lra::Simplex::Conflict> c = sx.assert_literal({xlt0, true});
        if (!c) c = sx.assert_literal({xle0, false});  // x > 0
        if (!c) c = sx.check();
        REQUIRE(c.has_value());
    }
}

TEST_CASE("degenerate inputs") {
    AtomTable atoms;
    SUBCASE("no constraints, constant objective") {
        lra::Simplex sx(atoms, 1);
        auto r = sx.minimize(LinearTerm(rat(5)));
        REQUIRE(r.status == lra::OptResult::Status::Optimum);
        CHECK(r.value == DeltaRational(rat(5)));
        CHECK(r.limiting.empty());
    }
    SUBCASE("no constraints, linear objective is unbounded") {
        lra::Simplex sx(atoms, 1);
        auto r = sx.minimize(LinearTerm::variable(0));
        CHECK(r.status == lra::OptResult::Status::Unbounded);
    }
    SUBCASE("bounded only in the irrelevant direction") {
        AtomId xle3 = atoms.intern_linear(LinearTerm::variable(0) - LinearTerm(rat(3)),
                                          RawRel::Le);
        lra::Simplex sx(atoms, 1);
        REQUIRE(!sx.assert_literal({xle3, true}));
        auto r = sx.minimize(LinearTerm::variable(0));
        CHECK(r.status == lra::OptResult::Status::Unbounded);
        auto r2 = sx.minimize(-LinearTerm::variable(0));
        REQUIRE(r2.status == lra::OptResult::Status::Optimum);
        CHECK(r2.value == DeltaRational(rat(-3)));
    }
    SUBCASE("strict optimum carries a delta") {
        AtomId xgt1 = atoms.intern_linear(LinearTerm(rat(1)) - LinearTerm::variable(0),
                                          RawRel::Lt);  // x > 1
        lra::Simplex sx(atoms, 1);
        REQUIRE(!sx.assert_literal({xgt1, true}));
        auto r = sx.minimize(LinearTerm::variable(0));
        REQUIRE(r.status == lra::OptResult::Status::Optimum);
        CHECK(r.value.real == rat(1));
        CHECK(r.value.delta > 0);
        CHECK(r.model.at(0) > rat(1));  // concretization respects strictness
    }
    SUBCASE("proposal cursor requires a minimize") {
        lra::Simplex sx(atoms, 1);
        CHECK_THROWS_AS(sx.propose_literal_to_drop(), std::logic_error);
    }
}

TEST_CASE("push/pop restores earlier states exactly") {
    testsupport::WorkedExample ex = testsupport::worked_example();
    const AtomTable& atoms = ex.problem.cnf.atoms;
    LinearTerm cost = ex.problem.objective;

    lra::Simplex sx(atoms, 2);
    REQUIRE(!sx.assert_literal({ex.a_2x3y, true}));
    REQUIRE(!sx.assert_literal({ex.a_y2, true}));
    auto base = sx.minimize(cost);
    REQUIRE(base.status == lra::OptResult::Status::Optimum);
    CHECK(base.value == DeltaRational(rat(-12)));

    sx.push();
    REQUIRE(!sx.assert_literal({ex.a_x4, true}));
    auto tightened = sx.minimize(cost);
    CHECK(tightened.value == DeltaRational(rat(-8)));

    sx.push();
    REQUIRE(!sx.assert_literal({ex.a_y3x9, true}));
    CHECK(sx.depth() == 2);
    CHECK(sx.minimize(cost).value == DeltaRational(rat(-6)));

    sx.pop();
    CHECK(sx.minimize(cost).value == DeltaRational(rat(-8)));
    sx.pop();
    CHECK(sx.minimize(cost).value == DeltaRational(rat(-12)));

    // popped state behaves like a fresh solver on random follow-up asserts
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        testsupport::RandomLp lp = testsupport::random_feasible_lp(seed);
        lra::Simplex incremental(lp.atoms, lp.num_vars);
        size_t half = lp.lits.size() / 2;
        for (size_t i = 0; i < half; ++i) REQUIRE(!incremental.assert_literal(lp.lits[i]));
        incremental.push();
        // scramble with the rest, then retract
        for (size_t i = half; i < lp.lits.size(); ++i)
            (void)incremental.assert_literal(lp.lits[i]);
        (void)incremental.check();
        incremental.pop();

        lra::Simplex fresh(lp.atoms, lp.num_vars);
        for (size_t i = 0; i < half; ++i) REQUIRE(!fresh.assert_literal(lp.lits[i]));
        auto a = incremental.minimize(lp.objective);
        auto b = fresh.minimize(lp.objective);
        REQUIRE(a.status == b.status);
        if (a.status == lra::OptResult::Status::Optimum) CHECK(a.value == b.value);
    }
}

TEST_CASE("random feasible conjunctions match the vertex oracle") {
    for (uint64_t seed = 1; seed <= 100; ++seed) {
        testsupport::RandomLp lp = testsupport::random_feasible_lp(seed);
        lra::Simplex sx(lp.atoms, lp.num_vars);
        bool conflict = false;
        for (const Literal& l : lp.lits)
            if (sx.assert_literal(l)) conflict = true;
        REQUIRE(!conflict);  // generator guarantees feasibility
        REQUIRE(!sx.check());
        auto r = sx.minimize(lp.objective);
        auto oracle = bench::vertex_minimize(lp.lits, lp.objective, lp.atoms, lp.num_vars);
        if (oracle.status == bench::OracleResult::Status::Unbounded) {
            CHECK(r.status == lra::OptResult::Status::Unbounded);
            continue;
        }
        REQUIRE(oracle.status == bench::OracleResult::Status::Optimum);
        REQUIRE(r.status == lra::OptResult::Status::Optimum);
        CHECK(r.value == oracle.value);
        CHECK(model_satisfies(lp.lits, r.model, lp.atoms));
        CHECK(lp.objective.eval(r.delta_model) == r.value);
    }
}

TEST_CASE("limiting literals block further improvement") {
    for (uint64_t seed = 101; seed <= 160; ++seed) {
        testsupport::RandomLp lp = testsupport::random_feasible_lp(seed);
        lra::Simplex sx(lp.atoms, lp.num_vars);
        for (const Literal& l : lp.lits) REQUIRE(!sx.assert_literal(l));
        auto r = sx.minimize(lp.objective);
        if (r.status != lra::OptResult::Status::Optimum) continue;
        // limiting is drawn from the asserted literals
        for (const Literal& l : r.limiting)
            CHECK(std::count(lp.lits.begin(), lp.lits.end(), l) == 1);
        // the limiting set alone already forbids objective < optimum
        Literal tighter = omt::objective_bound_atom(lp.atoms, lp.objective, r.value);
        lra::Simplex only_limiting(lp.atoms, lp.num_vars);
        for (const Literal& l : r.limiting) REQUIRE(!only_limiting.assert_literal(l));
        std::optional<lra::Simplex::Conflict> c = only_limiting.assert_literal(tighter);
        if (!c) c = only_limiting.check();
        CHECK(c.has_value());
        // drop proposals enumerate exactly the limiting set, without repeats
        std::vector<Literal> proposed;
        while (auto l = sx.propose_literal_to_drop()) proposed.push_back(*l);
        CHECK(proposed.size() == r.limiting.size());
        for (const Literal& l : proposed)
            CHECK(std::count(r.limiting.begin(), r.limiting.end(), l) == 1);
    }
}

TEST_CASE("optimum is monotone in the constraint set") {
    for (uint64_t seed = 161; seed <= 200; ++seed) {
        testsupport::RandomLp lp = testsupport::random_feasible_lp(seed);
        if (lp.lits.size() < 2) continue;
        lra::Simplex full(lp.atoms, lp.num_vars);
        for (const Literal& l : lp.lits) REQUIRE(!full.assert_literal(l));
        auto rf = full.minimize(lp.objective);

        lra::Simplex sub(lp.atoms, lp.num_vars);
        for (size_t i = 0; i + 1 < lp.lits.size(); ++i)
            REQUIRE(!sub.assert_literal(lp.lits[i]));
        auto rs = sub.minimize(lp.objective);

        if (rs.status == lra::OptResult::Status::Unbounded) continue;
        REQUIRE(rs.status == lra::OptResult::Status::Optimum);
        REQUIRE(rf.status == lra::OptResult::Status::Optimum);
        CHECK(rs.value <= rf.value);
    }
}
