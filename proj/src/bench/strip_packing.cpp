#include "bench/strip_packing.hpp"

#include <sstream>
#include <stdexcept>

namespace miniomt::bench {

namespace {

// sqrt(n) rounded to 3 decimal digits, exact: round(sqrt(n * 10^6)) / 1000.
Rational sqrt_3dec(size_t n) {
    Integer m = Integer(n) * 1000000;
    Integer s = sqrt(m);  // floor
    if ((s + 1) * (s + 1) - m <= m - s * s) s += 1;
    return Rational(s) / 1000;
}

}  // namespace

SpInstance sample_sp(size_t n, uint64_t seed, bool lira) {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    SpInstance inst;
    inst.n = n;
    inst.seed = seed;
    inst.lira = lira;
    inst.strip_height = sqrt_3dec(n) / 2;
    SplitMix64 rng(seed);
    auto step = [&]() -> Rational { return Rational(rng.next() % 1000 + 1) / 1000; };  // in (0,1]
    for (size_t i = 0; i < n; ++i) {
        Rational h = step();
        while (h > inst.strip_height) h = step();  // reject heights taller than the strip
        inst.heights.push_back(h);
        inst.widths.push_back(1 + step());
    }
    if (lira)
        for (size_t i = 0; i < n; ++i) inst.integer_coords.push_back(rng.next() % 2 == 0);
    return inst;
}

Problem build_sp_problem(const SpInstance& inst) {
    const size_t n = inst.n;
    Problem p;
    std::ostringstream name;
    name << "sp_n" << n << "_s" << inst.seed << "_" << (inst.lira ? "lira" : "lra");
    p.name = name.str();

    // Variable layout: x_i = i, y_i = n+i, L = 2n.
    auto xv = [&](size_t i) { return VarId(i); };
    auto yv = [&](size_t i) { return VarId(n + i); };
    const VarId L = VarId(2 * n);
    for (size_t i = 0; i < n; ++i) {
        p.var_names.push_back("x" + std::to_string(i + 1));
        p.var_types.push_back(inst.lira && inst.integer_coords[i] ? VarType::Integer
                                                                  : VarType::Rational);
    }
    for (size_t i = 0; i < n; ++i) {
        p.var_names.push_back("y" + std::to_string(i + 1));
        p.var_types.push_back(inst.lira && inst.integer_coords[i] ? VarType::Integer
                                                                  : VarType::Rational);
    }
    p.var_names.push_back("L");
    p.var_types.push_back(VarType::Rational);

    auto unit = [&](LinearTerm t) {
        Clause c;
        c.lits.push_back(Literal{p.cnf.atoms.intern_linear(std::move(t), RawRel::Le), true});
        p.cnf.clauses.push_back(c);
    };
    // fits_before(a, wa, b): a + wa <= b
    auto fits = [&](VarId a, const Rational& wa, VarId b) {
        LinearTerm t = LinearTerm::variable(a);
        t.add_constant(wa);
        t -= LinearTerm::variable(b);
        return Literal{p.cnf.atoms.intern_linear(std::move(t), RawRel::Le), true};
    };

    for (size_t i = 0; i < n; ++i) {
        unit(-LinearTerm::variable(xv(i)));  // x_i >= 0
        unit(-LinearTerm::variable(yv(i)));  // y_i >= 0
        LinearTerm top = LinearTerm::variable(yv(i));
        top.add_constant(inst.heights[i] - inst.strip_height);
        unit(std::move(top));  // y_i + H_i <= H
        LinearTerm right = LinearTerm::variable(xv(i));
        right.add_constant(inst.widths[i]);
        right -= LinearTerm::variable(L);
        unit(std::move(right));  // x_i + W_i <= L
    }
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            Clause c;
            c.lits.push_back(fits(xv(i), inst.widths[i], xv(j)));
            c.lits.push_back(fits(xv(j), inst.widths[j], xv(i)));
            c.lits.push_back(fits(yv(i), inst.heights[i], yv(j)));
            c.lits.push_back(fits(yv(j), inst.heights[j], yv(i)));
            p.cnf.clauses.push_back(std::move(c));
        }
    }
    p.objective = LinearTerm::variable(L);

    // Self-check: rectangles side by side two units apart (W_i <= 2) on the
    // strip floor is always a model.
    ArithModel m;
    for (size_t i = 0; i < n; ++i) {
        m[xv(i)] = Rational(2 * i);
        m[yv(i)] = 0;
    }
    m[L] = Rational(2 * n);
    for (const Clause& c : p.cnf.clauses) {
        bool ok = false;
        for (Literal l : c.lits) ok = ok || eval_literal(l, m, p.cnf.atoms);
        if (!ok) throw std::logic_error("generated instance rejects its witness placement");
    }
    return p;
}

std::string sp_problem_text(const SpInstance& inst) {
    Problem p = build_sp_problem(inst);
    std::ostringstream os;
    os << "; strip packing: n=" << inst.n << " seed=" << inst.seed
       << " encoding=" << (inst.lira ? "lira" : "lra")
       << " H=" << rat_to_string(inst.strip_height) << "\n";
    os << print_problem(p);
    return os.str();
}

}  // namespace miniomt::bench
