#include "bench/brute_force.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace miniomt::bench {

namespace {

// Halfspace a.x <= rhs in delta-rational arithmetic.
struct Row {
    std::map<VarId, Rational> a;
    DeltaRational rhs;
    bool synthetic = false;  // bounding-box row, not part of the input
};

void add_literal_rows(std::vector<Row>& rows, Literal l, const AtomTable& atoms) {
    const Atom& at = atoms.atom(l.atom);
    if (!at.is_theory) return;
    Rational c = at.term.constant();
    auto coeffs = [&](bool negate) {
        std::map<VarId, Rational> a;
        for (const auto& [v, q] : at.term.coeffs()) a[v] = negate ? Rational(-q) : q;
        return a;
    };
    switch (at.rel) {
        case Rel::Le:
            if (l.positive)
                rows.push_back({coeffs(false), DeltaRational(-c), false});
            else  // -t < 0
                rows.push_back({coeffs(true), DeltaRational(c, -1), false});
            break;
        case Rel::Lt:
            if (l.positive)
                rows.push_back({coeffs(false), DeltaRational(-c, -1), false});
            else  // -t <= 0
                rows.push_back({coeffs(true), DeltaRational(c), false});
            break;
        case Rel::Eq:
            if (!l.positive) throw std::invalid_argument("negated equality is not a conjunction");
            rows.push_back({coeffs(false), DeltaRational(-c), false});
            rows.push_back({coeffs(true), DeltaRational(c), false});
            break;
    }
}

// Minimum of obj over the conjunction of rows intersected with the box
// |v| <= big for every variable; nullopt when that intersection is empty.
// Every vertex of the boxed region is the intersection of some |vars|-subset
// of hyperplanes, so enumerating the subsets finds the exact minimum.
std::optional<DeltaRational> boxed_vertex_min(std::vector<Row> rows, const LinearTerm& obj,
                                              const std::vector<VarId>& vars, long big) {
    const size_t n = vars.size();
    std::map<VarId, size_t> col;
    for (size_t i = 0; i < n; ++i) col[vars[i]] = i;
    for (VarId v : vars) {
        Row up, down;
        up.a[v] = 1;
        up.rhs = DeltaRational(big);
        up.synthetic = true;
        down.a[v] = -1;
        down.rhs = DeltaRational(big);
        down.synthetic = true;
        rows.push_back(up);
        rows.push_back(down);
    }
    const size_t m = rows.size();

    std::optional<DeltaRational> best;
    // Enumerate all n-subsets of the m rows.
    std::vector<size_t> idx(n);
    for (size_t i = 0; i < n; ++i) idx[i] = i;
    bool more = m >= n;
    while (more) {
        // Solve the n x n system (rows idx) over (real, delta) right-hand sides.
        std::vector<std::vector<Rational>> mat(n, std::vector<Rational>(n + 2, Rational(0)));
        for (size_t r = 0; r < n; ++r) {
            for (const auto& [v, q] : rows[idx[r]].a) mat[r][col.at(v)] = q;
            mat[r][n] = rows[idx[r]].rhs.real;
            mat[r][n + 1] = rows[idx[r]].rhs.delta;
        }
        bool singular = false;
        for (size_t c = 0; c < n && !singular; ++c) {
            size_t piv = c;
            while (piv < n && mat[piv][c] == 0) ++piv;
            if (piv == n) {
                singular = true;
                break;
            }
            std::swap(mat[c], mat[piv]);
            for (size_t r = 0; r < n; ++r) {
                if (r == c || mat[r][c] == 0) continue;
                Rational f = mat[r][c] / mat[c][c];
                for (size_t k = c; k < n + 2; ++k) mat[r][k] -= f * mat[c][k];
            }
        }
        if (!singular) {
            std::map<VarId, DeltaRational> point;
            for (size_t c = 0; c < n; ++c)
                point[vars[c]] = DeltaRational(Rational(mat[c][n] / mat[c][c]),
                                               Rational(mat[c][n + 1] / mat[c][c]));
            bool feasible = true;
            for (const Row& r : rows) {
                DeltaRational lhs;
                for (const auto& [v, q] : r.a) lhs += point.at(v) * q;
                if (lhs > r.rhs) {
                    feasible = false;
                    break;
                }
            }
            if (feasible) {
                DeltaRational val(obj.constant());
                for (const auto& [v, q] : obj.coeffs()) {
                    auto it = point.find(v);
                    if (it != point.end()) val += it->second * q;
                }
                if (!best || val < *best) best = val;
            }
        }
        // Next combination.
        size_t i = n;
        while (i > 0) {
            --i;
            if (idx[i] != i + m - n) {
                ++idx[i];
                for (size_t k = i + 1; k < n; ++k) idx[k] = idx[k - 1] + 1;
                break;
            }
            if (i == 0) more = false;
        }
    }

    return best;
}

// Two-box unboundedness test: coefficients and constants of the inputs are
// small rationals, so any nonempty region reaches into the first box and any
// bounded optimum is attained at a vertex far inside it. The optimum is
// genuine iff enlarging the box does not improve it; this stays correct when
// the optimal face is an unbounded edge that only meets box vertices.
const long BIG_M = 1000000007;

OracleResult vertex_min_rows(std::vector<Row> rows, const LinearTerm& obj,
                             const std::vector<VarId>& vars) {
    if (vars.empty()) {
        // Pure constant problem: feasible iff every row has 0 <= rhs.
        for (const Row& r : rows)
            if (r.rhs < DeltaRational(0)) return {OracleResult::Status::Unsat, {}};
        return {OracleResult::Status::Optimum, DeltaRational(obj.constant())};
    }
    auto near = boxed_vertex_min(rows, obj, vars, BIG_M);
    if (!near) return {OracleResult::Status::Unsat, {}};
    auto far = boxed_vertex_min(std::move(rows), obj, vars, 4 * BIG_M);
    if (*far < *near) return {OracleResult::Status::Unbounded, {}};
    return {OracleResult::Status::Optimum, *near};
}

void add_box_rows(std::vector<Row>& rows, const Box& box, const std::vector<VarId>& vars) {
    for (VarId v : vars) {
        auto it = box.find(v);
        if (it == box.end()) continue;
        Row up, down;
        up.a[v] = 1;
        up.rhs = DeltaRational(it->second.second);
        down.a[v] = -1;
        down.rhs = DeltaRational(-it->second.first);
        rows.push_back(up);
        rows.push_back(down);
    }
}

}  // namespace

OracleResult vertex_minimize(const std::vector<Literal>& lits, const LinearTerm& objective,
                             const AtomTable& atoms, size_t num_vars,
                             const std::optional<Box>& box) {
    std::vector<Row> rows;
    for (Literal l : lits) add_literal_rows(rows, l, atoms);
    std::vector<VarId> vars;
    for (VarId v = 0; v < num_vars; ++v) vars.push_back(v);
    if (box) add_box_rows(rows, *box, vars);
    return vertex_min_rows(std::move(rows), objective, vars);
}

OracleResult grid_minimize(const std::vector<Literal>& lits, const LinearTerm& objective,
                           const AtomTable& atoms, size_t num_vars,
                           const std::vector<VarType>& var_types, const Box& box,
                           size_t max_grid) {
    std::vector<VarId> int_vars, rat_vars;
    for (VarId v = 0; v < num_vars; ++v)
        (var_types[v] == VarType::Integer ? int_vars : rat_vars).push_back(v);

    // Integer ranges from the box.
    std::vector<Integer> lo(int_vars.size()), hi(int_vars.size());
    size_t grid = 1;
    for (size_t i = 0; i < int_vars.size(); ++i) {
        auto it = box.find(int_vars[i]);
        if (it == box.end()) throw std::invalid_argument("box does not cover an integer variable");
        lo[i] = rat_ceil(it->second.first);
        hi[i] = rat_floor(it->second.second);
        if (hi[i] < lo[i]) return {OracleResult::Status::Unsat, {}};
        Integer width = hi[i] - lo[i] + 1;
        if (width > (long)max_grid) throw std::length_error("integer grid too large for the oracle");
        grid *= width.get_ui();
        if (grid > max_grid) throw std::length_error("integer grid too large for the oracle");
    }

    std::vector<Row> base;
    for (Literal l : lits) add_literal_rows(base, l, atoms);
    add_box_rows(base, box, rat_vars);

    std::optional<DeltaRational> best;
    std::vector<Integer> point(int_vars.size());
    for (size_t i = 0; i < int_vars.size(); ++i) point[i] = lo[i];
    bool more = true;
    while (more) {
        // Substitute the integer point into every row and the objective.
        std::vector<Row> rows;
        bool feasible = true;
        for (const Row& r : base) {
            Row red;
            red.rhs = r.rhs;
            red.synthetic = r.synthetic;
            for (const auto& [v, q] : r.a) {
                auto it = std::find(int_vars.begin(), int_vars.end(), v);
                if (it != int_vars.end())
                    red.rhs -= DeltaRational(Rational(point[it - int_vars.begin()]) * q);
                else
                    red.a[v] = q;
            }
            if (red.a.empty()) {
                if (red.rhs < DeltaRational(0)) {
                    feasible = false;
                    break;
                }
            } else {
                rows.push_back(std::move(red));
            }
        }
        if (feasible) {
            LinearTerm obj;
            obj.add_constant(objective.constant());
            for (const auto& [v, q] : objective.coeffs()) {
                auto it = std::find(int_vars.begin(), int_vars.end(), v);
                if (it != int_vars.end())
                    obj.add_constant(Rational(point[it - int_vars.begin()]) * q);
                else
                    obj.add_var(v, q);
            }
            OracleResult sub = vertex_min_rows(std::move(rows), obj, rat_vars);
            if (sub.status == OracleResult::Status::Unbounded) return sub;
            if (sub.status == OracleResult::Status::Optimum)
                if (!best || sub.value < *best) best = sub.value;
        }
        // Next grid point.
        size_t i = 0;
        for (;; ++i) {
            if (i == point.size()) {
                more = false;
                break;
            }
            if (point[i] < hi[i]) {
                point[i] += 1;
                break;
            }
            point[i] = lo[i];
        }
    }
    if (!best) return {OracleResult::Status::Unsat, {}};
    return {OracleResult::Status::Optimum, *best};
}

OracleResult brute_force_omt(const Problem& p, const std::optional<Box>& box) {
    // Atoms actually constrained by the skeleton.
    std::vector<AtomId> atoms;
    {
        std::vector<bool> seen(p.cnf.atoms.size(), false);
        for (const Clause& c : p.cnf.clauses)
            for (Literal l : c.lits)
                if (!seen[l.atom]) {
                    seen[l.atom] = true;
                    atoms.push_back(l.atom);
                }
    }
    if (atoms.size() > 24) throw std::length_error("formula too large for the oracle");
    if (p.has_integer_vars() && !box)
        throw std::invalid_argument("integer problems need a box for the grid oracle");

    std::optional<DeltaRational> best;
    bool any_unbounded = false;
    TruthAssignment mu;

    // Depth-first enumeration of total assignments with clause pruning.
    auto satisfiable_so_far = [&]() {
        for (const Clause& c : p.cnf.clauses) {
            bool sat = false, undecided = false;
            for (Literal l : c.lits) {
                auto v = mu.value(l.atom);
                if (!v)
                    undecided = true;
                else if (*v == l.positive)
                    sat = true;
            }
            if (!sat && !undecided) return false;
        }
        return true;
    };
    auto minimize_current = [&]() {
        std::vector<Literal> lits;
        for (const auto& [a, v] : mu.values())
            if (p.cnf.atoms.atom(a).is_theory) lits.push_back(Literal{a, v});
        OracleResult r = p.has_integer_vars()
                             ? grid_minimize(lits, p.objective, p.cnf.atoms, p.num_vars(),
                                             p.var_types, *box)
                             : vertex_minimize(lits, p.objective, p.cnf.atoms, p.num_vars(), box);
        if (r.status == OracleResult::Status::Unbounded) any_unbounded = true;
        if (r.status == OracleResult::Status::Optimum)
            if (!best || r.value < *best) best = r.value;
    };
    std::function<void(size_t)> rec = [&](size_t i) {
        if (any_unbounded) return;
        if (!satisfiable_so_far()) return;
        if (i == atoms.size()) {
            minimize_current();
            return;
        }
        for (bool v : {true, false}) {
            mu.assign(atoms[i], v);
            rec(i + 1);
            mu.unassign(atoms[i]);
        }
    };
    rec(0);

    if (any_unbounded) return {OracleResult::Status::Unbounded, {}};
    if (!best) return {OracleResult::Status::Unsat, {}};
    return {OracleResult::Status::Optimum, *best};
}

}  // namespace miniomt::bench
