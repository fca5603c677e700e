#include "sat/solver.hpp"

#include <algorithm>
#include <cassert>

namespace miniomt::sat {

namespace {

using Var = uint32_t;

// Internal literal: 2*var + (negated ? 1 : 0).
struct Lit {
    uint32_t x = 0;
    Lit() = default;
    Lit(Var v, bool pos) : x(2 * v + (pos ? 0 : 1)) {}
    Var var() const { return x >> 1; }
    bool pos() const { return (x & 1) == 0; }
    Lit operator~() const {
        Lit l;
        l.x = x ^ 1;
        return l;
    }
    bool operator==(const Lit& o) const = default;
};

enum class LBool : uint8_t { True, False, Undef };

LBool lbool_of(bool b) { return b ? LBool::True : LBool::False; }

struct ClauseData {
    bool learned;
    std::vector<Lit> lits;
};

// splitmix64, used only to perturb initial activities per seed.
uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Luby sequence for restart intervals.
uint64_t luby(uint64_t i) {
    uint64_t k = 1;
    while ((1ULL << k) - 1 < i + 1) ++k;
    while ((1ULL << k) - 1 != i + 1) {
        --k;
        i -= (1ULL << k) - 1;
    }
    return 1ULL << (k - 1);
}

}  // namespace

struct Solver::Impl {
    std::vector<std::unique_ptr<ClauseData>> clauses;
    size_t num_original = 0;
    std::vector<std::vector<ClauseData*>> watches;  // indexed by Lit.x
    std::vector<LBool> assigns;
    std::vector<bool> phase;
    std::vector<int> level;
    std::vector<ClauseData*> reason;
    std::vector<Lit> trail;
    std::vector<size_t> trail_lim;
    size_t qhead = 0;
    std::vector<double> activity;
    double var_inc = 1.0;
    static constexpr double kVarDecay = 0.95;
    bool ok = true;
    uint64_t seed;
    // Heap of unassigned variables ordered by activity (index heap).
    std::vector<Var> heap;
    std::vector<int> heap_pos;  // -1 if absent
    std::vector<bool> seen;     // conflict analysis scratch

    explicit Impl(uint64_t s) : seed(s) {}

    int decision_level() const { return int(trail_lim.size()); }

    void ensure_var(Var v) {
        while (assigns.size() <= v) {
            Var nv = Var(assigns.size());
            assigns.push_back(LBool::Undef);
            phase.push_back(false);
            level.push_back(0);
            reason.push_back(nullptr);
            uint64_t st = seed + nv * 0x9e3779b97f4a7c15ULL;
            activity.push_back(double(splitmix64(st) % 1024) * 1e-9);
            watches.emplace_back();
            watches.emplace_back();
            heap_pos.push_back(-1);
            seen.push_back(false);
            heap_insert(nv);
        }
    }

    // --- activity heap ---------------------------------------------------
    bool heap_less(Var a, Var b) const {
        if (activity[a] != activity[b]) return activity[a] > activity[b];
        return a < b;  // deterministic tie-break
    }
    void heap_swap(int i, int j) {
        std::swap(heap[i], heap[j]);
        heap_pos[heap[i]] = i;
        heap_pos[heap[j]] = j;
    }
    void heap_up(int i) {
        while (i > 0) {
            int p = (i - 1) / 2;
            if (!heap_less(heap[i], heap[p])) break;
            heap_swap(i, p);
            i = p;
        }
    }
    void heap_down(int i) {
        int n = int(heap.size());
        for (;;) {
            int l = 2 * i + 1, r = 2 * i + 2, best = i;
            if (l < n && heap_less(heap[l], heap[best])) best = l;
            if (r < n && heap_less(heap[r], heap[best])) best = r;
            if (best == i) break;
            heap_swap(i, best);
            i = best;
        }
    }
    void heap_insert(Var v) {
        if (heap_pos[v] >= 0) return;
        heap_pos[v] = int(heap.size());
        heap.push_back(v);
        heap_up(heap_pos[v]);
    }
    Var heap_pop() {
        Var v = heap[0];
        heap_swap(0, int(heap.size()) - 1);
        heap.pop_back();
        heap_pos[v] = -1;
        if (!heap.empty()) heap_down(0);
        return v;
    }

    void bump(Var v) {
        activity[v] += var_inc;
        if (activity[v] > 1e100) {
            for (double& a : activity) a *= 1e-100;
            var_inc *= 1e-100;
        }
        if (heap_pos[v] >= 0) heap_up(heap_pos[v]);
    }
    void decay() { var_inc /= kVarDecay; }

    // --- assignment ------------------------------------------------------
    LBool value(Lit l) const {
        LBool v = assigns[l.var()];
        if (v == LBool::Undef) return v;
        return (v == LBool::True) == l.pos() ? LBool::True : LBool::False;
    }

    void unchecked_enqueue(Lit l, ClauseData* from) {
        assigns[l.var()] = lbool_of(l.pos());
        level[l.var()] = decision_level();
        reason[l.var()] = from;
        trail.push_back(l);
    }

    ClauseData* propagate() {
        while (qhead < trail.size()) {
            Lit p = trail[qhead++];
            // Clauses watching ~p must find a new watch or propagate.
            std::vector<ClauseData*>& ws = watches[(~p).x];
            size_t i = 0, j = 0;
            ClauseData* conflict = nullptr;
            for (; i < ws.size(); ++i) {
                ClauseData* c = ws[i];
                auto& lits = c->lits;
                // Make sure the false literal is lits[1].
                if (lits[0] == ~p) std::swap(lits[0], lits[1]);
                if (value(lits[0]) == LBool::True) {
                    ws[j++] = c;
                    continue;
                }
                bool found = false;
                for (size_t k = 2; k < lits.size(); ++k) {
                    if (value(lits[k]) != LBool::False) {
                        std::swap(lits[1], lits[k]);
                        watches[lits[1].x].push_back(c);
                        found = true;
                        break;
                    }
                }
                if (found) continue;
                ws[j++] = c;
                if (value(lits[0]) == LBool::False) {
                    conflict = c;
                    ++i;
                    break;
                }
                unchecked_enqueue(lits[0], c);
            }
            while (i < ws.size()) ws[j++] = ws[i++];
            ws.resize(j);
            if (conflict) return conflict;
        }
        return nullptr;
    }

    void cancel_until(int lvl) {
        if (decision_level() <= lvl) return;
        for (size_t i = trail.size(); i > trail_lim[lvl];) {
            --i;
            Var v = trail[i].var();
            phase[v] = trail[i].pos();
            assigns[v] = LBool::Undef;
            reason[v] = nullptr;
            heap_insert(v);
        }
        trail.resize(trail_lim[lvl]);
        trail_lim.resize(lvl);
        qhead = trail.size();
    }

    // 1UIP conflict analysis. Returns the learned clause (asserting literal
    // first) and the backtrack level.
    std::pair<std::vector<Lit>, int> analyze(ClauseData* conflict) {
        std::vector<Lit> learnt{Lit()};  // placeholder for the asserting literal
        int counter = 0;
        Lit p;
        bool have_p = false;
        size_t index = trail.size();
        ClauseData* c = conflict;
        for (;;) {
            for (Lit q : c->lits) {
                if (have_p && q == p) continue;
                Var v = q.var();
                if (!seen[v] && level[v] > 0) {
                    seen[v] = true;
                    bump(v);
                    if (level[v] >= decision_level())
                        ++counter;
                    else
                        learnt.push_back(q);
                }
            }
            // Next literal on the trail that is marked.
            do {
                --index;
            } while (!seen[trail[index].var()]);
            p = trail[index];
            have_p = true;
            seen[p.var()] = false;
            --counter;
            if (counter == 0) break;
            c = reason[p.var()];
            assert(c != nullptr);
        }
        learnt[0] = ~p;
        int bt_level = 0;
        if (learnt.size() > 1) {
            size_t max_i = 1;
            for (size_t i = 2; i < learnt.size(); ++i)
                if (level[learnt[i].var()] > level[learnt[max_i].var()]) max_i = i;
            std::swap(learnt[1], learnt[max_i]);
            bt_level = level[learnt[1].var()];
        }
        for (Lit l : learnt) seen[l.var()] = false;
        return {std::move(learnt), bt_level};
    }

    ClauseData* attach_clause(std::vector<Lit> lits, bool learned) {
        auto c = std::make_unique<ClauseData>(ClauseData{learned, std::move(lits)});
        ClauseData* ptr = c.get();
        watches[ptr->lits[0].x].push_back(ptr);
        watches[ptr->lits[1].x].push_back(ptr);
        clauses.push_back(std::move(c));
        return ptr;
    }

    // Conflict clause over assumptions: collects the assumption literals that
    // imply ~p, MiniSat's analyzeFinal.
    std::vector<Lit> analyze_final(Lit p) {
        std::vector<Lit> out{p};
        if (decision_level() == 0) return out;
        seen[p.var()] = true;
        for (size_t i = trail.size(); i > trail_lim[0];) {
            --i;
            Var v = trail[i].var();
            if (!seen[v]) continue;
            if (reason[v] == nullptr) {
                out.push_back(trail[i]);
            } else {
                for (Lit l : reason[v]->lits)
                    if (level[l.var()] > 0) seen[l.var()] = true;
            }
            seen[v] = false;
        }
        seen[p.var()] = false;
        return out;
    }
};

Solver::Solver(uint64_t seed) : impl_(std::make_unique<Impl>(seed)) {}
Solver::~Solver() = default;
Solver::Solver(Solver&&) noexcept = default;
Solver& Solver::operator=(Solver&&) noexcept = default;

void Solver::add_clause(const Clause& c) {
    Impl& s = *impl_;
    if (!s.ok) return;
    // Map to internal literals, dedupe, drop tautologies, drop root-false
    // literals, and detect already-satisfied clauses at root level.
    std::vector<Lit> lits;
    for (const Literal& l : c.lits) {
        s.ensure_var(l.atom);
        lits.emplace_back(l.atom, l.positive);
    }
    std::sort(lits.begin(), lits.end(), [](Lit a, Lit b) { return a.x < b.x; });
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (size_t i = 0; i + 1 < lits.size(); ++i)
        if (lits[i].var() == lits[i + 1].var()) return;  // tautology
    // This solver only adds clauses at root level.
    s.cancel_until(0);
    std::vector<Lit> kept;
    for (Lit l : lits) {
        LBool v = s.value(l);
        if (v == LBool::True && s.level[l.var()] == 0) return;  // satisfied
        if (v == LBool::False && s.level[l.var()] == 0) continue;
        kept.push_back(l);
    }
    s.num_original++;
    if (kept.empty()) {
        s.ok = false;
        return;
    }
    if (kept.size() == 1) {
        s.unchecked_enqueue(kept[0], nullptr);
        if (s.propagate() != nullptr) s.ok = false;
        return;
    }
    s.attach_clause(std::move(kept), false);
}

Solver::Result Solver::solve(const std::vector<Literal>& assumptions) {
    Impl& s = *impl_;
    Result res;
    if (!s.ok) return res;  // unsat, empty core
    for (const Literal& l : assumptions) s.ensure_var(l.atom);
    s.cancel_until(0);
    if (s.propagate() != nullptr) {
        s.ok = false;
        return res;
    }

    std::vector<Lit> assume;
    for (const Literal& l : assumptions) assume.emplace_back(l.atom, l.positive);
    auto external = [](Lit l) { return Literal(l.var(), l.pos()); };

    uint64_t restarts = 0;
    uint64_t conflicts_left = 32 * luby(restarts);
    for (;;) {
        ClauseData* conflict = s.propagate();
        if (conflict != nullptr) {
            if (s.decision_level() == 0) {
                s.ok = false;
                return res;
            }
            auto [learnt, bt] = s.analyze(conflict);
            // Backjumping may land inside the assumption levels; assumptions
            // are simply re-decided on the way back down.
            s.cancel_until(bt);
            if (learnt.size() == 1) {
                s.unchecked_enqueue(learnt[0], nullptr);
            } else {
                ClauseData* cd = s.attach_clause(std::move(learnt), true);
                s.unchecked_enqueue(cd->lits[0], cd);
            }
            s.decay();
            if (conflicts_left > 0) --conflicts_left;
            continue;
        }
        if (conflicts_left == 0 && s.decision_level() > int(assume.size())) {
            // Luby restart; keep the assumption levels.
            ++restarts;
            conflicts_left = 32 * luby(restarts);
            s.cancel_until(int(assume.size()));
            continue;
        }
        // Assumption decisions first.
        if (s.decision_level() < int(assume.size())) {
            Lit a = assume[s.decision_level()];
            LBool v = s.value(a);
            if (v == LBool::True) {
                // Already implied; open an empty decision level to keep the
                // level/assumption correspondence.
                s.trail_lim.push_back(s.trail.size());
                continue;
            }
            if (v == LBool::False) {
                auto core = s.analyze_final(a);
                s.cancel_until(0);
                for (Lit l : core) res.core.push_back(external(l));
                return res;
            }
            s.trail_lim.push_back(s.trail.size());
            s.unchecked_enqueue(a, nullptr);
            continue;
        }
        // Pick a branching variable.
        Var next = UINT32_MAX;
        while (!s.heap.empty()) {
            Var v = s.heap_pop();
            if (s.assigns[v] == LBool::Undef) {
                next = v;
                break;
            }
        }
        if (next == UINT32_MAX) {
            // Total assignment found.
            res.sat = true;
            for (Var v = 0; v < s.assigns.size(); ++v)
                res.model.assign(AtomId(v), s.assigns[v] == LBool::True);
            s.cancel_until(0);
            return res;
        }
        s.trail_lim.push_back(s.trail.size());
        s.unchecked_enqueue(Lit(next, s.phase[next]), nullptr);
    }
}

size_t Solver::num_vars() const { return impl_->assigns.size(); }
size_t Solver::num_clauses() const { return impl_->num_original; }

}  // namespace miniomt::sat
