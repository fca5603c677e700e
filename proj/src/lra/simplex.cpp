#include "lra/simplex.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace miniomt::lra {

namespace {

std::string form_key(const LinearTerm& t) {
    std::ostringstream os;
    for (const auto& [v, c] : t.coeffs()) os << v << ":" << rat_to_string(c) << ",";
    return os.str();
}

}  // namespace

Simplex::Simplex(const AtomTable& atoms, size_t num_problem_vars)
    : atoms_(atoms), num_problem_vars_(num_problem_vars) {
    values_.resize(num_problem_vars);
    lower_.resize(num_problem_vars);
    upper_.resize(num_problem_vars);
    basic_.resize(num_problem_vars, false);
    rows_.resize(num_problem_vars);
}

Simplex::SVar Simplex::intern_form(const LinearTerm& var_part) {
    std::string key = form_key(var_part);
    auto it = form_index_.find(key);
    if (it != form_index_.end()) return it->second;
    SVar s = SVar(values_.size());
    // Row over nonbasic variables: substitute any currently-basic variable
    // by its row.
    std::map<SVar, Rational> row;
    auto add = [&](SVar v, const Rational& c) {
        auto [jt, inserted] = row.try_emplace(v, c);
        if (!inserted) {
            jt->second += c;
            if (jt->second == 0) row.erase(jt);
        }
    };
    DeltaRational val;
    for (const auto& [v, c] : var_part.coeffs()) {
        if (basic_[v]) {
            for (const auto& [k, ck] : rows_[v]) add(SVar(k), c * ck);
        } else {
            add(SVar(v), c);
        }
        val += values_[v] * c;
    }
    values_.push_back(val);
    lower_.emplace_back();
    upper_.emplace_back();
    basic_.push_back(true);
    rows_.push_back(std::move(row));
    form_index_.emplace(std::move(key), s);
    return s;
}

std::optional<Simplex::Conflict> Simplex::assert_literal(Literal l) {
    const Atom& a = atoms_.atom(l.atom);
    if (!a.is_theory) throw std::invalid_argument("assert_literal: boolean literal");
    if (a.rel == Rel::Eq)
        throw std::invalid_argument("assert_literal: equality atoms are split before the theory");
    // Atom is (p + c rel 0), i.e. p rel -c. The four polarity/relation cases
    // become a single bound on p:
    //   (p <= -c)        upper  (-c, 0)
    //   (p < -c)         upper  (-c, -delta)
    //   not(p <= -c)     lower  (-c, +delta)
    //   not(p < -c)      lower  (-c, 0)
    Rational rhs = -a.term.constant();
    bool is_lower;
    DeltaRational val;
    if (l.positive) {
        is_lower = false;
        val = DeltaRational(rhs, a.rel == Rel::Lt ? Rational(-1) : Rational(0));
    } else {
        is_lower = true;
        val = DeltaRational(rhs, a.rel == Rel::Le ? Rational(1) : Rational(0));
    }
    LinearTerm var_part = a.term;
    var_part.add_constant(-a.term.constant());
    SVar s;
    if (var_part.coeffs().size() == 1) {
        auto [v, k] = *var_part.coeffs().begin();
        s = SVar(v);
        val = val * (1 / k);
        if (k < 0) is_lower = !is_lower;
    } else {
        s = intern_form(var_part);
    }
    return assert_bound(s, is_lower, std::move(val), l);
}

std::optional<Simplex::Conflict> Simplex::assert_cut(VarId v, bool is_lower,
                                                     const DeltaRational& val) {
    return assert_bound(SVar(v), is_lower, val, std::nullopt);
}

std::optional<Simplex::Conflict> Simplex::assert_bound(SVar s, bool is_lower, DeltaRational val,
                                                       std::optional<Literal> lit) {
    auto& same = is_lower ? lower_ : upper_;
    auto& opposite = is_lower ? upper_ : lower_;
    if (opposite[s] && (is_lower ? val > opposite[s]->val : val < opposite[s]->val)) {
        Conflict c;
        if (lit) c.core.push_back(*lit);
        if (opposite[s]->lit)
            c.core.push_back(*opposite[s]->lit);
        else
            c.complete = false;
        if (!lit) c.complete = false;
        return c;
    }
    bool tighter = !same[s] || (is_lower ? val > same[s]->val : val < same[s]->val);
    if (!tighter) return std::nullopt;
    trail_.push_back(UndoBound{s, is_lower, same[s]});
    same[s] = Bound{val, lit, ++assert_counter_};
    if (!basic_[s]) {
        if ((is_lower && values_[s] < val) || (!is_lower && values_[s] > val))
            update_nonbasic(s, val);
    }
    return std::nullopt;
}

void Simplex::update_nonbasic(SVar s, const DeltaRational& v) {
    DeltaRational diff = v - values_[s];
    for (SVar b = 0; b < values_.size(); ++b) {
        if (!basic_[b]) continue;
        auto it = rows_[b].find(s);
        if (it != rows_[b].end()) values_[b] += diff * it->second;
    }
    values_[s] = v;
}

void Simplex::pivot(SVar b, SVar j) {
    auto row = std::move(rows_[b]);
    rows_[b].clear();
    Rational a = row.at(j);
    row.erase(j);
    // j = (b - sum_{k != j} c_k k) / a
    std::map<SVar, Rational> rowj;
    Rational inv = 1 / a;
    rowj[b] = inv;
    for (const auto& [k, c] : row) rowj[k] = -c * inv;
    basic_[b] = false;
    basic_[j] = true;
    // Substitute j in every other row.
    for (SVar m = 0; m < values_.size(); ++m) {
        if (!basic_[m] || m == j) continue;
        auto it = rows_[m].find(j);
        if (it == rows_[m].end()) continue;
        Rational cm = it->second;
        rows_[m].erase(it);
        for (const auto& [k, c] : rowj) {
            auto [jt, inserted] = rows_[m].try_emplace(k, cm * c);
            if (!inserted) {
                jt->second += cm * c;
                if (jt->second == 0) rows_[m].erase(jt);
            }
        }
    }
    rows_[j] = std::move(rowj);
}

Simplex::Conflict Simplex::row_conflict(SVar b, bool need_increase) const {
    // Basic variable b is stuck outside one of its bounds: every nonbasic in
    // its row is itself at the blocking bound. The core is those bounds'
    // literals plus b's violated bound.
    Conflict conf;
    auto push = [&](const std::optional<Bound>& bd) {
        if (bd && bd->lit)
            conf.core.push_back(*bd->lit);
        else
            conf.complete = false;
    };
    push(need_increase ? lower_[b] : upper_[b]);
    for (const auto& [j, c] : rows_[b]) {
        bool coeff_pos = c > 0;
        // To increase b we need to move j in the direction given by the sign
        // of c; the blocking bound is on that side.
        if (need_increase)
            push(coeff_pos ? upper_[j] : lower_[j]);
        else
            push(coeff_pos ? lower_[j] : upper_[j]);
    }
    std::sort(conf.core.begin(), conf.core.end(), [](Literal a, Literal b2) {
        return a.atom != b2.atom ? a.atom < b2.atom : a.positive < b2.positive;
    });
    conf.core.erase(std::unique(conf.core.begin(), conf.core.end()), conf.core.end());
    return conf;
}

std::optional<Simplex::Conflict> Simplex::check() {
    for (;;) {
        // Bland: smallest violating basic variable.
        SVar b = UINT32_MAX;
        bool need_increase = false;
        for (SVar s = 0; s < values_.size(); ++s) {
            if (!basic_[s]) continue;
            if (lower_[s] && values_[s] < lower_[s]->val) {
                b = s;
                need_increase = true;
                break;
            }
            if (upper_[s] && values_[s] > upper_[s]->val) {
                b = s;
                need_increase = false;
                break;
            }
        }
        if (b == UINT32_MAX) return std::nullopt;
        const DeltaRational target = need_increase ? lower_[b]->val : upper_[b]->val;
        // Bland: smallest suitable nonbasic in the row.
        SVar j = UINT32_MAX;
        for (const auto& [k, c] : rows_[b]) {
            bool want_k_up = (c > 0) == need_increase;
            bool can = want_k_up ? (!upper_[k] || values_[k] < upper_[k]->val)
                                 : (!lower_[k] || values_[k] > lower_[k]->val);
            if (can) {
                j = k;
                break;
            }
        }
        if (j == UINT32_MAX) return row_conflict(b, need_increase);
        // pivot-and-update: move b to its bound, adjusting j and the other
        // basic variables through the tableau.
        Rational a = rows_[b].at(j);
        DeltaRational theta = (target - values_[b]) * (1 / a);
        values_[b] = target;
        values_[j] += theta;
        for (SVar m = 0; m < values_.size(); ++m) {
            if (!basic_[m] || m == b) continue;
            auto it = rows_[m].find(j);
            if (it != rows_[m].end()) values_[m] += theta * it->second;
        }
        pivot(b, j);
    }
}

Rational Simplex::concretization_eps() const {
    // Largest eps such that substituting delta := eps keeps every variable
    // within its bounds. All comparisons are non-strict after substitution;
    // strictness is already captured by the delta components.
    Rational eps = 1;
    auto tighten = [&](const DeltaRational& slackness) {
        if (slackness.real > 0 && slackness.delta < 0) {
            Rational cand = slackness.real / -slackness.delta;
            if (cand < eps) eps = cand;
        }
    };
    for (SVar s = 0; s < values_.size(); ++s) {
        if (lower_[s]) tighten(values_[s] - lower_[s]->val);
        if (upper_[s]) tighten(upper_[s]->val - values_[s]);
    }
    return eps;
}

OptResult Simplex::minimize(const LinearTerm& objective) {
    OptResult res;
    if (auto conf = check()) {
        res.status = OptResult::Status::Infeasible;
        res.core = std::move(conf->core);
        return res;
    }
    // Cost row over nonbasic variables.
    std::map<SVar, Rational> cost;
    auto cost_add = [&](SVar v, const Rational& c) {
        auto [it, inserted] = cost.try_emplace(v, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) cost.erase(it);
        }
    };
    for (const auto& [v, c] : objective.coeffs()) {
        if (v >= num_problem_vars_) throw std::invalid_argument("objective variable out of range");
        if (basic_[v]) {
            for (const auto& [k, ck] : rows_[v]) cost_add(k, c * ck);
        } else {
            cost_add(SVar(v), c);
        }
    }
    const size_t pivot_limit = 2 * values_.size() + 16;
    size_t pivots = 0;
    for (;;) {
        // Entering variable: nonzero reduced cost, movable in the improving
        // direction. Steepest first, Bland after the pivot limit.
        SVar j = UINT32_MAX;
        Rational best_mag;
        for (const auto& [k, d] : cost) {
            bool decrease = d > 0;
            bool movable = decrease ? (!lower_[k] || values_[k] > lower_[k]->val)
                                    : (!upper_[k] || values_[k] < upper_[k]->val);
            if (!movable) continue;
            if (pivots >= pivot_limit) {  // Bland: smallest index
                j = k;
                break;
            }
            Rational mag = d > 0 ? d : -d;
            if (j == UINT32_MAX || mag > best_mag) {
                j = k;
                best_mag = mag;
            }
        }
        if (j == UINT32_MAX) break;  // optimum
        Rational dir = cost.at(j) > 0 ? Rational(-1) : Rational(1);
        // Ratio test: j's own opposite bound and every basic row.
        bool limited = false;
        bool own_limit = false;
        SVar limit_basic = UINT32_MAX;
        DeltaRational theta;
        auto consider = [&](const DeltaRational& cand, bool own, SVar basic_var) {
            if (!limited || cand < theta) {
                limited = true;
                theta = cand;
                own_limit = own;
                limit_basic = basic_var;
            }
        };
        if (dir > 0 && upper_[j]) consider(upper_[j]->val - values_[j], true, UINT32_MAX);
        if (dir < 0 && lower_[j]) consider(values_[j] - lower_[j]->val, true, UINT32_MAX);
        for (SVar m = 0; m < values_.size(); ++m) {
            if (!basic_[m]) continue;
            auto it = rows_[m].find(j);
            if (it == rows_[m].end()) continue;
            Rational rate = it->second * dir;  // d(value_m)/d(theta)
            if (rate > 0 && upper_[m])
                consider((upper_[m]->val - values_[m]) * (1 / rate), false, m);
            else if (rate < 0 && lower_[m])
                consider((values_[m] - lower_[m]->val) * (1 / -rate), false, m);
        }
        if (!limited) {
            res.status = OptResult::Status::Unbounded;
            return res;
        }
        update_nonbasic(j, values_[j] + theta * dir);
        if (!own_limit) {
            pivot(limit_basic, j);
            ++pivots;
            // Substitute j (now basic) in the cost row.
            auto it = cost.find(j);
            if (it != cost.end()) {
                Rational cj = it->second;
                cost.erase(it);
                for (const auto& [k, c] : rows_[j]) cost_add(k, cj * c);
            }
        }
    }
    res.status = OptResult::Status::Optimum;
    DeltaRational value(objective.constant());
    for (const auto& [k, d] : cost) value += values_[k] * d;
    res.value = value;
    for (VarId v = 0; v < num_problem_vars_; ++v) res.delta_model[v] = values_[v];
    Rational eps = concretization_eps();
    for (const auto& [v, d] : res.delta_model) res.model[v] = d.real + d.delta * eps;
    // Limiting literals: active bounds of nonbasic variables with nonzero
    // reduced cost, ordered by |reduced cost| descending, assertion order on
    // ties.
    struct Entry {
        Literal lit;
        Rational mag;
        uint64_t order;
    };
    std::vector<Entry> entries;
    for (const auto& [k, d] : cost) {
        const auto& bd = d > 0 ? lower_[k] : upper_[k];
        if (!bd || !bd->lit) continue;
        entries.push_back({*bd->lit, d > 0 ? d : -d, bd->order});
    }
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.mag != b.mag) return a.mag > b.mag;
        return a.order < b.order;
    });
    res.limiting.clear();
    for (const Entry& e : entries) {
        if (std::find(res.limiting.begin(), res.limiting.end(), e.lit) == res.limiting.end())
            res.limiting.push_back(e.lit);
    }
    limiting_sorted_ = res.limiting;
    have_limiting_ = true;
    proposal_cursor_ = 0;
    return res;
}

std::optional<Literal> Simplex::propose_literal_to_drop() {
    if (!have_limiting_) throw std::logic_error("propose_literal_to_drop before minimize");
    if (proposal_cursor_ >= limiting_sorted_.size()) return std::nullopt;
    return limiting_sorted_[proposal_cursor_++];
}

void Simplex::push() { frames_.push_back(trail_.size()); }

void Simplex::pop(size_t n) {
    if (n > frames_.size()) throw std::logic_error("pop past the bottom of the assertion stack");
    while (n-- > 0) {
        size_t mark = frames_.back();
        frames_.pop_back();
        while (trail_.size() > mark) {
            UndoBound u = std::move(trail_.back());
            trail_.pop_back();
            (u.is_lower ? lower_ : upper_)[u.var] = std::move(u.old);
        }
    }
}

}  // namespace miniomt::lra
