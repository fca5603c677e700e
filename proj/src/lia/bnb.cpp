#include "lia/bnb.hpp"

#include <algorithm>
#include <memory>
#include <queue>
#include <stdexcept>

namespace miniomt::lia {

namespace {

struct Cut {
    VarId var;
    bool is_lower;
    Rational val;
};

// floor of a delta-rational: v = r + k*delta with infinitesimal delta > 0.
Rational floor_delta(const DeltaRational& v) {
    if (is_integer(v.real)) return v.delta < 0 ? v.real - 1 : v.real;
    return Rational(rat_floor(v.real));
}

bool is_integer_value(const DeltaRational& v) { return v.delta == 0 && is_integer(v.real); }

struct Node {
    std::vector<Cut> cuts;
    OptResult relax;  // Optimum
    uint64_t id = 0;  // creation order, deterministic tie-break
};

struct NodeOrder {
    // Max-heap adapter: "worse" = larger bound, later id.
    bool operator()(const std::shared_ptr<Node>& a, const std::shared_ptr<Node>& b) const {
        if (a->relax.value != b->relax.value) return b->relax.value < a->relax.value;
        return a->id > b->id;
    }
};

OptResult solve_relaxation(const AtomTable& atoms, size_t num_vars,
                           const std::vector<Literal>& mu, const std::vector<Cut>& cuts,
                           const LinearTerm& objective) {
    lra::Simplex spx(atoms, num_vars);
    for (Literal l : mu) {
        if (auto conf = spx.assert_literal(l)) {
            OptResult res;
            res.status = OptResult::Status::Infeasible;
            res.core = std::move(conf->core);
            return res;
        }
    }
    for (const Cut& c : cuts) {
        if (auto conf = spx.assert_cut(c.var, c.is_lower, DeltaRational(c.val))) {
            OptResult res;
            res.status = OptResult::Status::Infeasible;
            res.core = std::move(conf->core);  // incomplete: involves a cut
            return res;
        }
    }
    return spx.minimize(objective);
}

// Most-fractional integer variable of the node's relaxation model, or none
// if the model is integer-feasible.
std::optional<VarId> pick_branch_var(const DeltaModel& model, const std::vector<bool>& is_integer) {
    std::optional<VarId> best;
    Rational best_score = -1;
    for (const auto& [v, val] : model) {
        if (v >= is_integer.size() || !is_integer[v]) continue;
        if (is_integer_value(val)) continue;
        Rational frac = val.real - floor_delta(val);
        Rational score = std::min(frac, Rational(1 - frac));
        if (score > best_score) {
            best_score = score;
            best = v;
        }
    }
    return best;
}

}  // namespace

OptResult minimize_relaxation(const AtomTable& atoms, size_t num_vars,
                              const std::vector<Literal>& mu, const LinearTerm& objective) {
    return solve_relaxation(atoms, num_vars, mu, {}, objective);
}

OptResult minimize_mixed(const AtomTable& atoms, size_t num_vars,
                         const std::vector<bool>& is_integer, const std::vector<Literal>& mu,
                         const LinearTerm& objective, const BnbConfig& cfg) {
    if (cfg.node_limit == 0) throw std::invalid_argument("node_limit must be positive");
    size_t solves = 0;
    uint64_t next_id = 0;
    std::priority_queue<std::shared_ptr<Node>, std::vector<std::shared_ptr<Node>>, NodeOrder> open;

    auto root = std::make_shared<Node>();
    root->relax = solve_relaxation(atoms, num_vars, mu, {}, objective);
    ++solves;
    root->id = next_id++;
    if (root->relax.status == OptResult::Status::Unbounded) {
        // Unbounded relaxation proves nothing until an integer point exists;
        // a feasibility search (constant objective) settles it.
        OptResult feas = minimize_mixed(atoms, num_vars, is_integer, mu, LinearTerm(), cfg);
        if (feas.status == OptResult::Status::Optimum) return root->relax;
        return feas;  // infeasible (or resource-out)
    }
    if (root->relax.status != OptResult::Status::Optimum) return root->relax;
    open.push(root);

    std::optional<OptResult> incumbent;
    bool out_of_nodes = false;

    while (!open.empty()) {
        auto node = open.top();
        open.pop();
        if (incumbent && !(node->relax.value < incumbent->value)) continue;
        auto branch_var = pick_branch_var(node->relax.delta_model, is_integer);
        if (!branch_var) {
            // Best-bound selection: the first integer-feasible node popped is
            // globally optimal in full mode.
            OptResult res = node->relax;
            res.truncated = (cfg.mode == BnbConfig::Mode::Truncated);
            return res;
        }
        Rational fl = floor_delta(node->relax.delta_model.at(*branch_var));
        for (int side = 0; side < 2; ++side) {
            if (solves >= cfg.node_limit) {
                out_of_nodes = true;
                break;
            }
            auto child = std::make_shared<Node>();
            child->cuts = node->cuts;
            if (side == 0)
                child->cuts.push_back({*branch_var, false, fl});
            else
                child->cuts.push_back({*branch_var, true, fl + 1});
            child->relax = solve_relaxation(atoms, num_vars, mu, child->cuts, objective);
            ++solves;
            child->id = next_id++;
            if (child->relax.status == OptResult::Status::Infeasible) continue;
            if (child->relax.status == OptResult::Status::Unbounded) return child->relax;
            if (incumbent && !(child->relax.value < incumbent->value)) continue;
            if (cfg.mode == BnbConfig::Mode::Truncated &&
                !pick_branch_var(child->relax.delta_model, is_integer)) {
                OptResult res = child->relax;
                res.truncated = true;
                return res;
            }
            if (!pick_branch_var(child->relax.delta_model, is_integer)) {
                // Integer-feasible: record as incumbent; the queue may still
                // hold nodes with a better bound.
                if (!incumbent || child->relax.value < incumbent->value)
                    incumbent = child->relax;
                continue;
            }
            open.push(child);
        }
        if (out_of_nodes) break;
    }

    if (incumbent) {
        OptResult res = *incumbent;
        res.resource_out = out_of_nodes;
        res.truncated = out_of_nodes;  // optimality not proven if we stopped early
        return res;
    }
    OptResult res;
    res.status = OptResult::Status::Infeasible;
    res.resource_out = out_of_nodes;
    if (!out_of_nodes) {
        // Every branch closed infeasible; the root core (mu alone) may be
        // unavailable, so report the conjunction itself as the core.
        res.core = mu;
    }
    return res;
}

}  // namespace miniomt::lia
