#include "sat/clause_index.hpp"

#include <algorithm>

namespace miniomt::sat {

ClauseSatIndex::ClauseSatIndex(const CnfFormula& cnf) : cnf_(cnf) {
    occ_.resize(cnf.num_atoms() * 2);
    true_count_.resize(cnf.clauses.size(), 0);
    for (size_t ci = 0; ci < cnf.clauses.size(); ++ci) {
        for (const Literal& l : cnf.clauses[ci].lits) {
            // register each (literal, clause) pair once so a literal repeated
            // inside a clause counts as a single support
            auto& occ = occ_[lit_index(l)];
            if (occ.empty() || occ.back() != ci) occ.push_back(ci);
        }
    }
}

void ClauseSatIndex::load(const TruthAssignment& mu) {
    std::fill(true_count_.begin(), true_count_.end(), 0);
    unsatisfied_ = cnf_.clauses.size();
    for (const auto& [atom, value] : mu.values()) {
        Literal l(atom, value);
        if (lit_index(l) >= occ_.size()) continue;  // atom outside the formula
        for (size_t ci : occ_[lit_index(l)]) {
            if (true_count_[ci]++ == 0) --unsatisfied_;
        }
    }
}

bool ClauseSatIndex::can_drop(Literal l) const {
    if (lit_index(l) >= occ_.size()) return true;
    for (size_t ci : occ_[lit_index(l)])
        if (true_count_[ci] <= 1) return false;
    return true;
}

void ClauseSatIndex::drop(Literal l) {
    if (lit_index(l) >= occ_.size()) return;
    for (size_t ci : occ_[lit_index(l)]) {
        if (--true_count_[ci] == 0) ++unsatisfied_;
    }
}

bool satisfies_all_clauses(const CnfFormula& cnf, const TruthAssignment& mu) {
    for (const Clause& c : cnf.clauses) {
        bool sat = false;
        for (const Literal& l : c.lits) {
            if (mu.contains(l)) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

}  // namespace miniomt::sat
