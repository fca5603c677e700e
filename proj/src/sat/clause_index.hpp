#pragma once

#include <vector>

#include "core/atoms.hpp"

namespace miniomt::sat {

// Occurrence index over the original (non-learned) clauses with per-clause
// true-literal counters, giving O(occurrences(l)) answers to "does mu \ {l}
// still satisfy all clauses" across single-literal drops.
class ClauseSatIndex {
public:
    explicit ClauseSatIndex(const CnfFormula& cnf);

    // Resets counters to the given assignment.
    void load(const TruthAssignment& mu);

    bool all_satisfied() const { return unsatisfied_ == 0; }

    // True iff every clause containing l (with matching polarity) would keep
    // at least one true literal after dropping l from the current assignment.
    bool can_drop(Literal l) const;

    // Removes l from the tracked assignment, updating counters.
    void drop(Literal l);

private:
    const CnfFormula& cnf_;
    std::vector<std::vector<size_t>> occ_;  // Lit index (2*atom+pos) -> clause ids
    std::vector<int> true_count_;
    size_t unsatisfied_ = 0;

    static size_t lit_index(Literal l) { return size_t(l.atom) * 2 + (l.positive ? 1 : 0); }
};

// One-shot check: does mu (possibly partial) satisfy every clause of cnf?
bool satisfies_all_clauses(const CnfFormula& cnf, const TruthAssignment& mu);

}  // namespace miniomt::sat
