#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "core/linear_term.hpp"

namespace miniomt {

using AtomId = uint32_t;

enum class Rel { Le, Lt, Eq };

// Interned atom. Linear atoms are kept normalized as (term rel 0) with
// integer coprime coefficients; boolean atoms carry only a name.
struct Atom {
    bool is_theory = false;
    LinearTerm term;  // meaningful only when is_theory
    Rel rel = Rel::Le;
    std::string name;  // boolean atoms and debugging

    bool operator==(const Atom& o) const {
        if (is_theory != o.is_theory) return false;
        if (!is_theory) return name == o.name;
        return rel == o.rel && term == o.term;
    }
};

struct Literal {
    AtomId atom = 0;
    bool positive = true;

    Literal() = default;
    Literal(AtomId a, bool pos) : atom(a), positive(pos) {}
    Literal complement() const { return {atom, !positive}; }
    bool operator==(const Literal& o) const = default;
};

struct LiteralHash {
    size_t operator()(const Literal& l) const {
        return (size_t(l.atom) << 1) | size_t(l.positive);
    }
};

struct Clause {
    std::vector<Literal> lits;
};

// Raw relation over a term, before normalization.
enum class RawRel { Le, Lt, Ge, Gt, Eq };

class AtomTable {
public:
    // Interns the normalized form of (term raw_rel 0). Syntactically equal
    // inputs map to the same id; >= and > are rewritten by negating the term.
    AtomId intern_linear(LinearTerm term, RawRel raw_rel);
    AtomId intern_boolean(const std::string& name);

    const Atom& atom(AtomId id) const { return atoms_[id]; }
    size_t size() const { return atoms_.size(); }
    bool is_theory(AtomId id) const { return atoms_[id].is_theory; }

private:
    AtomId add(Atom a, const std::string& key);

    std::vector<Atom> atoms_;
    std::unordered_map<std::string, AtomId> index_;
};

// Normalization applied by intern_linear, exposed for tests: constant on the
// left, coefficients scaled to coprime integers, equalities with positive
// leading coefficient.
Atom normalize_atom(LinearTerm term, RawRel raw_rel);

struct CnfFormula {
    std::vector<Clause> clauses;
    AtomTable atoms;

    size_t num_atoms() const { return atoms.size(); }
};

// Partial mapping atom -> bool, the object the reduction algorithms
// manipulate. Kept sorted by atom id for deterministic iteration.
class TruthAssignment {
public:
    void assign(AtomId a, bool v) { values_[a] = v; }
    void assign(Literal l) { values_[l.atom] = l.positive; }
    void unassign(AtomId a) { values_.erase(a); }

    std::optional<bool> value(AtomId a) const {
        auto it = values_.find(a);
        if (it == values_.end()) return std::nullopt;
        return it->second;
    }
    bool contains(Literal l) const {
        auto v = value(l.atom);
        return v && *v == l.positive;
    }
    bool subset_of(const TruthAssignment& other) const {
        for (const auto& [a, v] : values_) {
            auto w = other.value(a);
            if (!w || *w != v) return false;
        }
        return true;
    }
    size_t size() const { return values_.size(); }
    const std::map<AtomId, bool>& values() const { return values_; }

    std::vector<Literal> literals() const {
        std::vector<Literal> out;
        out.reserve(values_.size());
        for (const auto& [a, v] : values_) out.emplace_back(a, v);
        return out;
    }

private:
    std::map<AtomId, bool> values_;
};

using ArithModel = std::map<VarId, Rational>;
using DeltaModel = std::map<VarId, DeltaRational>;

// Exact truth value of a literal under a total model. Throws
// std::out_of_range if a variable of the literal is unassigned, and
// std::logic_error on boolean atoms.
bool eval_literal(const Literal& l, const ArithModel& m, const AtomTable& atoms);

// Replaces delta by a concrete small positive rational such that all given
// literals (which must hold in delta arithmetic) still hold.
ArithModel concretize(const DeltaModel& dm, const std::vector<Literal>& lits,
                      const AtomTable& atoms);

}  // namespace miniomt
