#include "core/atoms.hpp"

#include <sstream>
#include <stdexcept>

namespace miniomt {

namespace {

// Scales the term by a positive rational so that all coefficients and the
// constant become coprime integers. Positive scaling preserves <= and <.
void scale_to_coprime_integers(LinearTerm& term) {
    Integer den_lcm = 1;
    for (const auto& [v, c] : term.coeffs()) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    }
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), term.constant().get_den_mpz_t());
    Integer num_gcd = 0;
    auto fold_gcd = [&](const Rational& c) {
        Integer scaled = c.get_num() * (den_lcm / c.get_den());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
    };
    for (const auto& [v, c] : term.coeffs()) fold_gcd(c);
    if (term.constant() != 0) fold_gcd(term.constant());
    if (num_gcd == 0) num_gcd = 1;  // the zero term
    Rational factor(den_lcm, num_gcd);
    factor.canonicalize();
    term *= factor;
}

std::string atom_key(const Atom& a) {
    if (!a.is_theory) return "B|" + a.name;
    std::ostringstream os;
    os << "L|" << int(a.rel) << "|";
    for (const auto& [v, c] : a.term.coeffs()) os << v << ":" << rat_to_string(c) << ",";
    os << "|" << rat_to_string(a.term.constant());
    return os.str();
}

}  // namespace

Atom normalize_atom(LinearTerm term, RawRel raw_rel) {
    Rel rel;
    switch (raw_rel) {
        case RawRel::Le: rel = Rel::Le; break;
        case RawRel::Lt: rel = Rel::Lt; break;
        case RawRel::Ge: rel = Rel::Le; term *= Rational(-1); break;
        case RawRel::Gt: rel = Rel::Lt; term *= Rational(-1); break;
        case RawRel::Eq: rel = Rel::Eq; break;
    }
    scale_to_coprime_integers(term);
    if (rel == Rel::Eq && !term.coeffs().empty() && term.coeffs().begin()->second < 0) {
        term *= Rational(-1);
    }
    Atom a;
    a.is_theory = true;
    a.term = std::move(term);
    a.rel = rel;
    return a;
}

AtomId AtomTable::add(Atom a, const std::string& key) {
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    AtomId id = AtomId(atoms_.size());
    atoms_.push_back(std::move(a));
    index_.emplace(key, id);
    return id;
}

AtomId AtomTable::intern_linear(LinearTerm term, RawRel raw_rel) {
    Atom a = normalize_atom(std::move(term), raw_rel);
    std::string key = atom_key(a);
    return add(std::move(a), key);
}

AtomId AtomTable::intern_boolean(const std::string& name) {
    Atom a;
    a.is_theory = false;
    a.name = name;
    return add(a, "B|" + name);
}

bool eval_literal(const Literal& l, const ArithModel& m, const AtomTable& atoms) {
    const Atom& a = atoms.atom(l.atom);
    if (!a.is_theory) throw std::logic_error("eval_literal: boolean atom has no arithmetic value");
    Rational v = a.term.eval(m);
    bool holds;
    switch (a.rel) {
        case Rel::Le: holds = v <= 0; break;
        case Rel::Lt: holds = v < 0; break;
        case Rel::Eq: holds = v == 0; break;
        default: holds = false;
    }
    return l.positive ? holds : !holds;
}

ArithModel concretize(const DeltaModel& dm, const std::vector<Literal>& lits,
                      const AtomTable& atoms) {
    // Find eps > 0 such that substituting delta := eps keeps every literal
    // true. Each literal contributes at most one upper bound on eps; halving
    // the minimum bound covers the strict cases.
    std::optional<Rational> bound;
    auto tighten = [&](const Rational& b) {
        if (!bound || b < *bound) bound = b;
    };
    for (const Literal& l : lits) {
        const Atom& a = atoms.atom(l.atom);
        if (!a.is_theory) continue;
        DeltaRational d = a.term.eval(dm);
        const Rational& r = d.real;
        const Rational& k = d.delta;
        bool want_le_zero = (a.rel == Rel::Le && l.positive) || (a.rel == Rel::Lt && l.positive);
        bool want_ge_zero = (a.rel == Rel::Le && !l.positive) || (a.rel == Rel::Lt && !l.positive);
        if (want_le_zero && k > 0 && r < 0) tighten(-r / k);
        if (want_ge_zero && k < 0 && r > 0) tighten(r / -k);
        if (a.rel == Rel::Eq && !l.positive && k != 0 && r != 0 && -r / k > 0) tighten(-r / k);
        // Eq positive requires r == 0 and k == 0, which holds by precondition.
    }
    Rational eps = bound ? *bound / 2 : Rational(1);
    ArithModel out;
    for (const auto& [v, d] : dm) out[v] = d.real + d.delta * eps;
    return out;
}

}  // namespace miniomt
