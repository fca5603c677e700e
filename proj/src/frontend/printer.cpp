#include <sstream>

#include "frontend/problem.hpp"

namespace miniomt {

namespace {

void print_rational(std::ostream& os, const Rational& q) {
    if (q < 0) {
        os << "(- ";
        print_rational(os, -q);
        os << ")";
        return;
    }
    if (q.get_den() == 1)
        os << q.get_num().get_str();
    else
        os << "(/ " << q.get_num().get_str() << " " << q.get_den().get_str() << ")";
}

void print_term(std::ostream& os, const LinearTerm& t, const Problem& p) {
    std::vector<std::string> parts;
    for (const auto& [v, c] : t.coeffs()) {
        std::ostringstream part;
        if (c == 1) {
            part << p.var_names[v];
        } else {
            part << "(* ";
            print_rational(part, c);
            part << " " << p.var_names[v] << ")";
        }
        parts.push_back(part.str());
    }
    if (t.constant() != 0 || parts.empty()) {
        std::ostringstream part;
        print_rational(part, t.constant());
        parts.push_back(part.str());
    }
    if (parts.size() == 1) {
        os << parts[0];
        return;
    }
    os << "(+";
    for (const auto& s : parts) os << " " << s;
    os << ")";
}

void print_atom(std::ostream& os, const Atom& a, const Problem& p) {
    if (!a.is_theory) {
        os << a.name;
        return;
    }
    const char* rel = a.rel == Rel::Le ? "<=" : a.rel == Rel::Lt ? "<" : "=";
    // Print as (rel var-part constant) with the constant moved to the right.
    LinearTerm lhs = a.term;
    Rational rhs = -lhs.constant();
    lhs.add_constant(rhs);
    os << "(" << rel << " ";
    print_term(os, lhs, p);
    os << " ";
    print_rational(os, rhs);
    os << ")";
}

}  // namespace

std::string print_problem(const Problem& p) {
    std::ostringstream os;
    if (!p.name.empty()) os << "; " << p.name << "\n";
    os << "(set-logic " << (p.has_integer_vars() ? "QF_LIRA" : "QF_LRA") << ")\n";
    for (VarId v = 0; v < p.num_vars(); ++v) {
        os << "(declare-const " << p.var_names[v] << " "
           << (p.var_types[v] == VarType::Integer ? "Int" : "Real") << ")\n";
    }
    for (AtomId a = 0; a < p.cnf.num_atoms(); ++a) {
        const Atom& atom = p.cnf.atoms.atom(a);
        if (!atom.is_theory) os << "(declare-const " << atom.name << " Bool)\n";
    }
    for (const Clause& c : p.cnf.clauses) {
        os << "(assert ";
        if (c.lits.empty()) {
            os << "false";
        } else {
            if (c.lits.size() > 1) os << "(or ";
            for (size_t i = 0; i < c.lits.size(); ++i) {
                if (i) os << " ";
                const Literal& l = c.lits[i];
                if (!l.positive) os << "(not ";
                print_atom(os, p.cnf.atoms.atom(l.atom), p);
                if (!l.positive) os << ")";
            }
            if (c.lits.size() > 1) os << ")";
        }
        os << ")\n";
    }
    LinearTerm obj = p.maximize ? -p.objective : p.objective;
    os << "(" << (p.maximize ? "maximize" : "minimize") << " ";
    print_term(os, obj, p);
    os << ")\n(check-sat)\n";
    return os.str();
}

}  // namespace miniomt
