#include "frontend/cnf.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_set>

namespace miniomt {

BoolExprPtr BoolExpr::make_true() {
    return std::make_shared<BoolExpr>(BoolExpr{Kind::True, {}, {}});
}
BoolExprPtr BoolExpr::make_false() {
    return std::make_shared<BoolExpr>(BoolExpr{Kind::False, {}, {}});
}
BoolExprPtr BoolExpr::make_lit(Literal l) {
    return std::make_shared<BoolExpr>(BoolExpr{Kind::Lit, l, {}});
}
BoolExprPtr BoolExpr::make_and(std::vector<BoolExprPtr> kids) {
    return std::make_shared<BoolExpr>(BoolExpr{Kind::And, {}, std::move(kids)});
}
BoolExprPtr BoolExpr::make_or(std::vector<BoolExprPtr> kids) {
    return std::make_shared<BoolExpr>(BoolExpr{Kind::Or, {}, std::move(kids)});
}
BoolExprPtr BoolExpr::make_not(BoolExprPtr e) {
    return std::make_shared<BoolExpr>(BoolExpr{Kind::Not, {}, {std::move(e)}});
}

namespace {

// NNF node: And/Or over literals, or a constant.
struct Nnf {
    enum class Kind { True, False, Lit, And, Or };
    Kind kind;
    Literal lit;
    std::vector<std::shared_ptr<const Nnf>> kids;
};
using NnfPtr = std::shared_ptr<const Nnf>;

NnfPtr to_nnf(const BoolExprPtr& e, bool negated) {
    switch (e->kind) {
        case BoolExpr::Kind::True:
            return std::make_shared<Nnf>(
                Nnf{negated ? Nnf::Kind::False : Nnf::Kind::True, {}, {}});
        case BoolExpr::Kind::False:
            return std::make_shared<Nnf>(
                Nnf{negated ? Nnf::Kind::True : Nnf::Kind::False, {}, {}});
        case BoolExpr::Kind::Lit: {
            Literal l = negated ? e->lit.complement() : e->lit;
            return std::make_shared<Nnf>(Nnf{Nnf::Kind::Lit, l, {}});
        }
        case BoolExpr::Kind::Not:
            return to_nnf(e->kids[0], !negated);
        case BoolExpr::Kind::And:
        case BoolExpr::Kind::Or: {
            bool is_and = (e->kind == BoolExpr::Kind::And) != negated;
            std::vector<NnfPtr> kids;
            for (const auto& k : e->kids) kids.push_back(to_nnf(k, negated));
            // Flatten same-kind children and fold constants.
            Nnf::Kind kind = is_and ? Nnf::Kind::And : Nnf::Kind::Or;
            std::vector<NnfPtr> flat;
            for (auto& k : kids) {
                if (k->kind == kind) {
                    flat.insert(flat.end(), k->kids.begin(), k->kids.end());
                } else if (k->kind == Nnf::Kind::True) {
                    if (!is_and) return k;  // or with true
                } else if (k->kind == Nnf::Kind::False) {
                    if (is_and) return k;  // and with false
                } else {
                    flat.push_back(std::move(k));
                }
            }
            if (flat.empty())
                return std::make_shared<Nnf>(
                    Nnf{is_and ? Nnf::Kind::True : Nnf::Kind::False, {}, {}});
            if (flat.size() == 1) return flat[0];
            return std::make_shared<Nnf>(Nnf{kind, {}, std::move(flat)});
        }
    }
    throw std::logic_error("unreachable");
}

class Converter {
public:
    explicit Converter(CnfFormula& out) : out_(out) {}

    void add_clause(std::vector<Literal> lits) {
        // Dedupe and drop tautologies.
        std::sort(lits.begin(), lits.end(), [](Literal a, Literal b) {
            return a.atom != b.atom ? a.atom < b.atom : a.positive < b.positive;
        });
        lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
        for (size_t i = 0; i + 1 < lits.size(); ++i)
            if (lits[i].atom == lits[i + 1].atom) return;  // l and not-l
        out_.clauses.push_back(Clause{std::move(lits)});
    }

    // Returns a literal equivalent (one-sided) to the subformula. Literals
    // pass through; composite nodes get a fresh definition atom. All NNF
    // polarities are positive, so only the (def -> formula) side is needed.
    Literal encode(const NnfPtr& n) {
        if (n->kind == Nnf::Kind::Lit) return n->lit;
        auto it = cache_.find(n.get());
        if (it != cache_.end()) return it->second;
        Literal def(out_.atoms.intern_boolean("@def" + std::to_string(out_.atoms.size())), true);
        if (n->kind == Nnf::Kind::And) {
            for (const auto& k : n->kids) add_clause({def.complement(), encode(k)});
        } else {  // Or
            std::vector<Literal> cl{def.complement()};
            for (const auto& k : n->kids) cl.push_back(encode(k));
            add_clause(std::move(cl));
        }
        cache_.emplace(n.get(), def);
        return def;
    }

    // Emits a top-level conjunct without introducing a definition for it.
    void emit_top(const NnfPtr& n) {
        switch (n->kind) {
            case Nnf::Kind::True:
                return;
            case Nnf::Kind::False:
                out_.clauses.push_back(Clause{});
                return;
            case Nnf::Kind::Lit:
                add_clause({n->lit});
                return;
            case Nnf::Kind::And:
                for (const auto& k : n->kids) emit_top(k);
                return;
            case Nnf::Kind::Or: {
                std::vector<Literal> cl;
                for (const auto& k : n->kids) cl.push_back(encode(k));
                add_clause(std::move(cl));
                return;
            }
        }
    }

private:
    CnfFormula& out_;
    std::map<const Nnf*, Literal> cache_;
};

}  // namespace

void cnf_convert(const BoolExprPtr& expr, CnfFormula& out) {
    Converter conv(out);
    conv.emit_top(to_nnf(expr, false));
}

}  // namespace miniomt
