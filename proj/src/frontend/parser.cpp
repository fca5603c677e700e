#include "frontend/parser.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "frontend/cnf.hpp"

namespace miniomt {

namespace {

struct Sexp {
    // Either an atom token or a list.
    std::string token;
    std::vector<Sexp> kids;
    bool is_list = false;
    int line = 0, col = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Sexp read_all_as_list() {
        Sexp top;
        top.is_list = true;
        skip_ws();
        while (!eof()) {
            top.kids.push_back(read());
            skip_ws();
        }
        return top;
    }

private:
    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    void skip_ws() {
        while (!eof()) {
            char c = peek();
            if (c == ';') {
                while (!eof() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    Sexp read() {
        skip_ws();
        if (eof()) throw ParseError(line_, col_, "unexpected end of input");
        Sexp s;
        s.line = line_;
        s.col = col_;
        if (peek() == '(') {
            advance();
            s.is_list = true;
            skip_ws();
            while (!eof() && peek() != ')') {
                s.kids.push_back(read());
                skip_ws();
            }
            if (eof()) throw ParseError(s.line, s.col, "unclosed '('");
            advance();  // ')'
            return s;
        }
        if (peek() == ')') throw ParseError(line_, col_, "unexpected ')'");
        while (!eof() && !std::isspace(static_cast<unsigned char>(peek())) && peek() != '(' &&
               peek() != ')' && peek() != ';') {
            s.token += peek();
            advance();
        }
        return s;
    }

    const std::string& text_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

class ProblemBuilder {
public:
    explicit ProblemBuilder(const std::string& name) { problem_.name = name; }

    Problem build(const Sexp& top) {
        std::vector<BoolExprPtr> asserts;
        std::optional<LinearTerm> objective;
        bool maximize = false;
        for (const Sexp& cmd : top.kids) {
            if (!cmd.is_list || cmd.kids.empty() || cmd.kids[0].is_list)
                throw ParseError(cmd.line, cmd.col, "expected a command");
            const std::string& head = cmd.kids[0].token;
            if (head == "set-logic") {
                expect_arity(cmd, 2);
                const std::string& logic = cmd.kids[1].token;
                if (logic != "QF_LRA" && logic != "QF_LIRA")
                    throw ParseError(cmd.line, cmd.col, "unsupported logic '" + logic + "'");
            } else if (head == "declare-const") {
                expect_arity(cmd, 3);
                declare(cmd.kids[1], cmd.kids[2]);
            } else if (head == "assert") {
                expect_arity(cmd, 2);
                asserts.push_back(parse_formula(cmd.kids[1]));
            } else if (head == "minimize" || head == "maximize") {
                expect_arity(cmd, 2);
                if (objective)
                    throw ParseError(cmd.line, cmd.col, "multiple objectives");
                objective = parse_term(cmd.kids[1]);
                maximize = (head == "maximize");
            } else if (head == "check-sat" || head == "exit") {
                expect_arity(cmd, 1);
            } else {
                throw ParseError(cmd.line, cmd.col, "unknown command '" + head + "'");
            }
        }
        if (!objective)
            throw ParseError(1, 1, "missing (minimize ...) or (maximize ...)");
        problem_.objective = maximize ? -*objective : *objective;
        problem_.maximize = maximize;
        cnf_convert(BoolExpr::make_and(std::move(asserts)), problem_.cnf);
        return std::move(problem_);
    }

private:
    static void expect_arity(const Sexp& cmd, size_t n) {
        if (cmd.kids.size() != n)
            throw ParseError(cmd.line, cmd.col,
                             "wrong number of arguments to '" + cmd.kids[0].token + "'");
    }

    void declare(const Sexp& name, const Sexp& sort) {
        if (name.is_list || sort.is_list)
            throw ParseError(name.line, name.col, "malformed declare-const");
        if (vars_.count(name.token) || bool_vars_.count(name.token))
            throw ParseError(name.line, name.col, "redeclared variable '" + name.token + "'");
        if (sort.token == "Bool") {
            bool_vars_.insert(name.token);
            return;
        }
        VarType t;
        if (sort.token == "Real")
            t = VarType::Rational;
        else if (sort.token == "Int")
            t = VarType::Integer;
        else
            throw ParseError(sort.line, sort.col, "unknown sort '" + sort.token + "'");
        VarId id = VarId(problem_.var_types.size());
        vars_.emplace(name.token, id);
        problem_.var_types.push_back(t);
        problem_.var_names.push_back(name.token);
    }

    LinearTerm parse_term(const Sexp& s) {
        if (!s.is_list) {
            if (auto q = parse_numeral(s.token)) return LinearTerm(*q);
            auto it = vars_.find(s.token);
            if (it == vars_.end())
                throw ParseError(s.line, s.col, "undeclared variable '" + s.token + "'");
            return LinearTerm::variable(it->second);
        }
        if (s.kids.empty() || s.kids[0].is_list)
            throw ParseError(s.line, s.col, "malformed term");
        const std::string& op = s.kids[0].token;
        if (op == "+") {
            LinearTerm t;
            for (size_t i = 1; i < s.kids.size(); ++i) t += parse_term(s.kids[i]);
            return t;
        }
        if (op == "-") {
            if (s.kids.size() == 2) return -parse_term(s.kids[1]);
            if (s.kids.size() < 2) throw ParseError(s.line, s.col, "'-' needs arguments");
            LinearTerm t = parse_term(s.kids[1]);
            for (size_t i = 2; i < s.kids.size(); ++i) t -= parse_term(s.kids[i]);
            return t;
        }
        if (op == "*") {
            if (s.kids.size() != 3) throw ParseError(s.line, s.col, "'*' needs two arguments");
            LinearTerm a = parse_term(s.kids[1]);
            LinearTerm b = parse_term(s.kids[2]);
            if (a.is_constant()) return b * a.constant();
            if (b.is_constant()) return a * b.constant();
            throw ParseError(s.line, s.col, "non-linear term");
        }
        if (op == "/") {
            if (s.kids.size() != 3) throw ParseError(s.line, s.col, "'/' needs two arguments");
            LinearTerm a = parse_term(s.kids[1]);
            LinearTerm b = parse_term(s.kids[2]);
            if (!b.is_constant() || b.constant() == 0)
                throw ParseError(s.line, s.col, "division must be by a nonzero constant");
            Rational inv = 1 / b.constant();
            return a * inv;
        }
        throw ParseError(s.line, s.col, "unknown term operator '" + op + "'");
    }

    static std::optional<Rational> parse_numeral(const std::string& tok) {
        if (tok.empty()) return std::nullopt;
        char c = tok[0];
        if (c != '-' && !std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        return rat_from_string(tok);
    }

    BoolExprPtr parse_formula(const Sexp& s) {
        if (!s.is_list) {
            if (s.token == "true") return BoolExpr::make_true();
            if (s.token == "false") return BoolExpr::make_false();
            if (bool_vars_.count(s.token))
                return BoolExpr::make_lit(
                    Literal(problem_.cnf.atoms.intern_boolean(s.token), true));
            throw ParseError(s.line, s.col, "expected a formula, got '" + s.token + "'");
        }
        if (s.kids.empty() || s.kids[0].is_list)
            throw ParseError(s.line, s.col, "malformed formula");
        const std::string& op = s.kids[0].token;
        if (op == "and" || op == "or") {
            std::vector<BoolExprPtr> kids;
            for (size_t i = 1; i < s.kids.size(); ++i) kids.push_back(parse_formula(s.kids[i]));
            return op == "and" ? BoolExpr::make_and(std::move(kids))
                               : BoolExpr::make_or(std::move(kids));
        }
        if (op == "not") {
            expect_arity(s, 2);
            return BoolExpr::make_not(parse_formula(s.kids[1]));
        }
        if (op == "<=" || op == "<" || op == ">=" || op == ">" || op == "=") {
            expect_arity(s, 3);
            LinearTerm t = parse_term(s.kids[1]) - parse_term(s.kids[2]);
            if (op == "=") {
                // Split at CNF level: (t = 0) -> (t <= 0) and (-t <= 0). The
                // negation then becomes ((t < 0) or (-t < 0)) via De Morgan.
                Literal le1(problem_.cnf.atoms.intern_linear(t, RawRel::Le), true);
                Literal le2(problem_.cnf.atoms.intern_linear(-t, RawRel::Le), true);
                return BoolExpr::make_and({BoolExpr::make_lit(le1), BoolExpr::make_lit(le2)});
            }
            RawRel rel = op == "<=" ? RawRel::Le
                         : op == "<" ? RawRel::Lt
                         : op == ">=" ? RawRel::Ge
                                      : RawRel::Gt;
            return BoolExpr::make_lit(Literal(problem_.cnf.atoms.intern_linear(t, rel), true));
        }
        throw ParseError(s.line, s.col, "unknown formula operator '" + op + "'");
    }

    Problem problem_;
    std::map<std::string, VarId> vars_;
    std::set<std::string> bool_vars_;
};

}  // namespace

Problem parse_problem(const std::string& text, const std::string& name) {
    Lexer lexer(text);
    Sexp top = lexer.read_all_as_list();
    ProblemBuilder builder(name);
    return builder.build(top);
}

}  // namespace miniomt
