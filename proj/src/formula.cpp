#include "gcad/formula.hpp"

#include <cctype>
#include <stdexcept>

namespace gcad {

namespace {

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct MatrixParser {
    const std::string& s;
    std::size_t pos = 0;
    VarsPtr vars;

    MatrixParser(const std::string& text, VarsPtr v) : s(text), vars(std::move(v)) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw std::runtime_error("formula parse error at offset " + std::to_string(pos) + ": " +
                                 why);
    }

    // matches a keyword at pos with identifier boundaries, without consuming
    bool at_word(const char* w) const {
        std::size_t n = std::string::traits_type::length(w);
        if (s.compare(pos, n, w) != 0) return false;
        if (pos + n < s.size() && ident_char(s[pos + n])) return false;
        return pos == 0 || !ident_char(s[pos - 1]);
    }

    bool eat_word(const char* w) {
        skip_ws();
        if (!at_word(w)) return false;
        pos += std::string::traits_type::length(w);
        return true;
    }

    // a parenthesized group is boolean iff it contains a relational operator
    // anywhere; arithmetic subexpressions never do
    bool paren_is_boolean() const {
        int depth = 0;
        for (std::size_t i = pos; i < s.size(); ++i) {
            if (s[i] == '(') ++depth;
            if (s[i] == ')' && --depth == 0) return false;
            if (s[i] == '=' || s[i] == '<' || s[i] == '>' || s[i] == '!') return true;
        }
        fail("unbalanced parentheses");
    }

    FormulaNode parse_or() {
        FormulaNode n = parse_and();
        skip_ws();
        if (!at_word("or")) return n;
        FormulaNode r;
        r.kind = FormulaNode::Kind::Or;
        r.kids.push_back(std::move(n));
        while (eat_word("or")) r.kids.push_back(parse_and());
        return r;
    }

    FormulaNode parse_and() {
        FormulaNode n = parse_factor();
        skip_ws();
        if (!at_word("and")) return n;
        FormulaNode r;
        r.kind = FormulaNode::Kind::And;
        r.kids.push_back(std::move(n));
        while (eat_word("and")) r.kids.push_back(parse_factor());
        return r;
    }

    FormulaNode parse_factor() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of formula");
        if (eat_word("not")) {
            FormulaNode r;
            r.kind = FormulaNode::Kind::Not;
            r.kids.push_back(parse_factor());
            return r;
        }
        if (s[pos] == '(' && paren_is_boolean()) {
            ++pos;
            FormulaNode n = parse_or();
            skip_ws();
            if (pos >= s.size() || s[pos] != ')') fail("expected ')'");
            ++pos;
            return n;
        }
        return parse_atom();
    }

    // scans a polynomial chunk (balanced parentheses); stops at a relational
    // operator, a boolean keyword, or an unmatched ')' at depth 0
    std::string scan_poly(bool before_rel) {
        skip_ws();
        std::size_t start = pos;
        int depth = 0;
        while (pos < s.size()) {
            char c = s[pos];
            if (c == '(') ++depth;
            if (c == ')') {
                if (depth == 0) break;
                --depth;
            }
            if (depth == 0) {
                if (before_rel && (c == '=' || c == '<' || c == '>' || c == '!')) break;
                if (!before_rel && (at_word("and") || at_word("or"))) break;
            }
            ++pos;
        }
        if (pos == start) fail("expected a polynomial");
        return s.substr(start, pos - start);
    }

    Rel parse_rel() {
        skip_ws();
        if (pos >= s.size()) fail("expected a relation");
        char c = s[pos];
        char d = pos + 1 < s.size() ? s[pos + 1] : '\0';
        if (c == '!' && d == '=') return pos += 2, Rel::Ne;
        if (c == '<' && d == '=') return pos += 2, Rel::Le;
        if (c == '>' && d == '=') return pos += 2, Rel::Ge;
        if (c == '=') return ++pos, Rel::Eq;
        if (c == '<') return ++pos, Rel::Lt;
        if (c == '>') return ++pos, Rel::Gt;
        fail("expected a relation");
    }

    FormulaNode parse_atom() {
        std::string lhs = scan_poly(true);
        Rel rel = parse_rel();
        std::string rhs = scan_poly(false);
        FormulaNode n;
        n.kind = FormulaNode::Kind::Atom;
        n.rel = rel;
        n.poly = (parse_poly(vars, lhs) - parse_poly(vars, rhs)).canonicalized();
        return n;
    }
};

bool rel_holds(Rel rel, int sign) {
    switch (rel) {
        case Rel::Eq: return sign == 0;
        case Rel::Ne: return sign != 0;
        case Rel::Lt: return sign < 0;
        case Rel::Le: return sign <= 0;
        case Rel::Gt: return sign > 0;
        case Rel::Ge: return sign >= 0;
    }
    return false;
}

}  // namespace

PrenexFormula parse_formula(const std::string& text) {
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto read_ident = [&]() -> std::string {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && ident_char(text[pos])) ++pos;
        if (pos == start) throw std::runtime_error("formula parse error: expected an identifier");
        return text.substr(start, pos - start);
    };

    VarList names;
    std::vector<bool> universal;
    while (true) {
        std::size_t mark = pos;
        skip_ws();
        if (pos >= text.size() || !ident_char(text[pos])) {
            pos = mark;
            break;
        }
        std::string q = read_ident();
        if (q != "A" && q != "E") {
            pos = mark;
            break;
        }
        universal.push_back(q == "A");
        names.push_back(read_ident());
    }
    if (names.empty()) throw std::runtime_error("formula parse error: empty quantifier prefix");

    PrenexFormula phi;
    phi.vars = make_vars(std::move(names));
    phi.universal = std::move(universal);
    MatrixParser mp(text, phi.vars);
    mp.pos = pos;
    phi.matrix = mp.parse_or();
    mp.skip_ws();
    if (mp.pos != text.size()) mp.fail("trailing input");
    return phi;
}

bool eval_formula(const FormulaNode& node, const std::vector<RealAlgebraicNumber>& point) {
    switch (node.kind) {
        case FormulaNode::Kind::Atom: {
            int s = node.poly.is_constant() ? sign(node.poly.constant_value())
                                            : sign_at_point(node.poly, point);
            return rel_holds(node.rel, s);
        }
        case FormulaNode::Kind::And:
            for (auto& k : node.kids)
                if (!eval_formula(k, point)) return false;
            return true;
        case FormulaNode::Kind::Or:
            for (auto& k : node.kids)
                if (eval_formula(k, point)) return true;
            return false;
        case FormulaNode::Kind::Not: return !eval_formula(node.kids.front(), point);
    }
    return false;
}

}  // namespace gcad
