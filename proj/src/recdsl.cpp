#include "rtbound/recdsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>

namespace rtbound {

Interval Coefficient::value() const {
    Interval v{rational, rational};
    if (euler != 0) v += euler * euler_interval();
    return v;
}

bool is_t_atom(Atom a) {
    switch (a) {
        case Atom::TPred:
        case Atom::TFloorHalf:
        case Atom::TCeilHalf:
        case Atom::AvgAll:
        case Atom::AvgHalves:
            return true;
        default:
            return false;
    }
}

void RecExpr::add(const Coefficient& c, Atom a) {
    for (auto& t : terms) {
        if (t.atom == a) {
            t.coef += c;
            return;
        }
    }
    terms.push_back({c, a});
}

void RecExpr::canonicalize() {
    std::vector<Term> merged;
    for (const auto& t : terms) {
        bool found = false;
        for (auto& m : merged) {
            if (m.atom == t.atom) {
                m.coef += t.coef;
                found = true;
                break;
            }
        }
        if (!found) merged.push_back(t);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const Term& t) { return t.coef.is_zero(); }),
                 merged.end());
    std::stable_sort(merged.begin(), merged.end(), [](const Term& a, const Term& b) {
        return static_cast<int>(a.atom) < static_cast<int>(b.atom);
    });
    terms = std::move(merged);
}

bool RecExpr::has_t_term() const {
    return std::any_of(terms.begin(), terms.end(),
                       [](const Term& t) { return is_t_atom(t.atom); });
}

bool RecExpr::has_non_t_term() const {
    return std::any_of(terms.begin(), terms.end(),
                       [](const Term& t) { return !is_t_atom(t.atom); });
}

const Coefficient* RecExpr::find(Atom a) const {
    for (const auto& t : terms)
        if (t.atom == a) return &t.coef;
    return nullptr;
}

bool RecExpr::operator==(const RecExpr& o) const {
    if (terms.size() != o.terms.size()) return false;
    for (std::size_t i = 0; i < terms.size(); ++i)
        if (!(terms[i].atom == o.terms[i].atom && terms[i].coef == o.terms[i].coef))
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok { Number, Ident, Plus, Star, Slash, Minus, LParen, RParen, LBrace, RBrace, Comma, Equals, End };

struct Token {
    Tok kind;
    std::string text;
    Rat number;
    std::size_t pos;
};

class Lexer {
  public:
    explicit Lexer(const std::string& src) : src_(&src) { advance(); }

    const Token& peek() const { return cur_; }

    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

    Token expect(Tok kind, const std::string& what) {
        if (cur_.kind != kind) throw SyntaxError(cur_.pos, what);
        return take();
    }

    void expect_ident(const std::string& name) {
        if (cur_.kind != Tok::Ident || cur_.text != name)
            throw SyntaxError(cur_.pos, "'" + name + "'");
        take();
    }

    bool at_ident(const std::string& name) const {
        return cur_.kind == Tok::Ident && cur_.text == name;
    }

  private:
    void advance() {
        const std::string& s = *src_;
        while (i_ < s.size()) {
            char c = s[i_];
            if (c == '#') {
                while (i_ < s.size() && s[i_] != '\n') ++i_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++i_;
            } else {
                break;
            }
        }
        cur_.pos = i_;
        if (i_ >= s.size()) {
            cur_ = {Tok::End, "", Rat(0), i_};
            return;
        }
        char c = s[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i_;
            while (j < s.size() &&
                   (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.'))
                ++j;
            std::string lit = s.substr(i_, j - i_);
            cur_ = {Tok::Number, lit, rat_from_decimal(lit), i_};
            i_ = j;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i_;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            cur_ = {Tok::Ident, s.substr(i_, j - i_), Rat(0), i_};
            i_ = j;
            return;
        }
        Tok k;
        switch (c) {
            case '+': k = Tok::Plus; break;
            case '*': k = Tok::Star; break;
            case '/': k = Tok::Slash; break;
            case '-': k = Tok::Minus; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case '{': k = Tok::LBrace; break;
            case '}': k = Tok::RBrace; break;
            case ',': k = Tok::Comma; break;
            case '=': k = Tok::Equals; break;
            default: throw SyntaxError(i_, "a token");
        }
        cur_ = {k, std::string(1, c), Rat(0), i_};
        ++i_;
    }

    const std::string* src_;
    std::size_t i_ = 0;
    Token cur_;
};

// ---------------------------------------------------------------------------
// Expression parsing. `var` is the permitted variable name; `uni_t` allows
// univariate T-atoms T(var-1) etc., `bi_t` the bivariate forms T(n,m-1) etc.

struct AtomSyntax {
    bool allow_t = false;
    bool bivariate_t = false;
    bool allow_inv = false;
    bool allow_var = true;
    bool allow_ln = true;
};

class ExprParser {
  public:
    ExprParser(Lexer& lex, std::string var, AtomSyntax syn)
        : lex_(lex), var_(std::move(var)), syn_(syn) {}

    // TERM := CONST '*' ATOM | CONST | ATOM, CONST := decimal | 'e' | decimal '*' 'e'
    Term parse_term() {
        if (lex_.peek().kind == Tok::Number) {
            Token num = lex_.take();
            if (lex_.peek().kind == Tok::Slash) {
                // the atom 1/var
                if (num.number != 1)
                    throw SyntaxError(num.pos, "'1' as the numerator of 1/" + var_);
                lex_.take();
                require_inv(num.pos);
                lex_.expect_ident(var_);
                return {Coefficient(Rat(1)), Atom::InvVar};
            }
            if (lex_.peek().kind == Tok::Star) {
                lex_.take();
                if (lex_.at_ident("e")) {
                    lex_.take();
                    Coefficient c(Rat(0), num.number);
                    if (lex_.peek().kind == Tok::Star) {
                        lex_.take();
                        return {c, parse_atom()};
                    }
                    return {c, Atom::One};
                }
                return {Coefficient(num.number), parse_atom()};
            }
            return {Coefficient(num.number), Atom::One};
        }
        if (lex_.at_ident("e")) {
            lex_.take();
            Coefficient c(Rat(0), Rat(1));
            if (lex_.peek().kind == Tok::Star) {
                lex_.take();
                return {c, parse_atom()};
            }
            return {c, Atom::One};
        }
        return {Coefficient(Rat(1)), parse_atom()};
    }

  private:
    void require_inv(std::size_t pos) {
        if (!syn_.allow_inv) throw SyntaxError(pos, "an atom valid here (1/" + var_ + " is not)");
    }

    Atom parse_atom() {
        const Token& t = lex_.peek();
        if (t.kind == Tok::Number && t.number == 1) {
            Token one = lex_.take();
            if (lex_.peek().kind == Tok::Slash) {
                lex_.take();
                require_inv(one.pos);
                lex_.expect_ident(var_);
                return Atom::InvVar;
            }
            return Atom::One;
        }
        if (t.kind != Tok::Ident) throw SyntaxError(t.pos, "an atom");
        if (t.text == var_) {
            if (!syn_.allow_var) throw SyntaxError(t.pos, "an atom valid here");
            lex_.take();
            if (lex_.peek().kind == Tok::Star) {
                // greedy: var '*' ln '(' var ')'
                Lexer save = lex_;
                lex_.take();
                if (lex_.at_ident("ln")) {
                    lex_.take();
                    lex_.expect(Tok::LParen, "'('");
                    lex_.expect_ident(var_);
                    lex_.expect(Tok::RParen, "')'");
                    return Atom::VarLnVar;
                }
                lex_ = save;
            }
            return Atom::Var;
        }
        if (t.text == "ln") {
            if (!syn_.allow_ln) throw SyntaxError(t.pos, "an atom valid here");
            lex_.take();
            lex_.expect(Tok::LParen, "'('");
            lex_.expect_ident(var_);
            lex_.expect(Tok::RParen, "')'");
            return Atom::LnVar;
        }
        if (t.text == "T") {
            if (!syn_.allow_t) throw SyntaxError(t.pos, "a non-recursive atom");
            lex_.take();
            lex_.expect(Tok::LParen, "'('");
            if (syn_.bivariate_t) {
                lex_.expect_ident("n");
                lex_.expect(Tok::Comma, "','");
            }
            return finish_t_argument();
        }
        if (t.text == "avg_all" || t.text == "avg_halves") {
            if (!syn_.allow_t) throw SyntaxError(t.pos, "a non-recursive atom");
            bool halves = t.text == "avg_halves";
            lex_.take();
            lex_.expect(Tok::LParen, "'('");
            lex_.expect_ident("T");
            lex_.expect(Tok::RParen, "')'");
            return halves ? Atom::AvgHalves : Atom::AvgAll;
        }
        throw SyntaxError(t.pos, "an atom");
    }

    Atom finish_t_argument() {
        const Token& t = lex_.peek();
        if (t.kind == Tok::Ident && t.text == var_) {
            lex_.take();
            lex_.expect(Tok::Minus, "'-'");
            Token one = lex_.expect(Tok::Number, "'1'");
            if (one.number != 1) throw SyntaxError(one.pos, "'1'");
            lex_.expect(Tok::RParen, "')'");
            return Atom::TPred;
        }
        if (t.kind == Tok::Ident && (t.text == "floor" || t.text == "ceil")) {
            bool fl = t.text == "floor";
            lex_.take();
            lex_.expect(Tok::LParen, "'('");
            lex_.expect_ident(var_);
            lex_.expect(Tok::Slash, "'/'");
            Token two = lex_.expect(Tok::Number, "'2'");
            if (two.number != 2) throw SyntaxError(two.pos, "'2'");
            lex_.expect(Tok::RParen, "')'");
            lex_.expect(Tok::RParen, "')'");
            return fl ? Atom::TFloorHalf : Atom::TCeilHalf;
        }
        throw SyntaxError(t.pos, "a recursion argument");
    }

    Lexer& lex_;
    std::string var_;
    AtomSyntax syn_;
};

void check_scalar_bounds(const RecExpr& e, const std::string& where) {
    for (const auto& t : e.terms) {
        Interval v = t.coef.value();
        if (t.atom == Atom::One) {
            if (!(v.lo > 0))
                throw ValidationError("standalone constant must be positive in " + where);
        } else {
            if (!(v.lo >= 1))
                throw ValidationError("scalar factor below 1 in " + where +
                                      " (grammar requires c >= 1)");
        }
    }
}

Coefficient parse_const(Lexer& lex) {
    if (lex.peek().kind == Tok::Number) {
        Token num = lex.take();
        if (lex.peek().kind == Tok::Star) {
            Lexer save = lex;
            lex.take();
            if (lex.at_ident("e")) {
                lex.take();
                return Coefficient(Rat(0), num.number);
            }
            lex = save;
        }
        return Coefficient(num.number);
    }
    if (lex.at_ident("e")) {
        lex.take();
        return Coefficient(Rat(0), Rat(1));
    }
    throw SyntaxError(lex.peek().pos, "a constant");
}

RecExpr parse_sum(Lexer& lex, const std::string& var, AtomSyntax syn) {
    RecExpr e;
    ExprParser p(lex, var, syn);
    Term t = p.parse_term();
    e.add(t.coef, t.atom);
    while (lex.peek().kind == Tok::Plus) {
        lex.take();
        Term u = p.parse_term();
        e.add(u.coef, u.atom);
    }
    return e;
}

}  // namespace

UniRecurrence parse_uni(const std::string& text) {
    Lexer lex(text);
    lex.expect_ident("rel");
    lex.expect_ident("T");
    lex.expect(Tok::LParen, "'('");
    lex.expect_ident("n");
    lex.expect(Tok::RParen, "')'");
    lex.expect(Tok::Equals, "'='");

    AtomSyntax syn;
    syn.allow_t = true;
    syn.allow_inv = true;
    RecExpr expr = parse_sum(lex, "n", syn);

    lex.expect_ident("base");
    lex.expect_ident("T");
    lex.expect(Tok::LParen, "'('");
    {
        Token one = lex.expect(Tok::Number, "'1'");
        if (one.number != 1) throw SyntaxError(one.pos, "'1'");
    }
    lex.expect(Tok::RParen, "')'");
    lex.expect(Tok::Equals, "'='");
    Coefficient c = parse_const(lex);
    if (lex.peek().kind != Tok::End) throw SyntaxError(lex.peek().pos, "end of input");

    expr.canonicalize();
    if (!expr.has_t_term())
        throw ValidationError("recurrence expression has no T(.) term");
    if (!expr.has_non_t_term())
        throw ValidationError("recurrence expression has no non-T term");
    check_scalar_bounds(expr, "recurrence expression");
    if (!(c.value().lo > 0)) throw ValidationError("base cost must be positive");

    UniRecurrence rec;
    rec.expr = std::move(expr);
    rec.base_cost = c;
    return rec;
}

namespace {

RecExpr parse_brace_sum(Lexer& lex, const std::string& var, AtomSyntax syn) {
    lex.expect(Tok::LBrace, "'{'");
    RecExpr e = parse_sum(lex, var, syn);
    lex.expect(Tok::RBrace, "'}'");
    e.canonicalize();
    return e;
}

}  // namespace

BiRecurrence parse_bi(const std::string& text) {
    Lexer lex(text);
    lex.expect_ident("rel");
    lex.expect_ident("T");
    lex.expect(Tok::LParen, "'('");
    lex.expect_ident("n");
    lex.expect(Tok::Comma, "','");
    lex.expect_ident("m");
    lex.expect(Tok::RParen, "')'");
    lex.expect(Tok::Equals, "'='");

    AtomSyntax h_syn;  // over n: 1, n, ln(n), n*ln(n)
    h_syn.allow_inv = false;
    AtomSyntax b_syn;  // over m: 1, 1/m, ln(m), m, m*ln(m)
    b_syn.allow_inv = true;
    AtomSyntax e_syn;  // T-terms over m only
    e_syn.allow_t = true;
    e_syn.bivariate_t = true;
    e_syn.allow_inv = false;
    e_syn.allow_var = false;
    e_syn.allow_ln = false;

    RecExpr e_part, h_part, b_part;
    bool have_product = false;
    for (;;) {
        if (lex.peek().kind == Tok::LBrace) {
            if (have_product)
                throw SyntaxError(lex.peek().pos, "a single {h} * {b} factor");
            h_part = parse_brace_sum(lex, "n", h_syn);
            lex.expect(Tok::Star, "'*'");
            b_part = parse_brace_sum(lex, "m", b_syn);
            have_product = true;
        } else {
            Term t = ExprParser(lex, "m", e_syn).parse_term();
            if (!is_t_atom(t.atom))
                throw ValidationError("bivariate recursive part admits only T(.) terms");
            e_part.add(t.coef, t.atom);
        }
        if (lex.peek().kind != Tok::Plus) break;
        lex.take();
    }
    if (!have_product) throw SyntaxError(lex.peek().pos, "a {h} * {b} factor");

    lex.expect_ident("base");
    lex.expect_ident("T");
    lex.expect(Tok::LParen, "'('");
    lex.expect_ident("n");
    lex.expect(Tok::Comma, "','");
    {
        Token one = lex.expect(Tok::Number, "'1'");
        if (one.number != 1) throw SyntaxError(one.pos, "'1'");
    }
    lex.expect(Tok::RParen, "')'");
    lex.expect(Tok::Equals, "'='");
    RecExpr base_h = parse_brace_sum(lex, "n", h_syn);
    lex.expect(Tok::Star, "'*'");
    Coefficient c = parse_const(lex);
    if (lex.peek().kind != Tok::End) throw SyntaxError(lex.peek().pos, "end of input");

    e_part.canonicalize();
    if (e_part.terms.empty())
        throw ValidationError("bivariate recurrence has no T(.) term");
    if (!(base_h == h_part))
        throw ValidationError("base-case h factor differs from the recursive one");
    check_scalar_bounds(e_part, "recursive part");
    check_scalar_bounds(h_part, "h factor");
    check_scalar_bounds(b_part, "b factor");
    if (!(c.value().lo > 0)) throw ValidationError("base cost must be positive");

    BiRecurrence rec;
    rec.e_part = std::move(e_part);
    rec.h_part = std::move(h_part);
    rec.b_part = std::move(b_part);
    rec.base_cost = c;
    return rec;
}

Relation parse_relation(const std::string& text) {
    // peek at the header arity
    Lexer lex(text);
    lex.expect_ident("rel");
    lex.expect_ident("T");
    lex.expect(Tok::LParen, "'('");
    lex.expect_ident("n");
    if (lex.peek().kind == Tok::Comma) return parse_bi(text);
    return parse_uni(text);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string coef_string(const Coefficient& c) {
    if (c.euler == 0) return decimal_string(c.rational);
    std::string es = c.euler == 1 ? "e" : decimal_string(c.euler) + "*e";
    if (c.rational == 0) return es;
    return decimal_string(c.rational) + " + " + es;  // not produced by the grammar
}

std::string atom_string(Atom a, const std::string& v) {
    switch (a) {
        case Atom::One: return "1";
        case Atom::Var: return v;
        case Atom::LnVar: return "ln(" + v + ")";
        case Atom::VarLnVar: return v + "*ln(" + v + ")";
        case Atom::InvVar: return "1/" + v;
        case Atom::TPred: return "T(" + v + "-1)";
        case Atom::TFloorHalf: return "T(floor(" + v + "/2))";
        case Atom::TCeilHalf: return "T(ceil(" + v + "/2))";
        case Atom::AvgAll: return "avg_all(T)";
        case Atom::AvgHalves: return "avg_halves(T)";
    }
    return "?";
}

std::string bi_t_atom_string(Atom a) {
    switch (a) {
        case Atom::TPred: return "T(n,m-1)";
        case Atom::TFloorHalf: return "T(n,floor(m/2))";
        case Atom::TCeilHalf: return "T(n,ceil(m/2))";
        default: return atom_string(a, "m");
    }
}

std::string term_string(const Term& t, const std::string& v, bool bivariate_t) {
    std::string atom = bivariate_t && is_t_atom(t.atom) ? bi_t_atom_string(t.atom)
                                                        : atom_string(t.atom, v);
    if (t.atom == Atom::One) return coef_string(t.coef);
    if (t.coef.is_rational() && t.coef.rational == 1) return atom;
    return coef_string(t.coef) + "*" + atom;
}

std::string sum_string(const RecExpr& e, const std::string& v, bool bivariate_t = false) {
    std::string out;
    for (const auto& t : e.terms) {
        if (!out.empty()) out += " + ";
        out += term_string(t, v, bivariate_t);
    }
    if (out.empty()) out = "0";
    return out;
}

}  // namespace

std::string pretty(const RecExpr& e, const std::string& var) { return sum_string(e, var); }

std::string pretty(const UniRecurrence& rec) {
    return "rel T(n) = " + sum_string(rec.expr, "n") + "\nbase T(1) = " +
           coef_string(rec.base_cost) + "\n";
}

std::string pretty(const BiRecurrence& rec) {
    std::string rhs = "{" + sum_string(rec.h_part, "n") + "} * {" +
                      sum_string(rec.b_part, "m") + "}";
    for (const auto& t : rec.e_part.terms) {
        rhs += " + " + term_string(t, "m", true);
    }
    return "rel T(n,m) = " + rhs + "\nbase T(n,1) = {" + sum_string(rec.h_part, "n") +
           "} * " + coef_string(rec.base_cost) + "\n";
}

std::string pretty(const Relation& rel) {
    if (std::holds_alternative<UniRecurrence>(rel))
        return pretty(std::get<UniRecurrence>(rel));
    return pretty(std::get<BiRecurrence>(rel));
}

}  // namespace rtbound
