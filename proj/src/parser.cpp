#include "finmod/parser.hpp"

#include <cctype>

namespace finmod {

namespace {

enum class Tok { Ident, Lt, Forall, Exists, Dot, LParen, RParen, Comma, Eq, Neq, Bang, Amp, Pipe, Arrow, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) {}

    Token next() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        std::size_t start = i_;
        if (i_ >= s_.size()) return {Tok::End, "", start};
        char c = s_[i_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i_;
            while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_' || s_[j] == '\''))
                ++j;
            std::string word(s_.substr(i_, j - i_));
            i_ = j;
            if (word == "forall") return {Tok::Forall, word, start};
            if (word == "exists") return {Tok::Exists, word, start};
            return {Tok::Ident, word, start};
        }
        ++i_;
        switch (c) {
            case '<': return {Tok::Lt, "<", start};
            case '.': return {Tok::Dot, ".", start};
            case '(': return {Tok::LParen, "(", start};
            case ')': return {Tok::RParen, ")", start};
            case ',': return {Tok::Comma, ",", start};
            case '=': return {Tok::Eq, "=", start};
            case '&': return {Tok::Amp, "&", start};
            case '|': return {Tok::Pipe, "|", start};
            case '!':
                if (i_ < s_.size() && s_[i_] == '=') {
                    ++i_;
                    return {Tok::Neq, "!=", start};
                }
                return {Tok::Bang, "!", start};
            case '-':
                if (i_ < s_.size() && s_[i_] == '>') {
                    ++i_;
                    return {Tok::Arrow, "->", start};
                }
                break;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }

private:
    std::string_view s_;
    std::size_t i_ = 0;
};

class Parser {
public:
    Parser(std::string_view text, const Vocabulary& vocab) : lex_(text), vocab_(vocab) { advance(); }

    FormulaPtr parse() {
        auto f = formula();
        expect(Tok::End, "end of input");
        return f;
    }

private:
    void advance() { cur_ = lex_.next(); }

    void expect(Tok k, const char* what) {
        if (cur_.kind != k) throw ParseError(std::string("expected ") + what, cur_.pos);
        advance();
    }

    FormulaPtr formula() { return implication(); }

    FormulaPtr implication() {
        auto lhs = disjunction();
        if (cur_.kind == Tok::Arrow) {
            advance();
            return f_implies(lhs, implication());  // right associative
        }
        return lhs;
    }

    FormulaPtr disjunction() {
        auto lhs = conjunction();
        while (cur_.kind == Tok::Pipe) {
            advance();
            lhs = f_or(lhs, conjunction());
        }
        return lhs;
    }

    FormulaPtr conjunction() {
        auto lhs = unary();
        while (cur_.kind == Tok::Amp) {
            advance();
            lhs = f_and(lhs, unary());
        }
        return lhs;
    }

    FormulaPtr unary() {
        switch (cur_.kind) {
            case Tok::Bang: {
                advance();
                return f_not(unary());
            }
            case Tok::Forall:
            case Tok::Exists: {
                bool uni = cur_.kind == Tok::Forall;
                advance();
                if (cur_.kind != Tok::Ident) throw ParseError("expected variable after quantifier", cur_.pos);
                std::string v = cur_.text;
                advance();
                expect(Tok::Dot, "'.'");
                auto body = formula();  // scope extends maximally right
                return uni ? f_forall(v, body) : f_exists(v, body);
            }
            case Tok::LParen: {
                advance();
                auto f = formula();
                expect(Tok::RParen, "')'");
                return f;
            }
            case Tok::Lt:
            case Tok::Ident:
                return atom();
            default:
                throw ParseError("expected formula", cur_.pos);
        }
    }

    FormulaPtr atom() {
        std::string name = cur_.text;
        std::size_t pos = cur_.pos;
        bool rel_only = cur_.kind == Tok::Lt;
        advance();
        if (cur_.kind == Tok::LParen) {
            if (!vocab_.contains(name)) throw ParseError("undeclared relation symbol " + name, pos);
            advance();
            std::vector<std::string> args;
            for (;;) {
                if (cur_.kind != Tok::Ident) throw ParseError("expected variable", cur_.pos);
                args.push_back(cur_.text);
                advance();
                if (cur_.kind == Tok::Comma) {
                    advance();
                    continue;
                }
                break;
            }
            expect(Tok::RParen, "')'");
            if (vocab_.arity(name) != static_cast<int>(args.size()))
                throw ParseError("arity mismatch for " + name, pos);
            return f_atom(name, std::move(args));
        }
        if (rel_only) throw ParseError("'<' must be used as a relation: <(x,y)", pos);
        if (cur_.kind == Tok::Eq) {
            advance();
            if (cur_.kind != Tok::Ident) throw ParseError("expected variable", cur_.pos);
            std::string rhs = cur_.text;
            advance();
            return f_equal(name, rhs);
        }
        if (cur_.kind == Tok::Neq) {
            advance();
            if (cur_.kind != Tok::Ident) throw ParseError("expected variable", cur_.pos);
            std::string rhs = cur_.text;
            advance();
            return f_not(f_equal(name, rhs));
        }
        throw ParseError("expected '(', '=' or '!=' after identifier", cur_.pos);
    }

    Lexer lex_;
    const Vocabulary& vocab_;
    Token cur_;
};

// Precedence for rendering: -> 1, | 2, & 3, ! 4, atoms 5. Quantifiers bind
// weakest and are parenthesized whenever they are a proper operand.
int node_prec(const Formula& f) {
    switch (f.kind) {
        case Kind::Forall:
        case Kind::Exists: return 0;
        case Kind::Implies: return 1;
        case Kind::Or: return 2;
        case Kind::And: return 3;
        case Kind::Not:
            return f.left->kind == Kind::Equal ? 5 : 4;  // rendered as !=
        case Kind::Equal:
        case Kind::Atom: return 5;
    }
    return 5;
}

void render(const Formula& f, int min_prec, std::string& out) {
    int prec = node_prec(f);
    bool paren = prec < min_prec;
    if (paren) out += "(";
    switch (f.kind) {
        case Kind::Equal:
            out += f.args[0] + " = " + f.args[1];
            break;
        case Kind::Atom: {
            out += f.rel + "(";
            for (std::size_t i = 0; i < f.args.size(); ++i) {
                if (i) out += ",";
                out += f.args[i];
            }
            out += ")";
            break;
        }
        case Kind::Not:
            if (f.left->kind == Kind::Equal) {
                out += f.left->args[0] + " != " + f.left->args[1];
            } else {
                out += "!";
                render(*f.left, 4, out);
            }
            break;
        case Kind::And:
            render(*f.left, 3, out);
            out += " & ";
            render(*f.right, 4, out);
            break;
        case Kind::Or:
            render(*f.left, 2, out);
            out += " | ";
            render(*f.right, 3, out);
            break;
        case Kind::Implies:
            render(*f.left, 2, out);
            out += " -> ";
            render(*f.right, 1, out);
            break;
        case Kind::Forall:
        case Kind::Exists:
            out += f.kind == Kind::Forall ? "forall " : "exists ";
            out += f.var + ". ";
            render(*f.left, 0, out);
            break;
    }
    if (paren) out += ")";
}

}  // namespace

FormulaPtr parse_formula(std::string_view text, const Vocabulary& vocab) {
    return Parser(text, vocab).parse();
}

std::string render_formula(const Formula& f) {
    std::string out;
    render(f, 0, out);
    return out;
}

}  // namespace finmod
