#include "syntax.hpp"

#include <cctype>

#include "strata/kb.hpp"

namespace strata::syntax {
namespace {

enum class Tok { Ident, Directive, LParen, RParen, Comma, Dot, If, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_space_and_comments();
        Token t;
        t.line = line_;
        t.column = col_;
        if (pos_ >= src_.size()) return t;
        const char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            t.kind = Tok::Ident;
            while (pos_ < src_.size() && is_ident_char(src_[pos_])) t.text += advance();
            return t;
        }
        if (c == '#') {
            advance();
            t.kind = Tok::Directive;
            while (pos_ < src_.size() && is_ident_char(src_[pos_])) t.text += advance();
            return t;
        }
        switch (c) {
            case '(': advance(); t.kind = Tok::LParen; return t;
            case ')': advance(); t.kind = Tok::RParen; return t;
            case ',': advance(); t.kind = Tok::Comma; return t;
            case '.': advance(); t.kind = Tok::Dot; return t;
            case ':':
                advance();
                if (pos_ < src_.size() && src_[pos_] == '-') {
                    advance();
                    t.kind = Tok::If;
                    return t;
                }
                throw ParseError(t.line, t.column, "expected ':-'");
            default:
                throw ParseError(t.line, t.column, std::string("unexpected character '") + c + "'");
        }
    }

private:
    static bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    char advance() {
        const char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == '%') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

class Reader {
public:
    Reader(std::string_view text, bool allow_arguments) : lex_(text), allow_args_(allow_arguments) { shift(); }

    std::vector<Statement> run() {
        std::vector<Statement> out;
        while (cur_.kind != Tok::End) out.push_back(statement());
        return out;
    }

private:
    void shift() { cur_ = lex_.next(); }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(cur_.line, cur_.column, msg); }

    void expect(Tok k, const char* what) {
        if (cur_.kind != k) fail(std::string("expected ") + what);
        shift();
    }

    Statement statement() {
        Statement st;
        st.line = cur_.line;
        st.column = cur_.column;
        if (cur_.kind == Tok::Directive) {
            if (cur_.text != "nogood") fail("unknown directive '#" + cur_.text + "'");
            shift();
            st.kind = Statement::Kind::Nogood;
            while (cur_.kind == Tok::Ident) {
                st.nogood.push_back(atom());
                if (cur_.kind == Tok::Comma) shift();
            }
            if (st.nogood.empty()) fail("#nogood needs at least one atom");
            expect(Tok::Dot, "'.'");
            return st;
        }
        st.head = atom();
        if (cur_.kind == Tok::If) {
            shift();
            st.body.push_back(literal());
            while (cur_.kind == Tok::Comma) {
                shift();
                st.body.push_back(literal());
            }
        }
        expect(Tok::Dot, "'.'");
        return st;
    }

    Literal literal() {
        Literal lit;
        if (cur_.kind == Tok::Ident && cur_.text == "not") {
            shift();
            lit.negated = true;
        }
        lit.atom = atom();
        return lit;
    }

    Atom atom() {
        if (cur_.kind != Tok::Ident) fail("expected an atom");
        if (cur_.text == "not") fail("'not' is reserved");
        Atom a;
        a.predicate = cur_.text;
        a.line = cur_.line;
        a.column = cur_.column;
        shift();
        if (cur_.kind == Tok::LParen) {
            if (!allow_args_) fail("arguments are not allowed in a propositional program");
            shift();
            a.has_parens = true;
            a.args.push_back(term());
            while (cur_.kind == Tok::Comma) {
                shift();
                a.args.push_back(term());
            }
            expect(Tok::RParen, "')'");
        }
        return a;
    }

    Term term() {
        if (cur_.kind != Tok::Ident) fail("expected a term");
        Term t;
        t.text = cur_.text;
        const char c = t.text.front();
        t.variable = std::isupper(static_cast<unsigned char>(c)) || c == '_';
        shift();
        return t;
    }

    Lexer lex_;
    bool allow_args_;
    Token cur_;
};

}  // namespace

std::vector<Statement> read_statements(std::string_view text, bool allow_arguments) {
    return Reader(text, allow_arguments).run();
}

std::string atom_text(const Atom& a) {
    std::string out = a.predicate;
    if (a.has_parens) {
        out += '(';
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (i) out += ',';
            out += a.args[i].text;
        }
        out += ')';
    }
    return out;
}

}  // namespace strata::syntax

namespace strata {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& msg)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

ParsedProgram parse_program(std::string_view text) {
    ParsedProgram out;
    auto& kb = out.kb;
    for (const auto& st : syntax::read_statements(text, false)) {
        if (st.kind == syntax::Statement::Kind::Nogood) {
            Nogood ng;
            for (const auto& a : st.nogood) ng.atoms.push_back(kb.intern(a.predicate));
            normalize_literals(ng.atoms);
            out.nogoods.push_back(std::move(ng));
            continue;
        }
        Rule r;
        r.head = kb.intern(st.head.predicate);
        for (const auto& lit : st.body) {
            const AtomId a = kb.intern(lit.atom.predicate);
            (lit.negated ? r.neg : r.pos).push_back(a);
        }
        if (normalize_literals(r.pos) | normalize_literals(r.neg)) {
            out.warnings.push_back({st.line, st.column, "duplicate literal in rule body removed"});
        }
        kb.add_rule(std::move(r));
    }
    return out;
}

KnowledgeBase parse_kb(std::string_view text) { return parse_program(text).kb; }

}  // namespace strata
