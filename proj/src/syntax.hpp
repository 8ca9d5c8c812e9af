#pragma once

// Shared tokenizer and statement reader for the propositional and the
// first-order front ends.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace strata::syntax {

struct Term {
    std::string text;
    bool variable = false;
};

struct Atom {
    std::string predicate;
    std::vector<Term> args;
    bool has_parens = false;
    std::size_t line = 0;
    std::size_t column = 0;
};

struct Literal {
    Atom atom;
    bool negated = false;
};

struct Statement {
    enum class Kind { Rule, Nogood } kind = Kind::Rule;
    Atom head;                   // Rule
    std::vector<Literal> body;   // Rule
    std::vector<Atom> nogood;    // Nogood
    std::size_t line = 0;
    std::size_t column = 0;
};

/// Reads every statement; throws ParseError. With allow_arguments false an
/// atom followed by '(' is rejected.
std::vector<Statement> read_statements(std::string_view text, bool allow_arguments);

std::string atom_text(const Atom& a);

}  // namespace strata::syntax
