#pragma once

// Core data model: interned atoms, normal rules, knowledge bases and
// three-valued interpretations.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace strata {

using AtomId = std::uint32_t;

/// A normal rule `head :- pos..., not neg...`. Bodies are duplicate-free.
struct Rule {
    AtomId head = 0;
    std::vector<AtomId> pos;
    std::vector<AtomId> neg;

    bool is_unit() const { return pos.empty() && neg.empty(); }
    bool is_horn() const { return neg.empty(); }
    std::size_t length() const { return 1 + pos.size() + neg.size(); }

    friend bool operator==(const Rule&, const Rule&) = default;
};

/// Non-owning view of a rule set over atoms 0..atom_count-1. The enumerators
/// run on views so per-component programs do not need their own symbol table.
struct RuleSet {
    std::size_t atom_count = 0;
    std::span<const Rule> rules;
};

/// Bijective name <-> dense id table; ids are assigned in first-intern order.
class AtomTable {
public:
    AtomId intern(std::string_view name);
    std::optional<AtomId> find(std::string_view name) const;
    const std::string& name(AtomId id) const { return names_.at(id); }
    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }

    friend bool operator==(const AtomTable& a, const AtomTable& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, AtomId> ids_;
};

class KnowledgeBase {
public:
    KnowledgeBase() = default;
    KnowledgeBase(AtomTable atoms, std::vector<Rule> rules);

    const AtomTable& atoms() const { return atoms_; }
    AtomTable& atoms() { return atoms_; }
    const std::vector<Rule>& rules() const { return rules_; }

    /// Appends a rule; every referenced atom must already be interned.
    void add_rule(Rule r);
    AtomId intern(std::string_view name) { return atoms_.intern(name); }

    std::size_t atom_count() const { return atoms_.size(); }
    /// Total literal occurrences (heads included).
    std::size_t length() const;
    RuleSet view() const { return {atoms_.size(), rules_}; }

    friend bool operator==(const KnowledgeBase&, const KnowledgeBase&) = default;

private:
    AtomTable atoms_;
    std::vector<Rule> rules_;
};

enum class Truth : std::uint8_t { False = 0, True = 1, Unknown = 2 };

/// Three-valued assignment over atom ids. Atoms past size() are unknown.
class PartialInterpretation {
public:
    PartialInterpretation() = default;
    explicit PartialInterpretation(std::size_t n, Truth init = Truth::Unknown) : values_(n, init) {}

    Truth operator[](AtomId a) const { return a < values_.size() ? values_[a] : Truth::Unknown; }
    void set(AtomId a, Truth t);
    std::size_t size() const { return values_.size(); }

    bool is_true(AtomId a) const { return (*this)[a] == Truth::True; }
    bool is_false(AtomId a) const { return (*this)[a] == Truth::False; }
    bool is_total_over(std::span<const AtomId> atoms) const;
    /// Total over every atom id below size().
    bool is_total() const;
    std::vector<AtomId> true_atoms() const;
    std::vector<AtomId> domain() const;

    /// Builds a total interpretation over 0..n-1 from its true set.
    static PartialInterpretation from_true_set(std::size_t n, std::span<const AtomId> trues);

    const std::vector<Truth>& values() const { return values_; }

    friend bool operator==(const PartialInterpretation&, const PartialInterpretation&) = default;
    friend auto operator<=>(const PartialInterpretation& a, const PartialInterpretation& b) {
        return a.values_ <=> b.values_;
    }

private:
    std::vector<Truth> values_;
};

struct Conflict {
    AtomId atom;
    friend bool operator==(const Conflict&, const Conflict&) = default;
};

/// I + J: the union of two interpretations, or the first atom (by id) on
/// which they disagree.
std::variant<PartialInterpretation, Conflict> combine(const PartialInterpretation& i,
                                                      const PartialInterpretation& j);
bool consistent(const PartialInterpretation& i, const PartialInterpretation& j);

/// Membership view over a set of atoms given as a boolean mask or a
/// PartialInterpretation's true part.
bool satisfies_body(const std::vector<bool>& s, const Rule& r);
bool satisfies_rule(const std::vector<bool>& s, const Rule& r);
bool satisfies_body(const PartialInterpretation& s, const Rule& r);
bool satisfies_rule(const PartialInterpretation& s, const Rule& r);

std::vector<bool> to_mask(std::size_t n, std::span<const AtomId> atoms);

// ---------------------------------------------------------------------------
// Text front end

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& msg);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

struct Diagnostic {
    std::size_t line = 0;
    std::size_t column = 0;
    std::string message;
};

struct Nogood {
    std::vector<AtomId> atoms;  // sorted, nonempty
    friend bool operator==(const Nogood&, const Nogood&) = default;
};

struct ParsedProgram {
    KnowledgeBase kb;
    std::vector<Nogood> nogoods;
    std::vector<Diagnostic> warnings;
};

/// Parses the propositional rule language (rules and `#nogood` statements).
ParsedProgram parse_program(std::string_view text);
KnowledgeBase parse_kb(std::string_view text);

/// Canonical text: rules in stored order, positive literals before negative,
/// each group by atom id.
std::string render(const KnowledgeBase& kb);
std::string render_rule(const AtomTable& atoms, const Rule& r);

/// Sorts and deduplicates a literal list; returns true if duplicates existed.
bool normalize_literals(std::vector<AtomId>& lits);

}  // namespace strata
