#pragma once

// Function-free first-order programs: parsing, safety, Herbrand grounding,
// the predicate dependency graph, and component-wise solving that grounds
// one component at a time.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "strata/aas.hpp"
#include "strata/graphs.hpp"
#include "strata/kb.hpp"
#include "strata/model_set.hpp"

namespace strata::fo {

struct Term {
    std::uint32_t id = 0;  // variable index within its rule, or constant id
    bool variable = false;
    friend bool operator==(const Term&, const Term&) = default;
};

struct Atom {
    std::uint32_t predicate = 0;
    std::vector<Term> args;
    friend bool operator==(const Atom&, const Atom&) = default;
};

struct FoRule {
    Atom head;
    std::vector<Atom> pos;
    std::vector<Atom> neg;
    std::vector<std::string> variables;  // names, indexed by Term::id
};

struct Program {
    std::vector<std::string> predicates;
    std::vector<std::size_t> arity;
    std::vector<std::string> constants;  // Herbrand universe, first-appearance order
    std::vector<FoRule> rules;
    std::vector<std::vector<Atom>> nogoods;  // ground atoms only

    bool is_ground() const;
    std::string atom_name(const Atom& a, const std::vector<std::uint32_t>* binding = nullptr) const;
    std::string render_rule(const FoRule& r) const;
};

/// Parses the rule language extended with `name(term, ...)` atoms. Variables
/// start with an uppercase letter or '_'. Throws ParseError, including for a
/// predicate used with two arities.
Program parse_program(std::string_view text);

struct SafetyViolation {
    std::size_t rule = 0;
    std::string variable;
};

/// Every variable of the head and of negative atoms must occur in a positive
/// body atom.
std::vector<SafetyViolation> check_safe(const Program& p);

class UnsafeProgram : public std::runtime_error {
public:
    explicit UnsafeProgram(std::vector<SafetyViolation> v);
    const std::vector<SafetyViolation>& violations() const { return violations_; }

private:
    std::vector<SafetyViolation> violations_;
};

struct GroundOptions {
    /// Instantiate only substitutions whose positive body atoms are possibly
    /// derivable (a positive-part fixpoint) instead of every substitution.
    bool guided = false;
};

/// Propositional image: every ground instance of every rule, atoms named
/// `p(c1,c2)` and interned in instance order.
KnowledgeBase ground(const Program& p, GroundOptions opts = {});

/// Number of naive ground instances of one rule: |constants|^|variables|.
std::uint64_t instance_count(const Program& p, const FoRule& r);

/// Predicate-level signed dependency graph; node ids are predicate ids.
DependencyGraph predicate_graph(const Program& p);

struct FaasOptions {
    AasOptions aas{};
    GroundOptions grounding{};
};

struct FaasNodeStats {
    std::vector<std::string> predicates;
    std::size_t candidates = 0;
    std::size_t models = 0;
    std::size_t ground_rules = 0;        // summed over candidates
    std::size_t foreign_atoms = 0;       // ground atoms outside A_s's predicates (must stay 0)
    bool stratified_fragment = false;
};

struct FaasResult {
    AtomTable atoms;  // ground atoms that were ever true or referenced
    ModelSet models;  // total over `atoms`
    std::vector<FaasNodeStats> nodes;
};

/// Walks the predicate super graph bottom-up; at each node grounds the
/// node's rules plus the true atoms of the children's model as facts and
/// solves that fragment. Throws UnsafeProgram.
FaasResult faas_solve(const Program& p, const FaasOptions& opts = {});

/// Sorted true-atom names of each model, sorted.
std::vector<std::vector<std::string>> model_names(const FaasResult& r);

}  // namespace strata::fo
