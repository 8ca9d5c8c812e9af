#pragma once

// Definitional core: GL transform, Horn least models, stability and proof
// checks, and the exhaustive enumeration oracle.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "strata/kb.hpp"
#include "strata/model_set.hpp"

namespace strata {

/// Execution policy for loops over independent candidates. Serial is the
/// reference behaviour; parallel runs the same kernel under OpenMP and merges.
struct ExecPolicy {
    bool parallel = false;
};

/// Drops rules whose negative body meets `m` and strips remaining negative
/// literals. Surviving rules keep source order.
KnowledgeBase gl_transform(const KnowledgeBase& kb, std::span<const AtomId> m);

/// Least model of a Horn rule set, linear in its length. Throws
/// std::invalid_argument on a non-Horn rule.
std::vector<AtomId> horn_minimal_model(RuleSet rs);
inline std::vector<AtomId> horn_minimal_model(const KnowledgeBase& kb) { return horn_minimal_model(kb.view()); }

/// Round-robin fixpoint; quadratic reference for differential tests.
std::vector<AtomId> horn_minimal_model_naive(RuleSet rs);

/// Least model of the GL transform of `rs` w.r.t. `s`, without building the
/// transform. Equals the set of atoms with a proof w.r.t. `s`.
std::vector<bool> reduct_least_model(RuleSet rs, const std::vector<bool>& s);

bool is_stable(const KnowledgeBase& kb, std::span<const AtomId> s);
bool is_stable(RuleSet rs, const std::vector<bool>& s);

/// True iff `p` is derivable with `s` fixed as the negative-literal oracle.
bool has_proof(const KnowledgeBase& kb, std::span<const AtomId> s, AtomId p);

/// Why a candidate set is (not) stable: the first rule it violates in rule
/// order, else the first atom of s (by id) lacking a proof.
struct StabilityVerdict {
    bool stable = false;
    std::optional<std::size_t> unsatisfied_rule;
    std::optional<AtomId> unproved_atom;
};
StabilityVerdict explain_stability(const KnowledgeBase& kb, std::span<const AtomId> s);

class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultBruteForceCap = 20;

/// Checks every subset of the atoms. Throws CapExceeded when the atom count
/// is above `cap`.
ModelSet brute_force_stable_models(RuleSet rs, std::size_t cap = kDefaultBruteForceCap, ExecPolicy policy = {});
inline ModelSet brute_force_stable_models(const KnowledgeBase& kb, std::size_t cap = kDefaultBruteForceCap,
                                          ExecPolicy policy = {}) {
    return brute_force_stable_models(kb.view(), cap, policy);
}

/// Classical-model minimality (used by the property tests).
bool is_model(RuleSet rs, const std::vector<bool>& s);

}  // namespace strata
