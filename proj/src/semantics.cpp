#include "strata/semantics.hpp"

#include <algorithm>

#include "strata/detail/parallel.hpp"

namespace strata {
namespace {

// Worklist fixpoint over the rules admitted by `enabled`; negative bodies
// are the caller's business.
template <class Enabled>
std::vector<bool> least_fixpoint(RuleSet rs, Enabled&& enabled) {
    const std::size_t n = rs.atom_count;
    std::vector<bool> derived(n, false);
    std::vector<std::uint32_t> remaining(rs.rules.size());
    std::vector<std::uint32_t> occ_start(n + 1, 0);
    for (std::size_t i = 0; i < rs.rules.size(); ++i)
        if (enabled(rs.rules[i]))
            for (AtomId a : rs.rules[i].pos) ++occ_start[a + 1];
    for (std::size_t a = 0; a < n; ++a) occ_start[a + 1] += occ_start[a];
    std::vector<std::uint32_t> occ(occ_start[n]);
    std::vector<std::uint32_t> fill(occ_start.begin(), occ_start.end() - 1);

    std::vector<AtomId> queue;
    auto derive = [&](AtomId a) {
        if (!derived[a]) {
            derived[a] = true;
            queue.push_back(a);
        }
    };
    for (std::size_t i = 0; i < rs.rules.size(); ++i) {
        const Rule& r = rs.rules[i];
        if (!enabled(r)) continue;
        remaining[i] = static_cast<std::uint32_t>(r.pos.size());
        for (AtomId a : r.pos) occ[fill[a]++] = static_cast<std::uint32_t>(i);
        if (remaining[i] == 0) derive(r.head);
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const AtomId a = queue[qi];
        for (auto k = occ_start[a]; k < occ_start[a + 1]; ++k) {
            const auto ri = occ[k];
            if (--remaining[ri] == 0) derive(rs.rules[ri].head);
        }
    }
    return derived;
}

std::vector<AtomId> mask_to_atoms(const std::vector<bool>& mask) {
    std::vector<AtomId> out;
    for (AtomId a = 0; a < mask.size(); ++a)
        if (mask[a]) out.push_back(a);
    return out;
}

bool blocked_by(const Rule& r, const std::vector<bool>& s) {
    return std::any_of(r.neg.begin(), r.neg.end(), [&](AtomId a) { return a < s.size() && s[a]; });
}

}  // namespace

KnowledgeBase gl_transform(const KnowledgeBase& kb, std::span<const AtomId> m) {
    const auto s = to_mask(kb.atom_count(), m);
    KnowledgeBase out(kb.atoms(), {});
    for (const auto& r : kb.rules()) {
        if (blocked_by(r, s)) continue;
        out.add_rule(Rule{r.head, r.pos, {}});
    }
    return out;
}

std::vector<AtomId> horn_minimal_model(RuleSet rs) {
    for (const auto& r : rs.rules)
        if (!r.is_horn()) throw std::invalid_argument("horn_minimal_model: rule has a negative literal");
    return mask_to_atoms(least_fixpoint(rs, [](const Rule&) { return true; }));
}

std::vector<AtomId> horn_minimal_model_naive(RuleSet rs) {
    for (const auto& r : rs.rules)
        if (!r.is_horn()) throw std::invalid_argument("horn_minimal_model_naive: rule has a negative literal");
    std::vector<bool> in(rs.atom_count, false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : rs.rules) {
            if (in[r.head]) continue;
            if (std::all_of(r.pos.begin(), r.pos.end(), [&](AtomId a) { return in[a]; })) {
                in[r.head] = true;
                changed = true;
            }
        }
    }
    return mask_to_atoms(in);
}

std::vector<bool> reduct_least_model(RuleSet rs, const std::vector<bool>& s) {
    return least_fixpoint(rs, [&](const Rule& r) { return !blocked_by(r, s); });
}

bool is_stable(RuleSet rs, const std::vector<bool>& s) {
    const auto lm = reduct_least_model(rs, s);
    for (std::size_t a = 0; a < rs.atom_count; ++a)
        if (lm[a] != (a < s.size() && s[a])) return false;
    // Atoms beyond the program cannot be derived.
    for (std::size_t a = rs.atom_count; a < s.size(); ++a)
        if (s[a]) return false;
    return true;
}

bool is_stable(const KnowledgeBase& kb, std::span<const AtomId> s) {
    return is_stable(kb.view(), to_mask(kb.atom_count(), s));
}

bool has_proof(const KnowledgeBase& kb, std::span<const AtomId> s, AtomId p) {
    if (p >= kb.atom_count()) return false;
    return reduct_least_model(kb.view(), to_mask(kb.atom_count(), s))[p];
}

StabilityVerdict explain_stability(const KnowledgeBase& kb, std::span<const AtomId> s) {
    StabilityVerdict v;
    const auto mask = to_mask(kb.atom_count(), s);
    for (std::size_t i = 0; i < kb.rules().size(); ++i) {
        if (!satisfies_rule(mask, kb.rules()[i])) {
            v.unsatisfied_rule = i;
            return v;
        }
    }
    const auto proved = reduct_least_model(kb.view(), mask);
    for (AtomId a = 0; a < mask.size(); ++a) {
        if (mask[a] && (a >= proved.size() || !proved[a])) {
            v.unproved_atom = a;
            return v;
        }
    }
    v.stable = true;
    return v;
}

bool is_model(RuleSet rs, const std::vector<bool>& s) {
    return std::all_of(rs.rules.begin(), rs.rules.end(), [&](const Rule& r) { return satisfies_rule(s, r); });
}

ModelSet brute_force_stable_models(RuleSet rs, std::size_t cap, ExecPolicy policy) {
    const std::size_t n = rs.atom_count;
    if (n > cap || n >= 63)
        throw CapExceeded("brute force enumeration over " + std::to_string(n) + " atoms exceeds cap " +
                          std::to_string(cap));
    const std::uint64_t total = std::uint64_t{1} << n;
    auto kernel = [&](std::uint64_t bits, std::vector<PartialInterpretation>& out) {
        std::vector<bool> s(n);
        for (std::size_t a = 0; a < n; ++a) s[a] = (bits >> a) & 1U;
        if (is_stable(rs, s)) out.push_back(PartialInterpretation::from_true_set(n, mask_to_atoms(s)));
    };
    ModelSet ms;
    ms.domain.resize(n);
    for (AtomId a = 0; a < n; ++a) ms.domain[a] = a;
    ms.models = detail::collect_indexed<PartialInterpretation>(total, policy.parallel, kernel);
    ms.canonicalize();
    return ms;
}

}  // namespace strata
