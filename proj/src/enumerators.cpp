#include "strata/enumerators.hpp"

#include <algorithm>
#include <iterator>
#include <set>
#include <memory>

#include "strata/detail/parallel.hpp"

namespace strata {
namespace {

void build_csr(std::size_t n, const std::vector<std::pair<AtomId, std::uint32_t>>& pairs,
               std::vector<std::uint32_t>& start, std::vector<std::uint32_t>& items) {
    start.assign(n + 1, 0);
    for (const auto& [a, r] : pairs) ++start[a + 1];
    for (std::size_t i = 0; i < n; ++i) start[i + 1] += start[i];
    items.resize(pairs.size());
    auto fill = start;
    for (const auto& [a, r] : pairs) items[fill[a]++] = r;
}

void check_width(std::size_t bits, const char* what) {
    if (bits > kMaxGuessBits)
        throw CapExceeded(std::string(what) + ": guess width " + std::to_string(bits) + " exceeds " +
                          std::to_string(kMaxGuessBits) + " bits");
}

}  // namespace

WorkingProgram::WorkingProgram(RuleSet rs) : rs_(rs) {
    const std::size_t n = rs.atom_count, nr = rs.rules.size();
    auto occ = std::make_shared<Occurrences>();
    std::vector<std::pair<AtomId, std::uint32_t>> pos, neg, head;
    for (std::uint32_t i = 0; i < nr; ++i) {
        const auto& r = rs.rules[i];
        head.emplace_back(r.head, i);
        for (AtomId a : r.pos) pos.emplace_back(a, i);
        for (AtomId a : r.neg) neg.emplace_back(a, i);
    }
    build_csr(n, pos, occ->pos_start, occ->pos);
    build_csr(n, neg, occ->neg_start, occ->neg);
    build_csr(n, head, occ->head_start, occ->head);
    occ_ = std::move(occ);

    alive_.assign(nr, 1);
    pos_left_.resize(nr);
    neg_left_.resize(nr);
    for (std::size_t i = 0; i < nr; ++i) {
        pos_left_[i] = static_cast<std::uint32_t>(rs.rules[i].pos.size());
        neg_left_[i] = static_cast<std::uint32_t>(rs.rules[i].neg.size());
        note_unit(i);
    }
    done_true_.assign(n, 0);
    done_false_.assign(n, 0);
}

std::vector<Rule> WorkingProgram::remaining() const {
    std::vector<Rule> out;
    for (std::size_t i = 0; i < rs_.rules.size(); ++i) {
        if (!alive_[i]) continue;
        const auto& r = rs_.rules[i];
        Rule copy{r.head, {}, {}};
        for (AtomId a : r.pos)
            if (!done_true_[a]) copy.pos.push_back(a);
        for (AtomId a : r.neg)
            if (!done_false_[a]) copy.neg.push_back(a);
        out.push_back(std::move(copy));
    }
    return out;
}

bool unit_inst(WorkingProgram& kb, PartialInterpretation& m) {
    const auto& occ = *kb.occ_;
    while (!kb.units_.empty()) {
        const auto ri = kb.units_.back();
        kb.units_.pop_back();
        if (!kb.is_unit(ri)) continue;
        const AtomId p = kb.rs_.rules[ri].head;
        if (m[p] == Truth::False) return false;
        m.set(p, Truth::True);
        if (kb.done_true_[p]) continue;
        kb.done_true_[p] = 1;
        for (auto k = occ.pos_start[p]; k < occ.pos_start[p + 1]; ++k) {
            const auto r = occ.pos[k];
            if (!kb.alive(r)) continue;
            --kb.pos_left_[r];
            kb.note_unit(r);
        }
        for (auto k = occ.head_start[p]; k < occ.head_start[p + 1]; ++k) kb.kill(occ.head[k]);
        for (auto k = occ.neg_start[p]; k < occ.neg_start[p + 1]; ++k) kb.kill(occ.neg[k]);
    }
    return true;
}

bool neg_unit_inst(WorkingProgram& kb, std::span<const AtomId> neg, PartialInterpretation& m) {
    const auto& occ = *kb.occ_;
    for (AtomId p : neg) {
        if (m[p] == Truth::True) return false;
        m.set(p, Truth::False);
        if (p >= kb.atom_count() || kb.done_false_[p]) continue;
        kb.done_false_[p] = 1;
        for (auto k = occ.pos_start[p]; k < occ.pos_start[p + 1]; ++k) kb.kill(occ.pos[k]);
        for (auto k = occ.neg_start[p]; k < occ.neg_start[p + 1]; ++k) {
            const auto r = occ.neg[k];
            if (!kb.alive(r)) continue;
            --kb.neg_left_[r];
            kb.note_unit(r);
        }
    }
    return unit_inst(kb, m);
}

std::vector<AtomId> negated_atoms(RuleSet rs) {
    std::vector<AtomId> h;
    for (const auto& r : rs.rules) h.insert(h.end(), r.neg.begin(), r.neg.end());
    normalize_literals(h);
    return h;
}

std::vector<std::size_t> non_horn_rules(RuleSet rs) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < rs.rules.size(); ++i)
        if (!rs.rules[i].is_horn()) out.push_back(i);
    return out;
}

namespace {
ModelSet full_domain(std::size_t n) {
    ModelSet ms;
    ms.domain.resize(n);
    for (AtomId a = 0; a < n; ++a) ms.domain[a] = a;
    return ms;
}
}  // namespace

ModelSet all_stable1(RuleSet rs, ExecPolicy policy) {
    const std::size_t n = rs.atom_count;
    const auto h = negated_atoms(rs);
    check_width(h.size(), "all_stable1");
    auto kernel = [&](std::uint64_t bits, std::vector<PartialInterpretation>& out) {
        std::vector<bool> guess(n, false);
        for (std::size_t i = 0; i < h.size(); ++i) guess[h[i]] = (bits >> i) & 1U;
        const auto lm = reduct_least_model(rs, guess);
        // The guess must reproduce itself on H: true guesses derived,
        // false guesses not derived.
        for (AtomId p : h)
            if (lm[p] != guess[p]) return;
        PartialInterpretation m(n, Truth::False);
        for (AtomId a = 0; a < n; ++a)
            if (lm[a]) m.set(a, Truth::True);
        out.push_back(std::move(m));
    };
    auto ms = full_domain(n);
    ms.models = detail::collect_indexed<PartialInterpretation>(std::uint64_t{1} << h.size(), policy.parallel, kernel);
    ms.canonicalize();
    return ms;
}

// Distinct Neg sets over all subsets of Delta. Subsets with the same union of
// negated atoms run the same propagation, so one run per union suffices.
std::vector<std::vector<AtomId>> neg_unions(RuleSet rs, const std::vector<std::size_t>& delta) {
    std::set<std::vector<AtomId>> seen{{}};
    std::vector<std::vector<AtomId>> family{{}};
    for (auto r : delta) {
        const auto& lits = rs.rules[r].neg;
        const auto count = family.size();
        for (std::size_t i = 0; i < count; ++i) {
            std::vector<AtomId> u;
            std::set_union(family[i].begin(), family[i].end(), lits.begin(), lits.end(), std::back_inserter(u));
            if (seen.insert(u).second) family.push_back(std::move(u));
        }
    }
    return family;
}

ModelSet all_stable2(RuleSet rs, ExecPolicy policy) {
    const std::size_t n = rs.atom_count;
    const auto delta = non_horn_rules(rs);
    check_width(std::min(delta.size(), negated_atoms(rs).size()), "all_stable2");
    const auto unions = neg_unions(rs, delta);
    const WorkingProgram pristine(rs);
    auto kernel = [&](std::uint64_t i, std::vector<PartialInterpretation>& out) {
        WorkingProgram work = pristine;
        PartialInterpretation m(n);
        if (!neg_unit_inst(work, unions[i], m)) return;
        for (AtomId a = 0; a < n; ++a)
            if (m[a] == Truth::Unknown) m.set(a, Truth::False);
        for (const auto& r : rs.rules)
            if (!satisfies_rule(m, r)) return;
        out.push_back(std::move(m));
    };
    auto ms = full_domain(n);
    ms.models = detail::collect_indexed<PartialInterpretation>(unions.size(), policy.parallel, kernel);
    ms.canonicalize();
    return ms;
}

std::string_view engine_name(Engine e) {
    switch (e) {
        case Engine::Auto: return "auto";
        case Engine::AllStable1: return "as1";
        case Engine::AllStable2: return "as2";
        case Engine::Brute: return "brute";
    }
    return "auto";
}

Engine parse_engine(std::string_view name) {
    if (name == "auto") return Engine::Auto;
    if (name == "as1") return Engine::AllStable1;
    if (name == "as2") return Engine::AllStable2;
    if (name == "brute") return Engine::Brute;
    throw std::invalid_argument("unknown engine '" + std::string(name) + "'");
}

Engine choose_engine(std::uint32_t k, std::uint32_t c) { return k < c ? Engine::AllStable1 : Engine::AllStable2; }

ModelSet enumerate_stable(RuleSet rs, Engine engine, ExecPolicy policy, std::size_t brute_cap) {
    if (engine == Engine::Auto) {
        const auto k = static_cast<std::uint32_t>(negated_atoms(rs).size());
        const auto c = static_cast<std::uint32_t>(non_horn_rules(rs).size());
        engine = choose_engine(k, c);
    }
    switch (engine) {
        case Engine::AllStable1: return all_stable1(rs, policy);
        case Engine::Brute: return brute_force_stable_models(rs, brute_cap, policy);
        default: return all_stable2(rs, policy);
    }
}

}  // namespace strata
