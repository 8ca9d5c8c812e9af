#include "strata/generate.hpp"

#include <algorithm>
#include <string>

namespace strata::gen {

namespace {

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {  // inclusive
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

}  // namespace

KnowledgeBase mixed_program(Rng& rng, const MixedParams& p) {
    KnowledgeBase kb;
    for (std::size_t i = 0; i < p.atoms; ++i) kb.intern("p" + std::to_string(i));
    if (p.atoms == 0) return kb;
    for (std::size_t r = 0; r < p.rules; ++r) {
        Rule rule;
        rule.head = static_cast<AtomId>(pick(rng, 0, p.atoms - 1));
        if (!coin(rng, p.facts)) {
            const auto body = pick(rng, 1, std::max<std::size_t>(1, p.max_body));
            for (std::size_t b = 0; b < body; ++b) {
                const auto a = static_cast<AtomId>(pick(rng, 0, p.atoms - 1));
                (coin(rng, p.negative) ? rule.neg : rule.pos).push_back(a);
            }
        }
        normalize_literals(rule.pos);
        normalize_literals(rule.neg);
        kb.add_rule(std::move(rule));
    }
    return kb;
}

MixedParams draw_params(Rng& rng, std::size_t max_atoms, std::size_t max_rules) {
    MixedParams p;
    p.atoms = pick(rng, 1, max_atoms);
    p.rules = pick(rng, 0, max_rules);
    p.max_body = pick(rng, 1, 4);
    p.negative = std::uniform_real_distribution<double>(0.0, 0.8)(rng);
    p.facts = std::uniform_real_distribution<double>(0.0, 0.3)(rng);
    return p;
}

KnowledgeBase layered_program(Rng& rng, const LayeredParams& p) {
    KnowledgeBase kb;
    for (std::size_t i = 0; i < p.atoms; ++i) kb.intern("a" + std::to_string(i));
    const auto w = std::max<std::size_t>(1, p.layer_width);
    // literals reach back at most a few layers so bodies stay local
    const auto window = 3 * w;
    for (std::size_t i = 0; i < p.atoms; ++i) {
        const auto layer_start = i / w * w;
        const auto layer_end = std::min(p.atoms, layer_start + w);
        const auto lo = layer_start > window ? layer_start - window : 0;
        if (layer_start == 0 && coin(rng, 0.5)) {
            kb.add_rule(Rule{static_cast<AtomId>(i), {}, {}});
            continue;
        }
        const auto count = pick(rng, 1, std::max<std::size_t>(1, p.rules_per_atom));
        for (std::size_t r = 0; r < count; ++r) {
            Rule rule{static_cast<AtomId>(i), {}, {}};
            const auto body = pick(rng, 0, p.max_body);
            for (std::size_t b = 0; b < body; ++b) {
                if (layer_start > 0 && coin(rng, p.negative))
                    rule.neg.push_back(static_cast<AtomId>(pick(rng, lo, layer_start - 1)));
                else
                    rule.pos.push_back(static_cast<AtomId>(pick(rng, lo, layer_end - 1)));
            }
            normalize_literals(rule.pos);
            normalize_literals(rule.neg);
            kb.add_rule(std::move(rule));
        }
    }
    return kb;
}

std::vector<Nogood> random_nogoods(Rng& rng, std::size_t atoms, std::size_t count, std::size_t max_size) {
    std::vector<Nogood> out;
    if (atoms == 0) return out;
    for (std::size_t i = 0; i < count; ++i) {
        Nogood ng;
        const auto size = pick(rng, 1, std::max<std::size_t>(1, max_size));
        for (std::size_t k = 0; k < size; ++k) ng.atoms.push_back(static_cast<AtomId>(pick(rng, 0, atoms - 1)));
        normalize_literals(ng.atoms);
        out.push_back(std::move(ng));
    }
    return out;
}

fo::Program fo_program(Rng& rng, const FoParams& p) {
    fo::Program prog;
    const auto nc = std::max<std::size_t>(1, p.constants);
    for (std::size_t c = 0; c < nc; ++c) prog.constants.push_back("c" + std::to_string(c));

    std::size_t base = 0;
    for (std::size_t tries = 0; tries < 12 && prog.predicates.size() < 6; ++tries) {
        const auto arity = pick(rng, 0, 2);
        std::size_t size = 1;
        for (std::size_t k = 0; k < arity; ++k) size *= nc;
        if (base + size > p.max_herbrand) continue;
        base += size;
        prog.predicates.push_back("q" + std::to_string(prog.predicates.size()));
        prog.arity.push_back(arity);
    }
    if (prog.predicates.empty()) {
        prog.predicates.push_back("q0");
        prog.arity.push_back(0);
    }
    const auto np = prog.predicates.size();

    auto constant = [&] { return fo::Term{static_cast<std::uint32_t>(pick(rng, 0, nc - 1)), false}; };
    auto ground_atom = [&] {
        fo::Atom a{static_cast<std::uint32_t>(pick(rng, 0, np - 1)), {}};
        for (std::size_t k = 0; k < prog.arity[a.predicate]; ++k) a.args.push_back(constant());
        return a;
    };

    for (std::size_t f = 0; f < p.facts; ++f) prog.rules.push_back({ground_atom(), {}, {}, {}});

    for (std::size_t r = 0; r < p.rules; ++r) {
        fo::FoRule rule;
        std::vector<bool> bound(2, false);
        const auto npos = pick(rng, 0, 2);
        for (std::size_t k = 0; k < npos; ++k) {
            fo::Atom a{static_cast<std::uint32_t>(pick(rng, 0, np - 1)), {}};
            for (std::size_t j = 0; j < prog.arity[a.predicate]; ++j) {
                if (coin(rng, 0.7)) {
                    const auto v = static_cast<std::uint32_t>(pick(rng, 0, 1));
                    bound[v] = true;
                    a.args.push_back({v, true});
                } else {
                    a.args.push_back(constant());
                }
            }
            rule.pos.push_back(std::move(a));
        }
        std::vector<std::uint32_t> vars;
        for (std::uint32_t v = 0; v < 2; ++v)
            if (bound[v]) vars.push_back(v);
        auto safe_atom = [&] {
            fo::Atom a{static_cast<std::uint32_t>(pick(rng, 0, np - 1)), {}};
            for (std::size_t j = 0; j < prog.arity[a.predicate]; ++j) {
                if (!vars.empty() && coin(rng, 0.7))
                    a.args.push_back({vars[pick(rng, 0, vars.size() - 1)], true});
                else
                    a.args.push_back(constant());
            }
            return a;
        };
        rule.head = safe_atom();
        const auto nneg = pick(rng, 0, 2);
        for (std::size_t k = 0; k < nneg; ++k)
            if (coin(rng, p.negative * 2)) rule.neg.push_back(safe_atom());

        // compact variable ids to those actually used
        std::vector<std::uint32_t> remap(2, UINT32_MAX);
        auto fix = [&](fo::Atom& a) {
            for (auto& t : a.args) {
                if (!t.variable) continue;
                if (remap[t.id] == UINT32_MAX) {
                    remap[t.id] = static_cast<std::uint32_t>(rule.variables.size());
                    rule.variables.push_back(t.id == 0 ? "X" : "Y");
                }
                t.id = remap[t.id];
            }
        };
        for (auto& a : rule.pos) fix(a);
        fix(rule.head);
        for (auto& a : rule.neg) fix(a);
        prog.rules.push_back(std::move(rule));
    }
    return prog;
}

}  // namespace strata::gen
