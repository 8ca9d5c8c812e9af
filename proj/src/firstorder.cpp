#include "strata/firstorder.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "strata/detail/component_engine.hpp"
#include "syntax.hpp"

namespace strata::fo {

bool Program::is_ground() const {
    return std::all_of(rules.begin(), rules.end(), [](const FoRule& r) { return r.variables.empty(); });
}

std::string Program::atom_name(const Atom& a, const std::vector<std::uint32_t>* binding) const {
    std::string out = predicates[a.predicate];
    if (a.args.empty()) return out;
    out += '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) out += ',';
        const auto& t = a.args[i];
        out += constants[t.variable ? (*binding)[t.id] : t.id];
    }
    return out + ')';
}

std::string Program::render_rule(const FoRule& r) const {
    auto atom_text = [&](const Atom& a) {
        std::string out = predicates[a.predicate];
        if (a.args.empty()) return out;
        out += '(';
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (i) out += ',';
            out += a.args[i].variable ? r.variables[a.args[i].id] : constants[a.args[i].id];
        }
        return out + ')';
    };
    std::string out = atom_text(r.head);
    if (!r.pos.empty() || !r.neg.empty()) {
        out += " :- ";
        bool first = true;
        for (const auto& a : r.pos) {
            if (!first) out += ", ";
            out += atom_text(a);
            first = false;
        }
        for (const auto& a : r.neg) {
            if (!first) out += ", ";
            out += "not " + atom_text(a);
            first = false;
        }
    }
    return out + '.';
}

Program parse_program(std::string_view text) {
    Program p;
    std::unordered_map<std::string, std::uint32_t> preds, consts;

    auto predicate = [&](const syntax::Atom& a) {
        auto [it, fresh] = preds.try_emplace(a.predicate, static_cast<std::uint32_t>(p.predicates.size()));
        if (fresh) {
            p.predicates.push_back(a.predicate);
            p.arity.push_back(a.args.size());
        } else if (p.arity[it->second] != a.args.size()) {
            throw ParseError(a.line, a.column,
                             "predicate '" + a.predicate + "' used with arity " + std::to_string(a.args.size()) +
                                 " and " + std::to_string(p.arity[it->second]));
        }
        return it->second;
    };
    auto constant = [&](const std::string& c) {
        auto [it, fresh] = consts.try_emplace(c, static_cast<std::uint32_t>(p.constants.size()));
        if (fresh) p.constants.push_back(c);
        return it->second;
    };

    for (const auto& st : syntax::read_statements(text, true)) {
        if (st.kind == syntax::Statement::Kind::Nogood) {
            std::vector<Atom> ng;
            for (const auto& a : st.nogood) {
                Atom out{predicate(a), {}};
                for (const auto& t : a.args) {
                    if (t.variable) throw ParseError(a.line, a.column, "#nogood atoms must be ground");
                    out.args.push_back({constant(t.text), false});
                }
                ng.push_back(std::move(out));
            }
            p.nogoods.push_back(std::move(ng));
            continue;
        }
        FoRule r;
        std::unordered_map<std::string, std::uint32_t> vars;
        auto convert = [&](const syntax::Atom& a) {
            Atom out{predicate(a), {}};
            for (const auto& t : a.args) {
                if (t.variable) {
                    auto [it, fresh] = vars.try_emplace(t.text, static_cast<std::uint32_t>(r.variables.size()));
                    if (fresh) r.variables.push_back(t.text);
                    out.args.push_back({it->second, true});
                } else {
                    out.args.push_back({constant(t.text), false});
                }
            }
            return out;
        };
        r.head = convert(st.head);
        for (const auto& lit : st.body) (lit.negated ? r.neg : r.pos).push_back(convert(lit.atom));
        p.rules.push_back(std::move(r));
    }
    return p;
}

std::vector<SafetyViolation> check_safe(const Program& p) {
    std::vector<SafetyViolation> out;
    for (std::size_t i = 0; i < p.rules.size(); ++i) {
        const auto& r = p.rules[i];
        std::vector<bool> bound(r.variables.size(), false);
        for (const auto& a : r.pos)
            for (const auto& t : a.args)
                if (t.variable) bound[t.id] = true;
        std::vector<bool> reported(r.variables.size(), false);
        auto check = [&](const Atom& a) {
            for (const auto& t : a.args)
                if (t.variable && !bound[t.id] && !reported[t.id]) {
                    reported[t.id] = true;
                    out.push_back({i, r.variables[t.id]});
                }
        };
        check(r.head);
        for (const auto& a : r.neg) check(a);
    }
    return out;
}

namespace {
std::string describe(const std::vector<SafetyViolation>& v) {
    std::string out = "unsafe program:";
    for (const auto& x : v) out += " rule " + std::to_string(x.rule + 1) + " variable " + x.variable + ";";
    return out;
}
}  // namespace

UnsafeProgram::UnsafeProgram(std::vector<SafetyViolation> v)
    : std::runtime_error(describe(v)), violations_(std::move(v)) {}

std::uint64_t instance_count(const Program& p, const FoRule& r) {
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < r.variables.size(); ++i) n *= p.constants.size();
    return n;
}

namespace {

struct Grounded {
    KnowledgeBase kb;
    std::vector<Atom> atoms;  // ground structure per kb atom id
};

class GroundBuilder {
public:
    explicit GroundBuilder(const Program& p) : p_(p) {}

    AtomId intern(const Atom& a, const std::vector<std::uint32_t>& binding) {
        const auto name = p_.atom_name(a, &binding);
        const auto before = out_.kb.atom_count();
        const auto id = out_.kb.intern(name);
        if (id == before) {
            Atom g{a.predicate, {}};
            for (const auto& t : a.args) g.args.push_back({t.variable ? binding[t.id] : t.id, false});
            out_.atoms.push_back(std::move(g));
        }
        return id;
    }

    void emit(const FoRule& r, const std::vector<std::uint32_t>& binding) {
        Rule g;
        g.head = intern(r.head, binding);
        for (const auto& a : r.pos) g.pos.push_back(intern(a, binding));
        for (const auto& a : r.neg) g.neg.push_back(intern(a, binding));
        out_.kb.add_rule(std::move(g));
    }

    Grounded take() { return std::move(out_); }

private:
    const Program& p_;
    Grounded out_;
};

void ground_naive(const Program& p, GroundBuilder& b) {
    const auto nc = static_cast<std::uint32_t>(p.constants.size());
    for (const auto& r : p.rules) {
        const auto nv = r.variables.size();
        if (nv > 0 && nc == 0) continue;
        std::vector<std::uint32_t> binding(nv, 0);
        while (true) {
            b.emit(r, binding);
            std::size_t i = nv;
            while (i > 0 && ++binding[i - 1] == nc) binding[--i] = 0;
            if (i == 0) break;
        }
    }
}

// Possibly-derivable atoms indexed by predicate, for join-based instantiation.
class FactIndex {
public:
    explicit FactIndex(std::size_t predicates) : by_pred_(predicates) {}

    bool add(std::uint32_t pred, std::vector<std::uint32_t> tuple) {
        std::string key = std::to_string(pred);
        for (auto c : tuple) key += "," + std::to_string(c);
        if (!seen_.insert(std::move(key)).second) return false;
        by_pred_[pred].push_back(std::move(tuple));
        return true;
    }
    const std::vector<std::vector<std::uint32_t>>& of(std::uint32_t pred) const { return by_pred_[pred]; }

private:
    std::vector<std::vector<std::vector<std::uint32_t>>> by_pred_;
    std::unordered_set<std::string> seen_;
};

constexpr std::uint32_t kUnbound = UINT32_MAX;

// Calls f(binding) for every binding that maps each positive atom onto a
// fact; all variables are bound afterwards when the rule is safe.
template <class F>
void for_each_match(const FoRule& r, const FactIndex& facts, std::size_t i, std::vector<std::uint32_t>& binding,
                    F&& f) {
    if (i == r.pos.size()) {
        f(binding);
        return;
    }
    const auto& atom = r.pos[i];
    // Snapshot: `f` may not add facts while we iterate.
    const auto& tuples = facts.of(atom.predicate);
    const auto count = tuples.size();
    for (std::size_t k = 0; k < count; ++k) {
        const auto& tuple = tuples[k];
        std::vector<std::uint32_t> newly;
        bool ok = true;
        for (std::size_t j = 0; j < atom.args.size() && ok; ++j) {
            const auto& t = atom.args[j];
            if (!t.variable) {
                ok = t.id == tuple[j];
            } else if (binding[t.id] == kUnbound) {
                binding[t.id] = tuple[j];
                newly.push_back(t.id);
            } else {
                ok = binding[t.id] == tuple[j];
            }
        }
        if (ok) for_each_match(r, facts, i + 1, binding, f);
        for (auto v : newly) binding[v] = kUnbound;
    }
}

std::vector<std::uint32_t> head_tuple(const Atom& a, const std::vector<std::uint32_t>& binding) {
    std::vector<std::uint32_t> t;
    for (const auto& x : a.args) t.push_back(x.variable ? binding[x.id] : x.id);
    return t;
}

void ground_guided(const Program& p, GroundBuilder& b) {
    if (auto v = check_safe(p); !v.empty()) throw UnsafeProgram(std::move(v));
    FactIndex facts(p.predicates.size());
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : p.rules) {
            std::vector<std::vector<std::uint32_t>> heads;
            std::vector<std::uint32_t> binding(r.variables.size(), kUnbound);
            for_each_match(r, facts, 0, binding, [&](const auto& bnd) { heads.push_back(head_tuple(r.head, bnd)); });
            for (auto& h : heads) changed |= facts.add(r.head.predicate, std::move(h));
        }
    }
    for (const auto& r : p.rules) {
        std::vector<std::uint32_t> binding(r.variables.size(), kUnbound);
        for_each_match(r, facts, 0, binding, [&](const auto& bnd) { b.emit(r, bnd); });
    }
}

Grounded ground_full(const Program& p, GroundOptions opts) {
    GroundBuilder b(p);
    if (opts.guided)
        ground_guided(p, b);
    else
        ground_naive(p, b);
    return b.take();
}

}  // namespace

KnowledgeBase ground(const Program& p, GroundOptions opts) { return ground_full(p, opts).kb; }

DependencyGraph predicate_graph(const Program& p) {
    DependencyGraph g;
    g.node_count = p.predicates.size();
    g.names = p.predicates;
    for (const auto& r : p.rules) {
        for (const auto& a : r.pos) g.edges.push_back({a.predicate, r.head.predicate, Sign::Positive});
        for (const auto& a : r.neg) g.edges.push_back({a.predicate, r.head.predicate, Sign::Negative});
    }
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    return g;
}

FaasResult faas_solve(const Program& p, const FaasOptions& opts) {
    if (auto v = check_safe(p); !v.empty()) throw UnsafeProgram(std::move(v));

    auto sg = scc_condense(predicate_graph(p));
    for (std::size_t i = 0; i < p.rules.size(); ++i) sg.nodes[sg.component_of[p.rules[i].head.predicate]].rules.push_back(i);

    detail::TraversalGraph tg;
    tg.children.resize(sg.size());
    tg.members.resize(sg.size());
    for (std::size_t i = 0; i < sg.size(); ++i) tg.children[i] = sg.nodes[i].children;

    FaasResult result;
    result.nodes.resize(sg.size());
    std::vector<Atom> structure;  // per global ground atom
    std::vector<std::vector<bool>> rooted_preds(sg.size());

    detail::TraversalHooks hooks;
    hooks.evaluate = [&](std::uint32_t v, const detail::ModelView& view) {
        auto& stats = result.nodes[v];
        if (rooted_preds[v].empty()) {
            rooted_preds[v].assign(p.predicates.size(), false);
            for (auto pr : sg.rooted_members(v)) rooted_preds[v][pr] = true;
        }
        Program fragment;
        fragment.predicates = p.predicates;
        fragment.arity = p.arity;
        fragment.constants = p.constants;
        for (auto ri : sg.nodes[v].rules) fragment.rules.push_back(p.rules[ri]);
        for (auto c : sg.nodes[v].children)
            for (auto g : view.local_of(c)) fragment.rules.push_back(FoRule{structure[g], {}, {}, {}});

        const auto grounded = ground_full(fragment, opts.grounding);
        stats.ground_rules += grounded.kb.rules().size();
        for (const auto& a : grounded.atoms)
            if (!rooted_preds[v][a.predicate]) ++stats.foreign_atoms;

        const auto solved = aas_solve(grounded.kb, {}, opts.aas);
        stats.stratified_fragment = solved.omega.t_pi == 1;
        std::vector<detail::LocalModel> out;
        for (const auto& m : solved.models) {
            detail::LocalModel local;
            for (AtomId a : m.true_atoms()) {
                const auto& ga = grounded.atoms[a];
                if (sg.component_of[ga.predicate] != v) continue;
                const auto before = result.atoms.size();
                const auto id = result.atoms.intern(grounded.kb.atoms().name(a));
                if (id == before) structure.push_back(ga);
                local.push_back(id);
            }
            std::sort(local.begin(), local.end());
            out.push_back(std::move(local));
        }
        return out;
    };

    detail::ModelStore store;
    const auto tr = detail::traverse(tg, store, hooks, false);
    for (std::uint32_t i = 0; i < sg.size(); ++i) {
        auto& st = result.nodes[i];
        for (auto pr : sg.nodes[i].members) st.predicates.push_back(p.predicates[pr]);
        st.candidates = tr.nodes[i].candidates;
        if (tr.slot_of[i] != UINT32_MAX) st.models = store[tr.slot_of[i]].models.size();
    }

    std::vector<std::vector<AtomId>> trues;
    if (!tr.empty) {
        std::vector<std::uint32_t> every(sg.size());
        for (std::uint32_t i = 0; i < sg.size(); ++i) every[i] = i;
        for (const auto& choice : detail::product_of(sg.sinks(), store, tr.slot_of)) {
            const detail::ModelView view(store, tg, tr.slot_of, choice);
            auto t = detail::expand(view, every, tg);
            const bool violates = std::any_of(p.nogoods.begin(), p.nogoods.end(), [&](const std::vector<Atom>& ng) {
                return std::all_of(ng.begin(), ng.end(), [&](const Atom& a) {
                    auto id = result.atoms.find(p.atom_name(a));
                    return id && std::binary_search(t.begin(), t.end(), *id);
                });
            });
            if (!violates) trues.push_back(std::move(t));
        }
    }
    result.models = ModelSet::from_true_sets(result.atoms.size(), trues);
    return result;
}

std::vector<std::vector<std::string>> model_names(const FaasResult& r) { return true_names(r.models, r.atoms); }

}  // namespace strata::fo
