#include "strata/aas.hpp"

#include <algorithm>
#include <unordered_map>

#include "strata/detail/component_engine.hpp"

namespace strata {
namespace {

// Applies Convert to one rule. Returns false when the rule is deleted.
template <class InS, class IsTrue>
bool convert_rule(const Rule& r, InS&& in_s, IsTrue&& is_true, bool strict, Rule& out) {
    out.head = r.head;
    out.pos.clear();
    out.neg.clear();
    for (AtomId a : r.pos) {
        if (in_s(a)) {
            out.pos.push_back(a);
        } else if (is_true(a)) {
            continue;
        } else if (strict) {
            out.pos.push_back(a);
        } else {
            return false;
        }
    }
    for (AtomId a : r.neg) {
        if (in_s(a)) {
            out.neg.push_back(a);
        } else if (is_true(a)) {
            return false;
        }
    }
    return true;
}

struct Prepared {
    SuperGraph sg;
    OmegaIndex omega;
    detail::TraversalGraph tg;
    std::vector<std::vector<std::size_t>> nogoods_at;  // node -> nogood indices
    std::vector<std::size_t> final_nogoods;
    std::vector<Engine> engine;  // per node
};

// Topologically earliest node whose A_s covers every atom of the nogood.
std::optional<std::uint32_t> nogood_home(const SuperGraph& sg, const Nogood& ng) {
    std::vector<std::uint32_t> common;
    bool first = true;
    for (AtomId a : ng.atoms) {
        auto reach = sg.reachable_from(sg.component_of[a]);
        if (first) {
            common = std::move(reach);
            first = false;
        } else {
            std::vector<std::uint32_t> both;
            std::set_intersection(common.begin(), common.end(), reach.begin(), reach.end(), std::back_inserter(both));
            common = std::move(both);
        }
        if (common.empty()) return std::nullopt;
    }
    if (common.empty()) return std::nullopt;
    return common.front();
}

Prepared prepare(const KnowledgeBase& kb, std::span<const Nogood> nogoods, const AasOptions& opts) {
    Prepared p;
    p.sg = build_super_graph(kb);
    p.omega = omega_index(kb, p.sg, opts.omega_cap);
    const auto n = p.sg.size();
    p.tg.children.resize(n);
    p.tg.members.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        p.tg.children[i] = p.sg.nodes[i].children;
        p.tg.members[i] = p.sg.nodes[i].members;
    }
    p.tg.node_of = p.sg.component_of;
    p.nogoods_at.resize(n);
    for (std::size_t i = 0; i < nogoods.size(); ++i) {
        if (nogoods[i].atoms.empty()) continue;
        if (auto home = nogood_home(p.sg, nogoods[i]))
            p.nogoods_at[*home].push_back(i);
        else
            p.final_nogoods.push_back(i);
    }
    p.engine.resize(n);
    for (std::uint32_t i = 0; i < n; ++i)
        p.engine[i] = opts.engine == Engine::Auto ? choose_engine(p.omega.nodes[i].k, p.omega.nodes[i].c) : opts.engine;
    return p;
}

// Stable models of Pi_{s,m} for node v, restricted to the atoms of s.
template <class IsTrue>
std::vector<detail::LocalModel> local_models(const KnowledgeBase& kb, const Prepared& p, std::uint32_t v,
                                             IsTrue&& is_true, const AasOptions& opts) {
    const auto& node = p.sg.nodes[v];
    const auto& members = node.members;
    const auto in_s = [&](AtomId a) { return p.sg.component_of[a] == v; };

    std::vector<AtomId> extra;  // child atoms kept by strict Convert
    auto local_id = [&](AtomId a) -> AtomId {
        auto it = std::lower_bound(members.begin(), members.end(), a);
        if (it != members.end() && *it == a) return static_cast<AtomId>(it - members.begin());
        auto e = std::find(extra.begin(), extra.end(), a);
        if (e == extra.end()) {
            extra.push_back(a);
            e = extra.end() - 1;
        }
        return static_cast<AtomId>(members.size() + static_cast<std::size_t>(e - extra.begin()));
    };

    std::vector<Rule> local;
    local.reserve(node.rules.size());
    Rule converted;
    for (auto ri : node.rules) {
        if (!convert_rule(kb.rules()[ri], in_s, is_true, opts.strict_convert, converted)) continue;
        Rule r{local_id(converted.head), {}, {}};
        for (AtomId a : converted.pos) r.pos.push_back(local_id(a));
        for (AtomId a : converted.neg) r.neg.push_back(local_id(a));
        local.push_back(std::move(r));
    }
    const RuleSet rs{members.size() + extra.size(), local};
    const auto ms = enumerate_stable(rs, p.engine[v], opts.policy, opts.brute_cap);

    std::vector<detail::LocalModel> out;
    out.reserve(ms.size());
    for (const auto& m : ms) {
        detail::LocalModel lm;
        for (AtomId i = 0; i < members.size(); ++i)
            if (m.is_true(i)) lm.push_back(members[i]);
        out.push_back(std::move(lm));
    }
    return out;
}

std::string node_key(const KnowledgeBase& kb, const Prepared& p, std::uint32_t v,
                     std::span<const Nogood> nogoods) {
    const auto& node = p.sg.nodes[v];
    std::string key = "a";
    for (auto a : node.members) key += ":" + std::to_string(a);
    std::vector<std::string> rules;
    for (auto ri : node.rules) {
        const auto& r = kb.rules()[ri];
        std::string e = std::to_string(r.head) + "|";
        for (auto a : r.pos) e += std::to_string(a) + ",";
        e += "|";
        for (auto a : r.neg) e += std::to_string(a) + ",";
        rules.push_back(std::move(e));
    }
    std::sort(rules.begin(), rules.end());
    key += ";r";
    for (const auto& e : rules) key += ";" + e;
    std::vector<std::string> ngs;
    for (auto i : p.nogoods_at[v]) {
        std::string e;
        for (auto a : nogoods[i].atoms) e += std::to_string(a) + ",";
        ngs.push_back(std::move(e));
    }
    std::sort(ngs.begin(), ngs.end());
    key += ";n";
    for (const auto& e : ngs) key += ";" + e;
    return key;
}

bool complies(const Nogood& ng, const detail::ModelView& view) {
    return std::any_of(ng.atoms.begin(), ng.atoms.end(), [&](AtomId a) { return !view.value(a); });
}

detail::TraversalHooks make_hooks(const KnowledgeBase& kb, const Prepared& p, std::span<const Nogood> nogoods,
                                  const AasOptions& opts, bool keyed) {
    detail::TraversalHooks hooks;
    if (keyed) hooks.key = [&kb, &p, nogoods](std::uint32_t v) { return node_key(kb, p, v, nogoods); };
    hooks.evaluate = [&kb, &p, &opts](std::uint32_t v, const detail::ModelView& view) {
        return local_models(kb, p, v, [&](AtomId a) { return view.value(a); }, opts);
    };
    hooks.accept = [&p, nogoods](std::uint32_t v, const detail::ModelView& view) {
        for (auto i : p.nogoods_at[v])
            if (!complies(nogoods[i], view)) return false;
        return true;
    };
    return hooks;
}

std::vector<NodeStats> node_stats(const Prepared& p, const detail::TraversalResult& tr, const detail::ModelStore& store) {
    std::vector<NodeStats> out(p.sg.size());
    for (std::uint32_t i = 0; i < p.sg.size(); ++i) {
        auto& st = out[i];
        st.atoms = p.sg.nodes[i].members;
        st.omega = p.omega.nodes[i];
        st.engine = p.engine[i];
        st.candidates = tr.nodes[i].candidates;
        st.evaluated = tr.nodes[i].evaluated;
        st.recomputed = tr.nodes[i].recomputed;
        if (tr.slot_of[i] != UINT32_MAX) st.models = store[tr.slot_of[i]].models.size();
    }
    return out;
}

std::vector<std::uint32_t> all_nodes(std::size_t n) {
    std::vector<std::uint32_t> v(n);
    for (std::uint32_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

// Final combination over the sinks, nogoods that no single node covers, and
// expansion to total interpretations.
ModelSet finish(const KnowledgeBase& kb, const Prepared& p, const detail::TraversalResult& tr,
                const detail::ModelStore& store, std::span<const Nogood> nogoods) {
    ModelSet out;
    out.domain = all_nodes(kb.atom_count());
    if (tr.empty) return out;
    const auto sinks = p.sg.sinks();
    const auto every = all_nodes(p.sg.size());
    for (const auto& choice : detail::product_of(sinks, store, tr.slot_of)) {
        const detail::ModelView view(store, p.tg, tr.slot_of, choice);
        bool ok = true;
        for (auto i : p.final_nogoods)
            if (!complies(nogoods[i], view)) {
                ok = false;
                break;
            }
        if (!ok) continue;
        out.models.push_back(PartialInterpretation::from_true_set(kb.atom_count(), detail::expand(view, every, p.tg)));
    }
    out.canonicalize();
    return out;
}

}  // namespace

KnowledgeBase convert(const KnowledgeBase& kb, std::span<const std::size_t> pi_s, const PartialInterpretation& m,
                      std::span<const AtomId> s, bool strict) {
    const auto in_s_mask = to_mask(kb.atom_count(), s);
    KnowledgeBase out(kb.atoms(), {});
    Rule converted;
    for (auto ri : pi_s) {
        if (convert_rule(
                kb.rules().at(ri), [&](AtomId a) { return in_s_mask[a]; }, [&](AtomId a) { return m.is_true(a); },
                strict, converted))
            out.add_rule(converted);
    }
    return out;
}

AasResult aas_solve(const KnowledgeBase& kb, std::span<const Nogood> nogoods, const AasOptions& opts) {
    const auto p = prepare(kb, nogoods, opts);
    detail::ModelStore store;
    const auto hooks = make_hooks(kb, p, nogoods, opts, false);
    const auto tr = detail::traverse(p.tg, store, hooks, opts.policy.parallel);
    AasResult r;
    r.omega = p.omega;
    r.nodes = node_stats(p, tr, store);
    r.stopped_early = tr.empty;
    r.models = finish(kb, p, tr, store, nogoods);
    return r;
}

std::optional<PartialInterpretation> solve_one(const KnowledgeBase& kb, const AasOptions& opts) {
    const auto p = prepare(kb, {}, opts);
    const auto n = static_cast<std::uint32_t>(p.sg.size());
    PartialInterpretation assignment(kb.atom_count(), Truth::False);
    if (n == 0) return assignment;

    struct Frame {
        std::vector<detail::LocalModel> options;
        std::size_t next = 0;
    };
    auto options_for = [&](std::uint32_t v) {
        return local_models(kb, p, v, [&](AtomId a) { return assignment.is_true(a); }, opts);
    };
    std::vector<Frame> frames;
    frames.push_back({options_for(0), 0});
    while (!frames.empty()) {
        auto& f = frames.back();
        const auto v = static_cast<std::uint32_t>(frames.size() - 1);
        if (f.next == f.options.size()) {
            frames.pop_back();
            continue;
        }
        for (auto a : p.sg.nodes[v].members) assignment.set(a, Truth::False);
        for (auto a : f.options[f.next]) assignment.set(a, Truth::True);
        ++f.next;
        if (v + 1 == n) return assignment;
        frames.push_back({options_for(v + 1), 0});
    }
    return std::nullopt;
}

QueryResult query_atom(const KnowledgeBase& kb, AtomId atom, QueryMode mode, const AasOptions& opts) {
    if (atom >= kb.atom_count()) throw std::out_of_range("query_atom: unknown atom");
    const auto p = prepare(kb, {}, opts);
    detail::ModelStore store;
    const auto hooks = make_hooks(kb, p, {}, opts, true);
    const auto target = p.sg.component_of[atom];
    const auto sub = p.sg.rooted_subgraph(target);

    QueryResult q;
    q.total_nodes = p.sg.size();
    const auto partial = detail::traverse(p.tg, store, hooks, opts.policy.parallel, sub);
    q.nodes_evaluated = sub.size();
    if (partial.empty) {
        // No stable model at all.
        q.answer = mode == QueryMode::Cautious;
        q.early_stop = true;
        return q;
    }
    const auto& local = store[partial.slot_of[target]].models;
    std::size_t holding = 0;
    for (const auto& m : local)
        if (std::binary_search(m.local.begin(), m.local.end(), atom)) ++holding;
    if (mode == QueryMode::Cautious && holding == local.size()) {
        q.answer = true;
        q.early_stop = true;
        return q;
    }
    if (mode == QueryMode::Brave && holding == 0) {
        q.answer = false;
        q.early_stop = true;
        return q;
    }

    const auto full = detail::traverse(p.tg, store, hooks, opts.policy.parallel);
    q.nodes_evaluated = p.sg.size();
    const auto models = finish(kb, p, full, store, {});
    if (mode == QueryMode::Cautious)
        q.answer = std::all_of(models.begin(), models.end(), [&](const auto& m) { return m.is_true(atom); });
    else
        q.answer = std::any_of(models.begin(), models.end(), [&](const auto& m) { return m.is_true(atom); });
    return q;
}

struct IncrementalSolver::Cache {
    detail::ModelStore store;
};

IncrementalSolver::IncrementalSolver(KnowledgeBase kb, std::vector<Nogood> nogoods, AasOptions opts)
    : kb_(std::move(kb)), nogoods_(std::move(nogoods)), opts_(opts), cache_(std::make_unique<Cache>()) {
    solve();
}

IncrementalSolver::~IncrementalSolver() = default;
IncrementalSolver::IncrementalSolver(IncrementalSolver&&) noexcept = default;
IncrementalSolver& IncrementalSolver::operator=(IncrementalSolver&&) noexcept = default;

void IncrementalSolver::solve() {
    const auto p = prepare(kb_, nogoods_, opts_);
    const auto hooks = make_hooks(kb_, p, nogoods_, opts_, true);
    const auto tr = detail::traverse(p.tg, cache_->store, hooks, opts_.policy.parallel);
    result_ = AasResult{};
    result_.omega = p.omega;
    result_.nodes = node_stats(p, tr, cache_->store);
    result_.stopped_early = tr.empty;
    result_.models = finish(kb_, p, tr, cache_->store, nogoods_);
    std::vector<std::uint32_t> used;
    for (auto s : tr.slot_of)
        if (s != UINT32_MAX) used.push_back(s);
    cache_->store.retain(used);
}

const AasResult& IncrementalSolver::update_and_resolve(const KnowledgeBase& added) {
    for (const auto& r : added.rules()) {
        Rule copy{kb_.intern(added.atoms().name(r.head)), {}, {}};
        for (AtomId a : r.pos) copy.pos.push_back(kb_.intern(added.atoms().name(a)));
        for (AtomId a : r.neg) copy.neg.push_back(kb_.intern(added.atoms().name(a)));
        kb_.add_rule(std::move(copy));
    }
    solve();
    return result_;
}

const AasResult& IncrementalSolver::update_and_resolve(std::span<const Rule> added_rules) {
    for (const auto& r : added_rules) kb_.add_rule(r);
    solve();
    return result_;
}

std::vector<std::string> recomputed_nodes(const AasResult& r, const AtomTable& atoms) {
    std::vector<std::string> out;
    for (const auto& n : r.nodes) {
        if (!n.recomputed) continue;
        std::string label;
        for (std::size_t i = 0; i < n.atoms.size(); ++i) {
            if (i) label += ',';
            label += atoms.name(n.atoms[i]);
        }
        out.push_back(std::move(label));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace strata
