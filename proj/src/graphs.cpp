#include "strata/graphs.hpp"

#include <algorithm>

namespace strata {
namespace {

struct Adjacency {
    std::vector<std::uint32_t> start;
    std::vector<std::uint32_t> targets;
};

Adjacency forward_adjacency(const DependencyGraph& g) {
    Adjacency adj;
    adj.start.assign(g.node_count + 1, 0);
    for (const auto& e : g.edges) ++adj.start[e.from + 1];
    for (std::size_t i = 0; i < g.node_count; ++i) adj.start[i + 1] += adj.start[i];
    adj.targets.resize(g.edges.size());
    auto fill = adj.start;
    for (const auto& e : g.edges) adj.targets[fill[e.from]++] = e.to;
    return adj;
}

// Iterative Tarjan. Returns components in completion order (a component
// completes after everything reachable from it).
std::vector<std::vector<std::uint32_t>> tarjan(std::size_t n, const Adjacency& adj) {
    constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::uint32_t> stack;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> call;  // (node, next edge)
    std::vector<std::vector<std::uint32_t>> out;
    std::uint32_t counter = 0;

    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] != kUnvisited) continue;
        call.emplace_back(root, adj.start[root]);
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& [v, next] = call.back();
            if (next < adj.start[v + 1]) {
                const std::uint32_t w = adj.targets[next++];
                if (index[w] == kUnvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.emplace_back(w, adj.start[w]);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const std::uint32_t done = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
            if (low[done] == index[done]) {
                std::vector<std::uint32_t> comp;
                std::uint32_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(w);
                } while (w != done);
                std::sort(comp.begin(), comp.end());
                out.push_back(std::move(comp));
            }
        }
    }
    return out;
}

void sort_unique(std::vector<std::uint32_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

DependencyGraph build_dependency_graph(const KnowledgeBase& kb) {
    DependencyGraph g;
    g.node_count = kb.atom_count();
    g.names = kb.atoms().names();
    for (const auto& r : kb.rules()) {
        for (AtomId a : r.pos) g.edges.push_back({a, r.head, Sign::Positive});
        for (AtomId a : r.neg) g.edges.push_back({a, r.head, Sign::Negative});
    }
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    return g;
}

SuperGraph scc_condense(const DependencyGraph& g) {
    const auto adj = forward_adjacency(g);
    auto comps = tarjan(g.node_count, adj);
    std::reverse(comps.begin(), comps.end());  // sources first

    SuperGraph sg;
    sg.component_of.assign(g.node_count, 0);
    sg.nodes.resize(comps.size());
    for (std::uint32_t c = 0; c < comps.size(); ++c) {
        for (auto m : comps[c]) sg.component_of[m] = c;
        sg.nodes[c].members = std::move(comps[c]);
    }
    for (const auto& e : g.edges) {
        const auto cf = sg.component_of[e.from], ct = sg.component_of[e.to];
        if (cf == ct) {
            if (e.sign == Sign::Negative) sg.nodes[ct].has_negative_self_edge = true;
            continue;
        }
        sg.nodes[ct].children.push_back(cf);
        sg.nodes[cf].parents.push_back(ct);
    }
    for (auto& node : sg.nodes) {
        sort_unique(node.children);
        sort_unique(node.parents);
    }
    return sg;
}

SuperGraph build_super_graph(const KnowledgeBase& kb) {
    auto sg = scc_condense(build_dependency_graph(kb));
    for (std::size_t i = 0; i < kb.rules().size(); ++i) sg.nodes[sg.component_of[kb.rules()[i].head]].rules.push_back(i);
    return sg;
}

std::vector<std::uint32_t> SuperGraph::sinks() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].parents.empty()) out.push_back(i);
    return out;
}

std::vector<std::uint32_t> SuperGraph::sources() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].children.empty()) out.push_back(i);
    return out;
}

std::vector<std::uint32_t> SuperGraph::rooted_subgraph(std::uint32_t node) const {
    std::vector<bool> seen(nodes.size(), false);
    std::vector<std::uint32_t> todo{node}, out;
    seen[node] = true;
    while (!todo.empty()) {
        const auto v = todo.back();
        todo.pop_back();
        out.push_back(v);
        for (auto c : nodes[v].children)
            if (!seen[c]) {
                seen[c] = true;
                todo.push_back(c);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::uint32_t> SuperGraph::reachable_from(std::uint32_t node) const {
    std::vector<bool> seen(nodes.size(), false);
    std::vector<std::uint32_t> todo{node}, out;
    seen[node] = true;
    while (!todo.empty()) {
        const auto v = todo.back();
        todo.pop_back();
        out.push_back(v);
        for (auto p : nodes[v].parents)
            if (!seen[p]) {
                seen[p] = true;
                todo.push_back(p);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::uint32_t> SuperGraph::rooted_members(std::uint32_t node) const {
    std::vector<std::uint32_t> out;
    for (auto v : rooted_subgraph(node)) out.insert(out.end(), nodes[v].members.begin(), nodes[v].members.end());
    std::sort(out.begin(), out.end());
    return out;
}

bool SuperGraph::is_topologically_ordered() const {
    for (std::uint32_t i = 0; i < nodes.size(); ++i)
        for (auto c : nodes[i].children)
            if (c >= i) return false;
    return true;
}

bool is_stratified(const KnowledgeBase& kb) {
    const auto sg = build_super_graph(kb);
    return std::none_of(sg.nodes.begin(), sg.nodes.end(),
                        [](const ComponentNode& n) { return n.has_negative_self_edge; });
}

KnowledgeBase restrict_hat(const KnowledgeBase& kb, const std::vector<AtomId>& s) {
    const auto in_s = to_mask(kb.atom_count(), s);
    KnowledgeBase out(kb.atoms(), {});
    for (const auto& r : kb.rules()) {
        Rule copy{r.head, r.pos, {}};
        for (AtomId a : r.neg)
            if (in_s[a]) copy.neg.push_back(a);
        out.add_rule(std::move(copy));
    }
    return out;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b, std::uint64_t cap, bool& saturated) {
    if (a == 0 || b == 0) return 0;
    if (a >= cap || b >= cap || a > cap / b) {
        saturated = true;
        return cap;
    }
    const auto p = a * b;
    if (p >= cap) {
        saturated = true;
        return cap;
    }
    return p;
}

OmegaIndex omega_index(const KnowledgeBase& kb, const SuperGraph& g, std::uint64_t cap) {
    OmegaIndex out;
    out.nodes.resize(g.size());
    // Stamp per atom so distinct-atom counts stay linear overall.
    std::vector<std::uint32_t> stamp(kb.atom_count(), std::numeric_limits<std::uint32_t>::max());
    for (std::uint32_t i = 0; i < g.size(); ++i) {
        const auto& node = g.nodes[i];
        auto& om = out.nodes[i];
        for (auto ri : node.rules) {
            bool counted = false;
            for (AtomId a : kb.rules()[ri].neg) {
                if (g.component_of[a] != i) continue;
                if (!counted) {
                    ++om.c;
                    counted = true;
                }
                if (stamp[a] != i) {
                    stamp[a] = i;
                    ++om.k;
                }
            }
        }
        bool sat = false;
        if (om.c > 0) {
            const auto e = std::min(om.k, om.c);
            if (e >= 63 || (std::uint64_t{1} << e) >= cap) {
                om.v = cap;
                sat = true;
            } else {
                om.v = std::uint64_t{1} << e;
            }
        }
        om.t = om.v;
        for (auto c : node.children) om.t = saturating_mul(om.t, out.nodes[c].t, cap, sat);
        om.saturated = sat || std::any_of(node.children.begin(), node.children.end(),
                                          [&](std::uint32_t c) { return out.nodes[c].saturated; });
    }
    out.t_pi = 1;
    for (auto s : g.sinks()) {
        out.t_pi = saturating_mul(out.t_pi, out.nodes[s].t, cap, out.saturated);
        out.saturated = out.saturated || out.nodes[s].saturated;
    }
    return out;
}

OmegaIndex omega_index(const KnowledgeBase& kb, std::uint64_t cap) {
    return omega_index(kb, build_super_graph(kb), cap);
}

std::string component_label(const ComponentNode& node, const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < node.members.size(); ++i) {
        if (i) out += ',';
        out += node.members[i] < names.size() ? names[node.members[i]] : std::to_string(node.members[i]);
    }
    return out;
}

namespace {
std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + '"';
}
}  // namespace

std::string to_dot(const DependencyGraph& g) {
    std::string out = "digraph dependency {\n";
    for (std::size_t i = 0; i < g.node_count; ++i)
        out += "  n" + std::to_string(i) + " [label=" + quoted(i < g.names.size() ? g.names[i] : std::to_string(i)) +
               "];\n";
    for (const auto& e : g.edges) {
        out += "  n" + std::to_string(e.from) + " -> n" + std::to_string(e.to);
        if (e.sign == Sign::Negative) out += " [style=dashed,label=\"not\"]";
        out += ";\n";
    }
    return out + "}\n";
}

std::string to_dot(const SuperGraph& sg, const std::vector<std::string>& member_names) {
    std::string out = "digraph super {\n";
    for (std::size_t i = 0; i < sg.size(); ++i) {
        out += "  s" + std::to_string(i) + " [label=" + quoted(component_label(sg.nodes[i], member_names));
        if (sg.nodes[i].members.size() > 1) out += ",shape=box";
        out += "];\n";
    }
    for (std::size_t i = 0; i < sg.size(); ++i)
        for (auto c : sg.nodes[i].children) out += "  s" + std::to_string(c) + " -> s" + std::to_string(i) + ";\n";
    return out + "}\n";
}

}  // namespace strata
