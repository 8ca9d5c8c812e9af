#pragma once

// Dependency graphs, their SCC condensation, stratification and the
// Omega-hierarchy index.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "strata/kb.hpp"

namespace strata {

enum class Sign : std::uint8_t { Positive, Negative };

struct Edge {
    std::uint32_t from = 0;
    std::uint32_t to = 0;
    Sign sign = Sign::Positive;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Signed digraph over dense node ids (atoms, or predicates for first-order
/// programs). Edges are sorted and unique; a positive and a negative edge
/// between the same pair may coexist.
struct DependencyGraph {
    std::size_t node_count = 0;
    std::vector<std::string> names;
    std::vector<Edge> edges;
};

DependencyGraph build_dependency_graph(const KnowledgeBase& kb);

/// One strongly connected component.
struct ComponentNode {
    std::vector<std::uint32_t> members;   // s, sorted ids
    std::vector<std::size_t> rules;       // Pi_s as indices into the program's rules
    std::vector<std::uint32_t> children;  // nodes with an arc into this one
    std::vector<std::uint32_t> parents;
    bool has_negative_self_edge = false;  // some negative edge inside s
};

/// Condensation DAG. Node indices are a topological order: every child has
/// a smaller index than its parents, so index order is a bottom-up traversal.
struct SuperGraph {
    std::vector<ComponentNode> nodes;
    std::vector<std::uint32_t> component_of;  // member id -> node

    std::size_t size() const { return nodes.size(); }
    std::vector<std::uint32_t> sinks() const;
    std::vector<std::uint32_t> sources() const;
    /// Nodes with a path to `node`, including itself, ascending.
    std::vector<std::uint32_t> rooted_subgraph(std::uint32_t node) const;
    /// A_s: members of every node in the rooted subgraph, ascending.
    std::vector<std::uint32_t> rooted_members(std::uint32_t node) const;
    /// Nodes reachable from `node` (itself included), ascending.
    std::vector<std::uint32_t> reachable_from(std::uint32_t node) const;
    bool is_topologically_ordered() const;
};

/// Tarjan condensation; `rules` stays empty.
SuperGraph scc_condense(const DependencyGraph& g);
/// Condensation of the atom dependency graph with Pi_s attached to each node.
SuperGraph build_super_graph(const KnowledgeBase& kb);

bool is_stratified(const KnowledgeBase& kb);

/// Pi-hat_s: erases every negative literal whose atom is not in `s`.
KnowledgeBase restrict_hat(const KnowledgeBase& kb, const std::vector<AtomId>& s);

inline constexpr std::uint64_t kDefaultOmegaCap = std::uint64_t{1} << 62;

struct NodeOmega {
    std::uint32_t k = 0;  // atoms of s occurring negatively in Pi-hat_s
    std::uint32_t c = 0;  // rules of Pi_s with a negative literal over s
    std::uint64_t v = 1;
    std::uint64_t t = 1;
    bool saturated = false;  // t (or v) reached the cap
};

struct OmegaIndex {
    std::uint64_t t_pi = 1;
    bool saturated = false;
    std::vector<NodeOmega> nodes;  // parallel to SuperGraph::nodes
};

OmegaIndex omega_index(const KnowledgeBase& kb, const SuperGraph& g, std::uint64_t cap = kDefaultOmegaCap);
OmegaIndex omega_index(const KnowledgeBase& kb, std::uint64_t cap = kDefaultOmegaCap);

/// Saturating product; sets `saturated` when the cap is hit.
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b, std::uint64_t cap, bool& saturated);

/// Graphviz text. Negative edges are dashed and labelled "not".
std::string to_dot(const DependencyGraph& g);
std::string to_dot(const SuperGraph& sg, const std::vector<std::string>& member_names);

std::string component_label(const ComponentNode& node, const std::vector<std::string>& member_names);

}  // namespace strata
