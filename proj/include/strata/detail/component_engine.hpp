#pragma once

// Bottom-up traversal of a condensation DAG that keeps one model set per
// component. Shared by the propositional solver and the first-order solver.
//
// A model stored at node s is implicitly total over A_s. It holds the true
// members of s itself plus, for every descendant slot whose model set has
// more than one element, the index of the model it extends. Descendants with
// a single model need no record, so stratified programs store O(1) per node.
// Two stored models are consistent iff their choice lists agree on every
// shared slot.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace strata::detail {

using LocalModel = std::vector<std::uint32_t>;  // sorted true members of one node

struct Choice {
    std::uint32_t slot = 0;
    std::uint32_t index = 0;
    friend bool operator==(const Choice&, const Choice&) = default;
};
using ChoiceList = std::vector<Choice>;  // sorted by slot

struct StoredModel {
    LocalModel local;
    ChoiceList choices;
};

struct Slot {
    std::vector<StoredModel> models;
    std::string key;
    bool live = true;
};

/// Model sets addressed by slot id. Slot ids are never reused, so choice
/// lists stay valid while the slots they name are kept.
class ModelStore {
public:
    std::uint32_t allocate(std::string key);
    std::optional<std::uint32_t> find(const std::string& key) const;
    Slot& operator[](std::uint32_t s) { return slots_[s]; }
    const Slot& operator[](std::uint32_t s) const { return slots_[s]; }
    std::size_t slot_count() const { return slots_.size(); }
    /// Frees every slot not listed; their ids stay reserved.
    void retain(std::span<const std::uint32_t> keep);

private:
    std::vector<Slot> slots_;
    std::unordered_map<std::string, std::uint32_t> by_key_;
};

/// Graph shape seen by the traversal: children per node, node indices in
/// topological order (children first), and the owning node of every member.
struct TraversalGraph {
    std::vector<std::vector<std::uint32_t>> children;
    std::vector<std::vector<std::uint32_t>> members;  // sorted
    std::vector<std::uint32_t> node_of;               // member -> node
};

/// Read access to one (partial) model while evaluating or filtering.
class ModelView {
public:
    ModelView(const ModelStore& store, const TraversalGraph& g, const std::vector<std::uint32_t>& slot_of,
              std::span<const Choice> choices, std::uint32_t own_node = UINT32_MAX, const LocalModel* own = nullptr)
        : store_(store), g_(g), slot_of_(slot_of), choices_(choices), own_node_(own_node), own_(own) {}

    /// Local model of a node inside the view's rooted subgraph.
    const LocalModel& local_of(std::uint32_t node) const;
    bool value(std::uint32_t member) const;

private:
    const ModelStore& store_;
    const TraversalGraph& g_;
    const std::vector<std::uint32_t>& slot_of_;
    std::span<const Choice> choices_;
    std::uint32_t own_node_;
    const LocalModel* own_;
};

struct NodeOutcome {
    std::size_t candidates = 0;  // |M_c(s)|
    bool evaluated = false;      // visited in this run
    bool recomputed = false;     // evaluated from scratch, not taken from the store
};

struct TraversalHooks {
    /// Content key of a node, excluding children (the engine appends child
    /// slots). Empty disables reuse for that node.
    std::function<std::string(std::uint32_t node)> key;
    /// Local models of node given one combined children model.
    std::function<std::vector<LocalModel>(std::uint32_t node, const ModelView& children)> evaluate;
    /// Optional filter applied to every model of a node (nogoods).
    std::function<bool(std::uint32_t node, const ModelView& model)> accept;
};

struct TraversalResult {
    std::vector<std::uint32_t> slot_of;  // UINT32_MAX when not visited
    std::vector<NodeOutcome> nodes;
    bool empty = false;  // some visited node has no model
};

/// Evaluates `nodes` (ascending, closed under children) or every node when
/// `nodes` is empty.
TraversalResult traverse(const TraversalGraph& g, ModelStore& store, const TraversalHooks& hooks, bool parallel,
                         std::span<const std::uint32_t> nodes = {});

/// Consistent product of the given nodes' model sets as choice lists.
std::vector<ChoiceList> product_of(std::span<const std::uint32_t> nodes, const ModelStore& store,
                                   const std::vector<std::uint32_t>& slot_of);

/// Every true member under a complete choice list over `roots`' subgraphs.
std::vector<std::uint32_t> expand(const ModelView& view, std::span<const std::uint32_t> nodes,
                                  const TraversalGraph& g);

}  // namespace strata::detail
