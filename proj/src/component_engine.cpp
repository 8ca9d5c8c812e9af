#include "strata/detail/component_engine.hpp"

#include <algorithm>
#include <stdexcept>

#include "strata/detail/parallel.hpp"
#include "strata/detail/product.hpp"

namespace strata::detail {

std::uint32_t ModelStore::allocate(std::string key) {
    const auto id = static_cast<std::uint32_t>(slots_.size());
    if (!key.empty()) by_key_[key] = id;
    slots_.push_back(Slot{{}, std::move(key), true});
    return id;
}

std::optional<std::uint32_t> ModelStore::find(const std::string& key) const {
    if (key.empty()) return std::nullopt;
    auto it = by_key_.find(key);
    if (it == by_key_.end()) return std::nullopt;
    return it->second;
}

void ModelStore::retain(std::span<const std::uint32_t> keep) {
    std::vector<bool> kept(slots_.size(), false);
    for (auto s : keep) kept[s] = true;
    for (std::uint32_t s = 0; s < slots_.size(); ++s) {
        if (kept[s] || !slots_[s].live) continue;
        slots_[s].live = false;
        slots_[s].models.clear();
        slots_[s].models.shrink_to_fit();
        if (!slots_[s].key.empty()) by_key_.erase(slots_[s].key);
    }
}

const LocalModel& ModelView::local_of(std::uint32_t node) const {
    if (node == own_node_ && own_) return *own_;
    const auto slot = slot_of_[node];
    const auto& models = store_[slot].models;
    if (models.size() == 1) return models.front().local;
    auto it = std::lower_bound(choices_.begin(), choices_.end(), slot,
                               [](const Choice& c, std::uint32_t s) { return c.slot < s; });
    if (it == choices_.end() || it->slot != slot)
        throw std::logic_error("model view: node outside the rooted subgraph");
    return models[it->index].local;
}

bool ModelView::value(std::uint32_t member) const {
    const auto& local = local_of(g_.node_of[member]);
    return std::binary_search(local.begin(), local.end(), member);
}

namespace {

std::optional<ChoiceList> merge_choices(const ChoiceList& a, const ChoiceList& b) {
    ChoiceList out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].slot < b[j].slot) {
            out.push_back(a[i++]);
        } else if (b[j].slot < a[i].slot) {
            out.push_back(b[j++]);
        } else {
            if (a[i].index != b[j].index) return std::nullopt;
            out.push_back(a[i]);
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
    out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
    return out;
}

// Choice lists of each model of a slot, extended with the slot's own entry
// when the choice matters.
std::vector<ChoiceList> extended_choices(const ModelStore& store, std::uint32_t slot) {
    const auto& models = store[slot].models;
    std::vector<ChoiceList> out;
    out.reserve(models.size());
    for (std::uint32_t i = 0; i < models.size(); ++i) {
        ChoiceList c = models[i].choices;
        if (models.size() > 1) {
            const Choice own{slot, i};
            c.insert(std::lower_bound(c.begin(), c.end(), own,
                                      [](const Choice& x, const Choice& y) { return x.slot < y.slot; }),
                     own);
        }
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace

std::vector<ChoiceList> product_of(std::span<const std::uint32_t> nodes, const ModelStore& store,
                                   const std::vector<std::uint32_t>& slot_of) {
    std::vector<std::vector<ChoiceList>> sets;
    sets.reserve(nodes.size());
    for (auto n : nodes) sets.push_back(extended_choices(store, slot_of[n]));
    std::vector<ChoiceList> out;
    for_each_consistent(sets, ChoiceList{}, merge_choices, [&](ChoiceList c) { out.push_back(std::move(c)); });
    return out;
}

std::vector<std::uint32_t> expand(const ModelView& view, std::span<const std::uint32_t> nodes,
                                  const TraversalGraph& g) {
    (void)g;
    std::vector<std::uint32_t> out;
    for (auto n : nodes) {
        const auto& local = view.local_of(n);
        out.insert(out.end(), local.begin(), local.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

TraversalResult traverse(const TraversalGraph& g, ModelStore& store, const TraversalHooks& hooks, bool parallel,
                         std::span<const std::uint32_t> nodes) {
    const auto n = static_cast<std::uint32_t>(g.children.size());
    TraversalResult res;
    res.slot_of.assign(n, UINT32_MAX);
    res.nodes.resize(n);

    std::vector<std::uint32_t> order;
    if (nodes.empty()) {
        order.resize(n);
        for (std::uint32_t i = 0; i < n; ++i) order[i] = i;
    } else {
        order.assign(nodes.begin(), nodes.end());
    }

    // Group by depth so nodes evaluated together never depend on each other.
    std::vector<std::uint32_t> depth(n, 0);
    std::uint32_t max_depth = 0;
    for (auto v : order) {
        for (auto c : g.children[v]) depth[v] = std::max(depth[v], depth[c] + 1);
        max_depth = std::max(max_depth, depth[v]);
    }
    std::vector<std::vector<std::uint32_t>> levels(order.empty() ? 0 : max_depth + 1);
    for (auto v : order) levels[depth[v]].push_back(v);

    auto compute = [&](std::uint32_t v) {
        const auto slot = res.slot_of[v];
        auto candidates = product_of(g.children[v], store, res.slot_of);
        res.nodes[v].candidates = candidates.size();
        std::vector<StoredModel> models;
        for (auto& cand : candidates) {
            const ModelView view(store, g, res.slot_of, cand);
            for (auto& local : hooks.evaluate(v, view)) {
                if (hooks.accept) {
                    const ModelView full(store, g, res.slot_of, cand, v, &local);
                    if (!hooks.accept(v, full)) continue;
                }
                models.push_back(StoredModel{std::move(local), cand});
            }
        }
        store[slot].models = std::move(models);
    };

    for (const auto& level : levels) {
        std::vector<std::uint32_t> pending;
        for (auto v : level) {
            std::string key;
            if (hooks.key) {
                key = hooks.key(v);
                if (!key.empty()) {
                    key += "#";
                    for (auto c : g.children[v]) key += std::to_string(res.slot_of[c]) + ",";
                }
            }
            res.nodes[v].evaluated = true;
            if (auto hit = store.find(key)) {
                res.slot_of[v] = *hit;
                continue;
            }
            res.slot_of[v] = store.allocate(std::move(key));
            res.nodes[v].recomputed = true;
            pending.push_back(v);
        }
        for_each_index(pending.size(), parallel, [&](std::size_t i) { compute(pending[i]); });
        for (auto v : level) {
            if (store[res.slot_of[v]].models.empty()) {
                res.empty = true;
                return res;
            }
        }
    }
    return res;
}

}  // namespace strata::detail
