#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace strata::detail {

/// Enumerates the consistent portion of a Cartesian product. `merge(acc, x)`
/// returns the combination of a partial product with one member, or nullopt
/// on conflict; `sink(value)` receives each full combination. Dead prefixes
/// are pruned, so cost tracks surviving partial products.
template <class T, class Sets, class Merge, class Sink>
void for_each_consistent(const Sets& sets, const T& identity, Merge&& merge, Sink&& sink) {
    const std::size_t depth = sets.size();
    if (depth == 0) {
        sink(identity);
        return;
    }
    for (const auto& s : sets)
        if (s.empty()) return;

    std::vector<T> prefix;
    prefix.reserve(depth + 1);
    prefix.push_back(identity);
    std::vector<std::size_t> cursor(depth, 0);
    std::size_t level = 0;
    while (true) {
        if (cursor[level] == sets[level].size()) {
            if (level == 0) return;
            cursor[level] = 0;
            prefix.pop_back();
            --level;
            ++cursor[level];
            continue;
        }
        std::optional<T> next = merge(prefix.back(), sets[level][cursor[level]]);
        if (!next) {
            ++cursor[level];
            continue;
        }
        if (level + 1 == depth) {
            sink(std::move(*next));
            ++cursor[level];
            continue;
        }
        prefix.push_back(std::move(*next));
        ++level;
    }
}

}  // namespace strata::detail
