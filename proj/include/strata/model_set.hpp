#pragma once

#include <span>
#include <string>
#include <vector>

#include "strata/kb.hpp"

namespace strata {

/// A finite, duplicate-free, sorted collection of interpretations that are
/// total over `domain`.
struct ModelSet {
    std::vector<AtomId> domain;
    std::vector<PartialInterpretation> models;

    std::size_t size() const { return models.size(); }
    bool empty() const { return models.empty(); }
    auto begin() const { return models.begin(); }
    auto end() const { return models.end(); }

    /// Sorts (lexicographic on the truth vector, false < true) and removes
    /// duplicates.
    void canonicalize();

    /// The {empty model} identity for cartes_prod.
    static ModelSet unit() { return ModelSet{{}, {PartialInterpretation{}}}; }
    /// Models over all atoms 0..n-1 given by their true sets.
    static ModelSet from_true_sets(std::size_t n, const std::vector<std::vector<AtomId>>& trues);

    friend bool operator==(const ModelSet&, const ModelSet&) = default;
};

/// Sorted true-atom sets of every model; the order-independent view used to
/// compare results from different engines.
std::vector<std::vector<AtomId>> true_sets(const ModelSet& ms);
std::vector<std::vector<std::string>> true_names(const ModelSet& ms, const AtomTable& atoms);

/// Consistent part of the Cartesian product. An empty list yields unit(); an
/// empty member yields the empty set.
ModelSet cartes_prod(std::span<const ModelSet> sets);

}  // namespace strata
