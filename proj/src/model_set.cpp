#include "strata/model_set.hpp"

#include <algorithm>

#include "strata/detail/product.hpp"

namespace strata {

void ModelSet::canonicalize() {
    std::sort(models.begin(), models.end());
    models.erase(std::unique(models.begin(), models.end()), models.end());
    std::sort(domain.begin(), domain.end());
    domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
}

ModelSet ModelSet::from_true_sets(std::size_t n, const std::vector<std::vector<AtomId>>& trues) {
    ModelSet out;
    out.domain.resize(n);
    for (AtomId a = 0; a < n; ++a) out.domain[a] = a;
    for (const auto& t : trues) out.models.push_back(PartialInterpretation::from_true_set(n, t));
    out.canonicalize();
    return out;
}

std::vector<std::vector<AtomId>> true_sets(const ModelSet& ms) {
    std::vector<std::vector<AtomId>> out;
    out.reserve(ms.size());
    for (const auto& m : ms) out.push_back(m.true_atoms());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<std::string>> true_names(const ModelSet& ms, const AtomTable& atoms) {
    std::vector<std::vector<std::string>> out;
    for (const auto& m : ms) {
        std::vector<std::string> names;
        for (AtomId a : m.true_atoms()) names.push_back(atoms.name(a));
        std::sort(names.begin(), names.end());
        out.push_back(std::move(names));
    }
    std::sort(out.begin(), out.end());
    return out;
}

ModelSet cartes_prod(std::span<const ModelSet> sets) {
    if (sets.empty()) return ModelSet::unit();
    ModelSet out;
    for (const auto& s : sets) out.domain.insert(out.domain.end(), s.domain.begin(), s.domain.end());
    std::vector<std::vector<PartialInterpretation>> members;
    members.reserve(sets.size());
    for (const auto& s : sets) members.push_back(s.models);
    detail::for_each_consistent(
        members, PartialInterpretation{},
        [](const PartialInterpretation& acc, const PartialInterpretation& m) -> std::optional<PartialInterpretation> {
            auto r = combine(acc, m);
            if (auto* p = std::get_if<PartialInterpretation>(&r)) return std::move(*p);
            return std::nullopt;
        },
        [&](PartialInterpretation m) { out.models.push_back(std::move(m)); });
    out.canonicalize();
    return out;
}

}  // namespace strata
