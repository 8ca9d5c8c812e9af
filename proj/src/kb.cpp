#include "strata/kb.hpp"

#include <algorithm>
#include <numeric>

namespace strata {

AtomId AtomTable::intern(std::string_view name) {
    auto it = ids_.find(std::string(name));
    if (it != ids_.end()) return it->second;
    const auto id = static_cast<AtomId>(names_.size());
    names_.emplace_back(name);
    ids_.emplace(names_.back(), id);
    return id;
}

std::optional<AtomId> AtomTable::find(std::string_view name) const {
    auto it = ids_.find(std::string(name));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

KnowledgeBase::KnowledgeBase(AtomTable atoms, std::vector<Rule> rules) : atoms_(std::move(atoms)) {
    rules_.reserve(rules.size());
    for (auto& r : rules) add_rule(std::move(r));
}

void KnowledgeBase::add_rule(Rule r) {
    const auto n = atoms_.size();
    auto in_range = [n](AtomId a) { return a < n; };
    if (!in_range(r.head) || !std::all_of(r.pos.begin(), r.pos.end(), in_range) ||
        !std::all_of(r.neg.begin(), r.neg.end(), in_range)) {
        throw std::out_of_range("rule references an atom outside the atom table");
    }
    normalize_literals(r.pos);
    normalize_literals(r.neg);
    rules_.push_back(std::move(r));
}

std::size_t KnowledgeBase::length() const {
    return std::accumulate(rules_.begin(), rules_.end(), std::size_t{0},
                           [](std::size_t acc, const Rule& r) { return acc + r.length(); });
}

void PartialInterpretation::set(AtomId a, Truth t) {
    if (a >= values_.size()) values_.resize(a + 1, Truth::Unknown);
    values_[a] = t;
}

bool PartialInterpretation::is_total_over(std::span<const AtomId> atoms) const {
    return std::none_of(atoms.begin(), atoms.end(), [&](AtomId a) { return (*this)[a] == Truth::Unknown; });
}

bool PartialInterpretation::is_total() const {
    return std::find(values_.begin(), values_.end(), Truth::Unknown) == values_.end();
}

std::vector<AtomId> PartialInterpretation::true_atoms() const {
    std::vector<AtomId> out;
    for (AtomId a = 0; a < values_.size(); ++a)
        if (values_[a] == Truth::True) out.push_back(a);
    return out;
}

std::vector<AtomId> PartialInterpretation::domain() const {
    std::vector<AtomId> out;
    for (AtomId a = 0; a < values_.size(); ++a)
        if (values_[a] != Truth::Unknown) out.push_back(a);
    return out;
}

PartialInterpretation PartialInterpretation::from_true_set(std::size_t n, std::span<const AtomId> trues) {
    PartialInterpretation m(n, Truth::False);
    for (AtomId a : trues) m.set(a, Truth::True);
    return m;
}

std::variant<PartialInterpretation, Conflict> combine(const PartialInterpretation& i,
                                                      const PartialInterpretation& j) {
    const std::size_t n = std::max(i.size(), j.size());
    PartialInterpretation out(n);
    for (AtomId a = 0; a < n; ++a) {
        const Truth x = i[a], y = j[a];
        if (x == Truth::Unknown) {
            out.set(a, y);
        } else if (y == Truth::Unknown || x == y) {
            out.set(a, x);
        } else {
            return Conflict{a};
        }
    }
    return out;
}

bool consistent(const PartialInterpretation& i, const PartialInterpretation& j) {
    const std::size_t n = std::min(i.size(), j.size());
    for (AtomId a = 0; a < n; ++a) {
        const Truth x = i[a], y = j[a];
        if (x != Truth::Unknown && y != Truth::Unknown && x != y) return false;
    }
    return true;
}

namespace {
template <class Member>
bool body_holds(const Member& in, const Rule& r) {
    return std::all_of(r.pos.begin(), r.pos.end(), [&](AtomId a) { return in(a); }) &&
           std::none_of(r.neg.begin(), r.neg.end(), [&](AtomId a) { return in(a); });
}
}  // namespace

bool satisfies_body(const std::vector<bool>& s, const Rule& r) {
    return body_holds([&](AtomId a) { return a < s.size() && s[a]; }, r);
}

bool satisfies_rule(const std::vector<bool>& s, const Rule& r) {
    return !satisfies_body(s, r) || (r.head < s.size() && s[r.head]);
}

bool satisfies_body(const PartialInterpretation& s, const Rule& r) {
    return body_holds([&](AtomId a) { return s.is_true(a); }, r);
}

bool satisfies_rule(const PartialInterpretation& s, const Rule& r) {
    return !satisfies_body(s, r) || s.is_true(r.head);
}

std::vector<bool> to_mask(std::size_t n, std::span<const AtomId> atoms) {
    std::vector<bool> mask(n, false);
    for (AtomId a : atoms) {
        if (a >= mask.size()) mask.resize(a + 1, false);
        mask[a] = true;
    }
    return mask;
}

bool normalize_literals(std::vector<AtomId>& lits) {
    std::sort(lits.begin(), lits.end());
    auto last = std::unique(lits.begin(), lits.end());
    const bool dup = last != lits.end();
    lits.erase(last, lits.end());
    return dup;
}

std::string render_rule(const AtomTable& atoms, const Rule& r) {
    std::string out = atoms.name(r.head);
    if (!r.is_unit()) {
        out += " :- ";
        bool first = true;
        for (AtomId a : r.pos) {
            if (!first) out += ", ";
            out += atoms.name(a);
            first = false;
        }
        for (AtomId a : r.neg) {
            if (!first) out += ", ";
            out += "not ";
            out += atoms.name(a);
            first = false;
        }
    }
    out += '.';
    return out;
}

std::string render(const KnowledgeBase& kb) {
    std::string out;
    for (const auto& r : kb.rules()) {
        out += render_rule(kb.atoms(), r);
        out += '\n';
    }
    return out;
}

}  // namespace strata
