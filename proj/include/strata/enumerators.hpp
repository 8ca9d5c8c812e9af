#pragma once

// Structure-blind stable-model enumerators: guess over negated atoms
// (all_stable1) or over non-Horn rules with unit propagation (all_stable2).

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "strata/kb.hpp"
#include "strata/model_set.hpp"
#include "strata/semantics.hpp"

namespace strata {

/// Mutable propagation copy of a rule set. Literal erasure is recorded per
/// atom (a positive literal is gone once its atom is instantiated true, a
/// negative one once it is instantiated false) with per-rule live counters,
/// so a copy costs O(rules + atoms) and every operation is linear overall.
class WorkingProgram {
public:
    explicit WorkingProgram(RuleSet rs);

    bool alive(std::size_t rule) const { return alive_[rule] != 0; }
    bool is_unit(std::size_t rule) const { return alive_[rule] && pos_left_[rule] == 0 && neg_left_[rule] == 0; }
    std::size_t atom_count() const { return rs_.atom_count; }

    /// Rules still present, with erased literals removed, in source order.
    std::vector<Rule> remaining() const;

private:
    friend bool unit_inst(WorkingProgram&, PartialInterpretation&);
    friend bool neg_unit_inst(WorkingProgram&, std::span<const AtomId>, PartialInterpretation&);

    void kill(std::size_t rule) { alive_[rule] = 0; }
    void note_unit(std::size_t rule) {
        if (is_unit(rule)) units_.push_back(static_cast<std::uint32_t>(rule));
    }

    RuleSet rs_;
    // Occurrence lists are immutable and shared between copies.
    struct Occurrences {
        std::vector<std::uint32_t> pos_start, pos, neg_start, neg, head_start, head;
    };
    std::shared_ptr<const Occurrences> occ_;
    std::vector<std::uint8_t> alive_;
    std::vector<std::uint32_t> pos_left_;
    std::vector<std::uint32_t> neg_left_;
    std::vector<std::uint8_t> done_true_;   // positive occurrences erased
    std::vector<std::uint8_t> done_false_;  // negative occurrences erased
    std::vector<std::uint32_t> units_;
};

/// Exhausts unit rules: each P <- sets P true (false return if P is already
/// false), erases P from positive bodies and removes rules about P and rules
/// with `not P`.
bool unit_inst(WorkingProgram& kb, PartialInterpretation& m);

/// Instantiates every atom of `neg` to false (false return if one is true),
/// removes rules where it occurs positively, erases its negative literals,
/// then runs unit_inst.
bool neg_unit_inst(WorkingProgram& kb, std::span<const AtomId> neg, PartialInterpretation& m);

/// Limit on the guess width (2^k or 2^c branches) accepted by the flat
/// enumerators.
inline constexpr std::uint32_t kMaxGuessBits = 40;

ModelSet all_stable1(RuleSet rs, ExecPolicy policy = {});
ModelSet all_stable2(RuleSet rs, ExecPolicy policy = {});
inline ModelSet all_stable1(const KnowledgeBase& kb, ExecPolicy p = {}) { return all_stable1(kb.view(), p); }
inline ModelSet all_stable2(const KnowledgeBase& kb, ExecPolicy p = {}) { return all_stable2(kb.view(), p); }

/// Atoms occurring negated (H) and the non-Horn rules (Delta).
std::vector<AtomId> negated_atoms(RuleSet rs);
std::vector<std::size_t> non_horn_rules(RuleSet rs);

enum class Engine { Auto, AllStable1, AllStable2, Brute };

std::string_view engine_name(Engine e);
Engine parse_engine(std::string_view name);

/// Auto resolves to the cheaper guess width, ties to AllStable2.
Engine choose_engine(std::uint32_t k, std::uint32_t c);

ModelSet enumerate_stable(RuleSet rs, Engine engine, ExecPolicy policy = {},
                          std::size_t brute_cap = kDefaultBruteForceCap);

}  // namespace strata
